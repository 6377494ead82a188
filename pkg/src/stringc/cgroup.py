"""Involution strings, the string and intersection properties, and reports."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence

from .group import BlockSystem, PermGroup
from .perm import Permutation, _is_involution, _mul, element_order, format_cycles, parse_cycles

NAIVE_MAX_RANK = 6


class StringPropertyError(ValueError):
    """Raised when an intersection check is asked of a non-string group."""


@dataclass(frozen=True)
class InvolutionString:
    gens: tuple[Permutation, ...]
    degree: int = field(default=0)

    def __post_init__(self):
        gens = tuple(g if isinstance(g, Permutation) else Permutation(g) for g in self.gens)
        if not gens:
            raise ValueError("an involution string needs at least one generator")
        degree = len(gens[0])
        if self.degree and self.degree != degree:
            raise ValueError(f"declared degree {self.degree} but generators have degree {degree}")
        for i, g in enumerate(gens):
            if len(g) != degree:
                raise ValueError(f"generator {i} has degree {len(g)}, expected {degree}")
            if not _is_involution(g):
                raise ValueError(f"generator {i} = {g} is not an involution")
        if len(set(gens)) != len(gens):
            raise ValueError("generators must be pairwise distinct")
        object.__setattr__(self, "gens", gens)
        object.__setattr__(self, "degree", degree)

    @classmethod
    def parse(cls, cycles: Sequence[str], degree: int) -> InvolutionString:
        return cls(tuple(parse_cycles(c, degree) for c in cycles))

    @property
    def rank(self) -> int:
        return len(self.gens)

    def __len__(self) -> int:
        return len(self.gens)

    def __getitem__(self, i: int) -> Permutation:
        return self.gens[i]

    def group(self) -> PermGroup:
        return PermGroup(self.gens, degree=self.degree)

    def conjugate(self, g: Sequence[int]) -> InvolutionString:
        return InvolutionString(tuple(x.conjugate(g) for x in self.gens))

    def cycle_strings(self) -> list[str]:
        return [format_cycles(g) for g in self.gens]

    def __str__(self) -> str:
        return "[" + ", ".join(self.cycle_strings()) + "]"


@dataclass(frozen=True)
class PropertyCheck:
    """Outcome of a yes/no check; ``witness`` explains a negative answer."""

    ok: bool
    witness: Any = None

    def __bool__(self) -> bool:
        return self.ok


def _commute(x: tuple, y: tuple) -> bool:
    return all(x[y[a]] == y[x[a]] for a in range(len(x)))


def check_string_property(s: InvolutionString) -> PropertyCheck:
    """Non-adjacent generators must commute; the witness is the first failing
    index pair ``(i, j)``."""
    for i in range(s.rank):
        for j in range(i + 2, s.rank):
            if not _commute(s.gens[i], s.gens[j]):
                return PropertyCheck(False, (i, j))
    return PropertyCheck(True)


def schlafli_type(s: InvolutionString) -> list[int]:
    return [element_order(_mul(s.gens[i], s.gens[i + 1])) for i in range(s.rank - 1)]


def parabolic(s: InvolutionString, indices) -> PermGroup:
    """The subgroup generated by the generators with the given indices."""
    return PermGroup([s.gens[i] for i in sorted(indices)], degree=s.degree)


@dataclass(frozen=True)
class IntersectionWitness:
    """``element`` lies in both parabolics I and J but not in the one for I & J."""

    I: tuple[int, ...]
    J: tuple[int, ...]
    element: Permutation

    def as_dict(self) -> dict:
        return {"I": list(self.I), "J": list(self.J), "element": str(self.element)}


def meet_is(a: PermGroup, b: PermGroup, c: PermGroup) -> tuple | None:
    """Given ``c <= a`` and ``c <= b``, decide whether ``a & b == c``.

    Walks the right cosets of ``c`` in whichever of ``a``, ``b`` has the
    smaller index and tests each representative for membership in the
    other.  Returns ``None`` on equality, else an element of
    ``(a & b) - c``.
    """
    oc = c.order()
    if a.order() == oc or b.order() == oc:
        return None
    if b.order() < a.order():
        a, b = b, a
    reps = c.right_cosets(a)
    for x in reps[1:]:
        if b._contains_raw(x):
            return x
    return None


def _sectional(s: InvolutionString) -> PropertyCheck:
    d = s.rank
    gens = [tuple(g) for g in s.gens]
    trivial = PermGroup([], degree=s.degree)
    # groups[a][b] = <rho_a .. rho_b>, built up by extension
    prev = {a: PermGroup([gens[a]], degree=s.degree) for a in range(d)}
    below = {a: trivial for a in range(d + 1)}  # <rho_{a}..rho_{a-1}> = 1
    for length in range(2, d + 1):
        cur = {}
        for a in range(d - length + 1):
            b = a + length - 1
            left = prev[a]           # rho_a .. rho_{b-1}
            right = prev[a + 1]      # rho_{a+1} .. rho_b
            mid = below[a + 1]       # rho_{a+1} .. rho_{b-1}
            x = meet_is(left, right, mid)
            if x is not None:
                return PropertyCheck(False, IntersectionWitness(
                    tuple(range(a, b)), tuple(range(a + 1, b + 1)), Permutation._trusted(x)))
            cur[a] = left.extended(gens[b])
        below = prev
        prev = cur
    return PropertyCheck(True)


def _naive(s: InvolutionString) -> PropertyCheck:
    """All pairs of index subsets, by sifting every element of the smaller
    parabolic through the larger one."""
    d = s.rank
    groups: dict[int, PermGroup] = {}
    elements: dict[int, list] = {}

    def grp(mask):
        if mask not in groups:
            groups[mask] = PermGroup([s.gens[i] for i in range(d) if mask >> i & 1], degree=s.degree)
        return groups[mask]

    def idx(mask):
        return tuple(i for i in range(d) if mask >> i & 1)

    full = 1 << d
    for I in range(full):
        for J in range(I + 1, full):
            K = I & J
            if K == I or K == J:
                continue
            gi, gj, gk = grp(I), grp(J), grp(K)
            small, big = (gi, gj) if gi.order() <= gj.order() else (gj, gi)
            if small.order() == gk.order():
                continue
            key = I if small is gi else J
            if key not in elements:
                elements[key] = list(small._elements_raw())
            for x in elements[key]:
                if big._contains_raw(x) and not gk._contains_raw(x):
                    return PropertyCheck(False, IntersectionWitness(idx(I), idx(J), Permutation._trusted(x)))
    return PropertyCheck(True)


def check_intersection_property(s: InvolutionString, method: str = "auto",
                                naive_max_rank: int = NAIVE_MAX_RANK) -> PropertyCheck:
    """Intersection property of a string group.

    ``method`` is ``"naive"`` (every pair of index subsets), ``"sectional"``
    (recursive check on consecutive substrings) or ``"auto"``, which picks
    naive up to ``naive_max_rank``.
    """
    if not check_string_property(s):
        raise StringPropertyError("string property fails; intersection check refused")
    if method == "auto":
        method = "naive" if s.rank <= naive_max_rank else "sectional"
    if method == "naive":
        return _naive(s)
    if method == "sectional":
        return _sectional(s)
    raise ValueError(f"unknown method {method!r}")


def is_independent(s: InvolutionString) -> PropertyCheck:
    for i in range(s.rank):
        others = PermGroup([g for j, g in enumerate(s.gens) if j != i], degree=s.degree)
        if others.contains(s.gens[i]):
            return PropertyCheck(False, i)
    return PropertyCheck(True)


def dual(s: InvolutionString) -> InvolutionString:
    return InvolutionString(tuple(reversed(s.gens)))


@dataclass
class CGroupReport:
    degree: int
    rank: int
    string_ok: bool
    intersection_ok: bool | None
    independent: bool
    schlafli: list[int]
    group_order: int
    transitive: bool
    primitive: bool | None
    blocks: BlockSystem | None = None
    string_witness: tuple[int, int] | None = None
    intersection_witness: IntersectionWitness | None = None

    @property
    def is_string_c_group(self) -> bool:
        return bool(self.string_ok and self.intersection_ok)

    @property
    def transitivity(self) -> str:
        return "transitive" if self.transitive else "intransitive"

    @property
    def primitivity(self) -> str:
        if self.primitive is None:
            return "n/a"
        return "primitive" if self.primitive else "imprimitive"


def group_fields(group: PermGroup) -> dict:
    transitive = group.is_transitive()
    primitive, blocks = (None, None)
    if transitive:
        primitive, blocks = group.is_primitive()
    return dict(group_order=group.order(), transitive=transitive, primitive=primitive, blocks=blocks)


def verify(s: InvolutionString, method: str = "auto",
           naive_max_rank: int = NAIVE_MAX_RANK) -> CGroupReport:
    """Every predicate at once.

    When the string property fails, the intersection property is still
    evaluated by the all-subsets check for ranks up to ``naive_max_rank``
    and left as ``None`` above that.
    """
    sp = check_string_property(s)
    if sp:
        ip = check_intersection_property(s, method, naive_max_rank)
    elif s.rank <= naive_max_rank:
        ip = _naive(s)
    else:
        ip = None
    return CGroupReport(
        degree=s.degree,
        rank=s.rank,
        string_ok=sp.ok,
        intersection_ok=None if ip is None else ip.ok,
        independent=is_independent(s).ok,
        schlafli=schlafli_type(s),
        string_witness=sp.witness,
        intersection_witness=None if ip is None else ip.witness,
        **group_fields(s.group()),
    )


def type_up_to_reversal(schlafli: Sequence[int]) -> tuple[int, ...]:
    t = tuple(schlafli)
    return min(t, t[::-1])

