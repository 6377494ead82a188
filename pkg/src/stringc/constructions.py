"""Generator families and named groups, plus the group data file loader.

Group data files look like::

    degree 16
    # name: 2^4:A7
    # order: 40320
    (1,2)(3,4)...
    ...

Comment lines of the form ``# key: value`` are collected as metadata; other
comment lines and blank lines are skipped.  Every other line must be a
single permutation in cycle notation.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from importlib import resources
from itertools import combinations
from pathlib import Path
from typing import Callable, Sequence

from .cgroup import InvolutionString
from .fields import field as gf
from .group import PermGroup
from .perm import CycleParseError, Permutation, parse_cycles


class GroupFileError(ValueError):
    def __init__(self, message: str, line: int | None = None, path=None):
        where = ""
        if path is not None:
            where += f"{path}"
        if line is not None:
            where += f":{line}"
        super().__init__(f"{where}: {message}" if where else message)
        self.line = line


# -- generator families ------------------------------------------------------

def _involution(degree: int, pairs: Sequence[tuple[int, int]]) -> Permutation:
    return Permutation.from_cycles([list(p) for p in pairs], degree)


def coxeter_symmetric(n: int) -> InvolutionString:
    """Adjacent transpositions (1,2), (2,3), ..., (n-1,n)."""
    if n < 2:
        raise ValueError("need n >= 2")
    return InvolutionString(tuple(_involution(n, [(i + 1, i + 2)]) for i in range(n - 1)))


def cross_polytope(m: int) -> InvolutionString:
    """Rank m string for C2 wr Sym_m on 2m points with blocks {i, m+i}.

    The first m-1 generators permute the blocks diagonally; the last swaps
    the two points of block m.  Type [3, ..., 3, 4].
    """
    if m < 2:
        raise ValueError("need m >= 2")
    n = 2 * m
    gens = [_involution(n, [(i, i + 1), (m + i, m + i + 1)]) for i in range(1, m)]
    gens.append(_involution(n, [(m, n)]))
    return InvolutionString(tuple(gens))


def theorem1b_generators(n: int) -> InvolutionString:
    """The rank n/2 + 1 string for C2 wr Sym_{n/2}, n = 2 mod 4, n >= 6::

        r0 = (1,h+1)(2,h+2)...(h,n)
        r1 = (2,h+2)...(h,n)
        ri = (i-1,i)(h+i-1,h+i)    for 2 <= i <= h

    with h = n/2.
    """
    if n < 6 or n % 4 != 2:
        raise ValueError(f"n must be 2 mod 4 and at least 6, got {n}")
    h = n // 2
    gens = [
        _involution(n, [(j, h + j) for j in range(1, h + 1)]),
        _involution(n, [(j, h + j) for j in range(2, h + 1)]),
    ]
    for i in range(2, h + 1):
        gens.append(_involution(n, [(i - 1, i), (h + i - 1, h + i)]))
    return InvolutionString(tuple(gens))


def intransitive_product(parts: Sequence[int]) -> InvolutionString:
    """Coxeter strings of Sym_{n1}, Sym_{n2}, ... on consecutive point ranges,
    concatenated in the given order."""
    if not parts or any(p < 2 for p in parts):
        raise ValueError("every part must be at least 2")
    n = sum(parts)
    gens = []
    offset = 0
    for p in parts:
        gens.extend(_involution(n, [(offset + i, offset + i + 1)]) for i in range(1, p))
        offset += p
    return InvolutionString(tuple(gens))


# -- named groups ------------------------------------------------------------

def symmetric_group(n: int) -> PermGroup:
    return PermGroup.symmetric(n)


def alternating_group(n: int) -> PermGroup:
    return PermGroup.alternating(n)


def wreath_c2_sym(m: int) -> PermGroup:
    """C2 wr Sym_m on 2m points, blocks {i, m+i}."""
    if m < 2:
        raise ValueError("need m >= 2")
    return cross_polytope(m).group()


PROJECTIVE_QS = (4, 5, 7, 8, 9)
FLAVORS = ("PSL", "PGL", "PGammaL")
_FLAVOR_ALIASES = {"PSL": "PSL", "PGL": "PGL", "PGAMMAL": "PGammaL", "PΓL": "PGammaL"}


def _mobius(F, a, b, c, d):
    q = F.q
    img = []
    for x in range(q + 1):
        if x == q:
            num, den = a, c
        else:
            num = F.add[F.mul[a][x]][b]
            den = F.add[F.mul[c][x]][d]
        img.append(q if den == 0 else F.mul[num][F.inv[den]])
    return tuple(img)


def projective_group(q: int, flavor: str = "PGL") -> PermGroup:
    """PSL, PGL or PGammaL of dimension 2 over GF(q) on the q+1 points of the
    projective line.  Point x + 1 is the field element x, point q + 1 is
    infinity."""
    key = _FLAVOR_ALIASES.get(flavor.upper())
    if key is None:
        raise ValueError(f"flavor {flavor!r} not one of {FLAVORS}")
    flavor = key
    if q not in PROJECTIVE_QS:
        raise ValueError(f"q = {q} not supported (choose from {PROJECTIVE_QS})")
    F = gf(q)
    w = F.primitive
    one, zero = 1, 0
    gens = [_mobius(F, one, one, zero, one)]
    if flavor == "PSL" and F.p != 2:
        gens.append(_mobius(F, F.mul[w][w], zero, zero, one))
        gens.append(_mobius(F, zero, F.neg[one], one, zero))
    else:
        gens.append(_mobius(F, w, zero, zero, one))
        gens.append(_mobius(F, zero, one, one, zero))
    if flavor == "PGammaL" and F.e > 1:
        gens.append(tuple(F.frobenius(x) for x in range(q)) + (q,))
    return PermGroup(gens, degree=q + 1)


def projective_group_order(q: int, flavor: str) -> int:
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e = round(math.log(q, p))
    pgl = q * (q * q - 1)
    if flavor == "PSL":
        return pgl // math.gcd(2, q - 1)
    if flavor == "PGL":
        return pgl
    return pgl * e


def s6_on_partitions() -> PermGroup:
    """Sym_6 on the 10 splittings of {1..6} into two 3-sets."""
    splits = [frozenset(c) for c in combinations(range(6), 3) if 0 in c]
    pos = {s: i for i, s in enumerate(splits)}

    def act(g):
        out = []
        for s in splits:
            t = frozenset(g[x] for x in s)
            if 0 not in t:
                t = frozenset(range(6)) - t
            out.append(pos[t])
        return tuple(out)

    gens = [(1, 0, 2, 3, 4, 5), (1, 2, 3, 4, 5, 0)]
    return PermGroup([act(g) for g in gens], degree=10)


# -- data files --------------------------------------------------------------

_META = re.compile(r"#\s*([\w-]+)\s*:\s*(.*?)\s*$")


def read_perm_file(text: str, path=None) -> tuple[int, dict, list[Permutation]]:
    """Parse the data file format; returns (degree, metadata, permutations)."""
    lines = text.splitlines()
    header_at = next((i for i, ln in enumerate(lines) if ln.strip()), None)
    if header_at is None:
        raise GroupFileError("empty file", 1, path)
    m = re.fullmatch(r"\s*degree\s+(\d+)\s*", lines[header_at])
    if not m:
        raise GroupFileError("first line must be 'degree <n>'", header_at + 1, path)
    degree = int(m.group(1))
    if degree < 1:
        raise GroupFileError("degree must be positive", header_at + 1, path)
    meta: dict[str, str] = {}
    perms = []
    for no, line in enumerate(lines[header_at + 1:], start=header_at + 2):
        s = line.strip()
        if not s:
            continue
        if s.startswith("#"):
            mm = _META.match(s)
            if mm:
                meta[mm.group(1).lower()] = mm.group(2)
            continue
        try:
            perms.append(parse_cycles(s, degree))
        except (CycleParseError, ValueError) as exc:
            raise GroupFileError(str(exc), no, path) from None
    return degree, meta, perms


def load_group_file(path) -> tuple[PermGroup, dict]:
    """Load and validate a group file.  A ``# order:`` annotation must match
    the computed order exactly."""
    path = Path(path)
    degree, meta, perms = read_perm_file(path.read_text(), path)
    return _validated_group(degree, meta, perms, path)


def _validated_group(degree, meta, perms, path):
    group = PermGroup(perms, degree=degree)
    if "order" in meta:
        try:
            declared = int(meta["order"])
        except ValueError:
            raise GroupFileError(f"bad order annotation {meta['order']!r}", None, path) from None
        if group.order() != declared:
            raise GroupFileError(f"declared order {declared} but generators give {group.order()}",
                                 None, path)
    return group, meta


SHIPPED = {
    "affine-2^4:A7": "affine_2_4_A7.grp",
    "affine-2^4:A8": "affine_2_4_A8.grp",
    "m11": "m11.grp",
    "m12": "m12.grp",
    "psl2-11-deg11": "psl2_11_deg11.grp",
}


def shipped_group(name: str) -> PermGroup:
    try:
        fname = SHIPPED[name]
    except KeyError:
        raise ValueError(f"no shipped group {name!r}; have {sorted(SHIPPED)}") from None
    res = resources.files("stringc") / "data" / fname
    degree, meta, perms = read_perm_file(res.read_text(), fname)
    group, _ = _validated_group(degree, meta, perms, fname)
    return group


def read_string_file(path) -> InvolutionString:
    """A string file is a group file whose permutation lines, in order, are
    the generators rho_0, rho_1, ..."""
    path = Path(path)
    _, _, perms = read_perm_file(path.read_text(), path)
    if not perms:
        raise GroupFileError("no generators", None, path)
    try:
        return InvolutionString(tuple(perms))
    except ValueError as exc:
        raise GroupFileError(str(exc), None, path) from None


# -- labelled registry -------------------------------------------------------

@dataclass
class NamedConstruction:
    label: str
    parameters: list[int]
    obj: InvolutionString | PermGroup
    checks: dict = field(default_factory=dict)

    @property
    def group(self) -> PermGroup:
        return self.obj.group() if isinstance(self.obj, InvolutionString) else self.obj


def _expect(group: PermGroup, *, degree: int, order: int, transitive: bool | None = None,
            primitive: bool | None = None, block_size: int | None = None) -> dict:
    got = {"degree": group.degree, "order": group.order()}
    want = {"degree": degree, "order": order}
    if transitive is not None:
        got["transitive"] = group.is_transitive()
        want["transitive"] = transitive
    if primitive is not None or block_size is not None:
        prim, blocks = group.is_primitive()
        if primitive is not None:
            got["primitive"] = prim
            want["primitive"] = primitive
        if block_size is not None:
            got["block_size"] = blocks.k if blocks else None
            want["block_size"] = block_size
    if got != want:
        raise AssertionError(f"construction sanity check failed: wanted {want}, got {got}")
    return got


def _one(params, name):
    if len(params) != 1:
        raise ValueError(f"{name} takes exactly one integer parameter")
    return params[0]


def _c_coxeter(p):
    n = _one(p, "coxeter-sym")
    s = coxeter_symmetric(n)
    return s, _expect(s.group(), degree=n, order=math.factorial(n), transitive=True)


def _c_cross(p):
    m = _one(p, "cross-polytope")
    s = cross_polytope(m)
    return s, _expect(s.group(), degree=2 * m, order=2 ** m * math.factorial(m), transitive=True,
                      block_size=2 if m > 2 else None)


def _c_thm1b(p):
    n = _one(p, "theorem1b")
    s = theorem1b_generators(n)
    h = n // 2
    return s, _expect(s.group(), degree=n, order=2 ** h * math.factorial(h), transitive=True,
                      primitive=False, block_size=2)


def _c_product(p):
    s = intransitive_product(p)
    g = s.group()
    return s, _expect(g, degree=sum(p), order=math.prod(math.factorial(x) for x in p),
                      transitive=len(p) == 1)


def _c_projective(flavor):
    def build(p):
        q = _one(p, flavor)
        g = projective_group(q, flavor)
        return g, _expect(g, degree=q + 1, order=projective_group_order(q, flavor),
                          transitive=True, primitive=True)
    return build


def _c_s6(p):
    g = s6_on_partitions()
    return g, _expect(g, degree=10, order=720, transitive=True, primitive=True)


def _c_wreath(p):
    m = _one(p, "wreath-c2")
    g = wreath_c2_sym(m)
    return g, _expect(g, degree=2 * m, order=2 ** m * math.factorial(m), transitive=True)


def _c_sym(p):
    n = _one(p, "sym")
    g = symmetric_group(n)
    return g, _expect(g, degree=n, order=math.factorial(n))


def _c_alt(p):
    n = _one(p, "alt")
    g = alternating_group(n)
    return g, _expect(g, degree=n, order=math.factorial(n) // 2 if n > 1 else 1)


def _c_shipped(name):
    def build(p):
        g = shipped_group(name)
        return g, {"degree": g.degree, "order": g.order()}
    return build


REGISTRY: dict[str, Callable] = {
    "coxeter-sym": _c_coxeter,
    "cross-polytope": _c_cross,
    "theorem1b": _c_thm1b,
    "intransitive-product": _c_product,
    "psl2": _c_projective("PSL"),
    "pgl2": _c_projective("PGL"),
    "pgammal2": _c_projective("PGammaL"),
    "s6-deg10": _c_s6,
    "wreath-c2": _c_wreath,
    "sym": _c_sym,
    "alt": _c_alt,
    **{name: _c_shipped(name) for name in SHIPPED},
}


def construct(label: str, parameters: Sequence[int] = ()) -> NamedConstruction:
    """Build a labelled construction and run its sanity predicate."""
    try:
        builder = REGISTRY[label]
    except KeyError:
        raise ValueError(f"unknown construction {label!r}; choose from {sorted(REGISTRY)}") from None
    obj, checks = builder(list(parameters))
    return NamedConstruction(label, list(parameters), obj, checks)
