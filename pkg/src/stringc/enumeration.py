"""Exhaustive search for string C-groups, up to isomorphism (or conjugacy)
and duality.

The search extends rho_0, rho_1, ... depth first.  At every node the group
``K`` of scope elements centralizing the current prefix acts on the
admissible next generators by conjugation, and only the smallest member of
each ``K``-orbit is tried: any string is conjugate, one generator at a time,
to one whose every entry is such an orbit minimum.  Each extension must
commute with all earlier non-neighbours and keep the intersection property,
which is maintained incrementally on consecutive substrings.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Iterable, Iterator, Sequence

from .canon import canonical_key, isomorphism_key
from .cgroup import CGroupReport, InvolutionString, group_fields, meet_is, schlafli_type
from .group import ELEMENT_CAP, PermGroup, _stabilizer_from_orbit
from .perm import Permutation, _conj, _mul

PREDICATES = frozenset({"transitive", "intransitive", "imprimitive", "primitive", "proper", "full-group"})
DEDUPE_MODES = ("isomorphism+duality", "conjugacy+duality", "raw")
DEFAULT_NODE_BUDGET = 10**8


@dataclass
class SearchSpec:
    degree: int
    rank_min: int = 3
    rank_max: int | None = None
    scope: PermGroup | None = None      # None means all of Sym_n
    predicates: frozenset = frozenset()
    dedupe: str = "isomorphism+duality"
    node_budget: int = DEFAULT_NODE_BUDGET
    time_budget: float | None = None
    workers: int = 1

    def __post_init__(self):
        self.predicates = frozenset(self.predicates)
        n = self.degree
        if n < 2:
            raise ValueError("degree must be at least 2")
        if self.rank_max is None:
            self.rank_max = n - 1
        if self.rank_max > n - 1:
            raise ValueError(f"rank_max {self.rank_max} exceeds the independence cap n-1 = {n - 1}")
        if not 1 <= self.rank_min <= self.rank_max:
            raise ValueError(f"empty rank window [{self.rank_min}, {self.rank_max}]")
        unknown = self.predicates - PREDICATES
        if unknown:
            raise ValueError(f"unknown predicates {sorted(unknown)}")
        if self.dedupe not in DEDUPE_MODES:
            raise ValueError(f"dedupe must be one of {DEDUPE_MODES}")
        if self.scope is not None and self.scope.degree != n:
            raise ValueError("scope degree differs from search degree")
        if self.node_budget <= 0 or (self.time_budget is not None and self.time_budget <= 0):
            raise ValueError("budgets must be positive")
        if self.workers < 1:
            raise ValueError("workers must be positive")


@dataclass
class PolytopeRecord:
    string: InvolutionString
    report: CGroupReport
    canonical_key: str
    group_label: str | None = None
    dual_partner: InvolutionString | None = None   # None when self-dual

    @property
    def rank(self) -> int:
        return self.string.rank

    @property
    def schlafli(self) -> list[int]:
        return self.report.schlafli

    @property
    def group_order(self) -> int:
        return self.report.group_order


@dataclass
class EnumerationResult:
    records: list[PolytopeRecord]
    complete: bool = True
    nodes: int = 0
    seconds: float = 0.0

    def __iter__(self) -> Iterator[PolytopeRecord]:
        return iter(self.records)

    def __len__(self) -> int:
        return len(self.records)

    def __getitem__(self, i):
        return self.records[i]


class _Exhausted(Exception):
    pass


def sym_involutions(n: int) -> list[tuple]:
    """All involutions of Sym_n in lexicographic image order."""
    out = []
    img = list(range(n))

    def rec(start: int, moved: bool):
        while start < n and img[start] != start:
            start += 1
        if start >= n:
            if moved:
                out.append(tuple(img))
            return
        rec(start + 1, moved)  # start stays fixed
        for b in range(start + 1, n):
            if img[b] == b:
                img[start], img[b] = b, start
                rec(start + 1, True)
                img[start], img[b] = start, b

    rec(0, False)
    out.sort()
    return out


def _commute(x: tuple, y: tuple) -> bool:
    for a in range(len(x)):
        if x[y[a]] != y[x[a]]:
            return False
    return True


def _orbit_reps(K: PermGroup, items: list[tuple]) -> list[tuple[tuple, dict]]:
    """K-conjugacy orbits of ``items`` (assumed K-invariant), each as its
    smallest member plus a transversal ``{member: u}`` with rep^u = member."""
    gens = K._gens
    ident = K._ident
    done: set = set()
    out = []
    for x in items:
        if x in done:
            continue
        trans = {x: ident}
        orbit = [x]
        k = 0
        while k < len(orbit):
            y = orbit[k]
            k += 1
            uy = trans[y]
            for g in gens:
                z = _conj(y, g)
                if z not in trans:
                    trans[z] = _mul(uy, g)
                    orbit.append(z)
        done.update(orbit)
        out.append((x, trans))
    return out


def _factorial(n):
    return math.factorial(n)


def _chain_bound(order: int) -> int:
    """Number of prime factors of ``order`` with multiplicity; no subgroup
    chain of a group of this order is longer."""
    count, p = 0, 2
    while p * p <= order:
        while order % p == 0:
            order //= p
            count += 1
        p += 1
    return count + (order > 1)


class _Search:
    def __init__(self, spec: SearchSpec, scope_gens: Sequence[tuple] | None):
        self.spec = spec
        n = spec.degree
        self.n = n
        if scope_gens is None:
            self.K0 = PermGroup.symmetric(n)
            self.involutions = sym_involutions(n)
            self.scope_order = _factorial(n)
        else:
            self.K0 = PermGroup(scope_gens, degree=n)
            self.involutions = sorted(tuple(g) for g in self.K0.involutions(ELEMENT_CAP))
            self.scope_order = self.K0.order()
        self.found: list[tuple] = []
        self.nodes = 0
        self.deadline = None if spec.time_budget is None else time.monotonic() + spec.time_budget

    def roots(self) -> list[tuple]:
        return [r for r, _ in _orbit_reps(self.K0, self.involutions)]

    def run_root(self, r0: tuple) -> None:
        spec = self.spec
        trans = self._orbit_of(self.K0, r0)
        S = [PermGroup([r0], degree=self.n)]
        self._tick()
        if spec.rank_min <= 1:
            self._emit([r0], S[0])
        if spec.rank_max > 1:
            K1 = _stabilizer_from_orbit(self.K0, trans)
            self._expand([r0], S, self.involutions, K1)

    def _orbit_of(self, K, x):
        for rep, trans in _orbit_reps(K, [x]):
            return trans

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.spec.node_budget:
            raise _Exhausted
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise _Exhausted

    def _expand(self, gens: list, S: list, pool: list, K: PermGroup) -> None:
        spec = self.spec
        # rho_{i+1} .. rho_{rank_min - 1} are independent and centralize
        # rho_0 .. rho_{i-1}, so K must hold a subgroup chain that long
        if _chain_bound(K.order()) < spec.rank_min - len(gens) - 1:
            return
        last = gens[-1]
        S0 = S[0]
        cands = [c for c in pool if c != last and not S0._contains_raw(c)]
        if not cands:
            return
        # every later generator commutes with all of gens, so whatever this
        # subtree emits lies inside <gens, rep, child_pool>
        child_pool = [c for c in pool if _commute(c, last)]
        preds = spec.predicates
        need_full = "full-group" in preds
        need_trans = bool(preds & {"transitive", "primitive", "imprimitive"})
        hull = S0.extended(*child_pool) if (need_full or need_trans) else None
        depth = len(gens) + 1
        for rep, trans in _orbit_reps(K, cands):
            self._tick()
            if hull is not None:
                top = hull.extended(rep)
                if need_full and top.order() != self.scope_order:
                    continue
                if need_trans and not top.is_transitive():
                    continue
            T = self._extend(S, rep)
            if T is None:
                continue
            new_gens = gens + [rep]
            if depth >= spec.rank_min:
                self._emit(new_gens, T[0])
            if depth < spec.rank_max:
                K2 = _stabilizer_from_orbit(K, trans)
                self._expand(new_gens, T, child_pool, K2)

    def _extend(self, S: list, r: tuple) -> list | None:
        i = len(S) - 1
        T: list = [None] * (i + 2)
        T[i + 1] = PermGroup([r], degree=self.n)
        for j in range(i, -1, -1):
            if j < i and meet_is(S[j], T[j + 1], S[j + 1]) is not None:
                return None
            T[j] = S[j].extended(r)
        return T

    def _emit(self, gens: list, group: PermGroup) -> None:
        preds = self.spec.predicates
        n = self.n
        order = group.order()
        if "full-group" in preds and order != self.scope_order:
            return
        if "proper" in preds and order in (_factorial(n), _factorial(n) // 2):
            return
        transitive = group.is_transitive()
        if "transitive" in preds and not transitive:
            return
        if "intransitive" in preds and transitive:
            return
        if preds & {"primitive", "imprimitive"}:
            if not transitive:
                return
            prim, _ = group.is_primitive()
            if "primitive" in preds and not prim:
                return
            if "imprimitive" in preds and prim:
                return
        self.found.append(tuple(gens))


def _run_roots(spec: SearchSpec, scope_gens, roots) -> tuple[list, int, bool]:
    search = _Search(spec, scope_gens)
    complete = True
    try:
        for r0 in roots:
            search.run_root(r0)
    except _Exhausted:
        complete = False
    return search.found, search.nodes, complete


def _worker(args):
    spec, scope_gens, roots = args
    return _run_roots(spec, scope_gens, roots)


def make_record(gens: Sequence[Sequence[int]], group: PermGroup | None = None,
                duality: bool = True, group_label: str | None = None,
                notion: str = "isomorphism") -> PolytopeRecord:
    """Record for a string already known to be a string C-group.

    ``notion`` selects the equivalence behind ``canonical_key``:
    ``"isomorphism"`` (group isomorphisms matching generators) or
    ``"conjugacy"`` (simultaneous conjugation in Sym_n).
    """
    s = InvolutionString(tuple(Permutation._trusted(tuple(g)) for g in gens))
    if group is None:
        group = s.group()
    report = CGroupReport(
        degree=s.degree, rank=s.rank, string_ok=True, intersection_ok=True, independent=True,
        schlafli=schlafli_type(s), **group_fields(group))
    rev = InvolutionString(s.gens[::-1])
    if notion == "isomorphism":
        key = f"n{s.degree:02d}|" + isomorphism_key(s.gens, duality)
        self_dual = isomorphism_key(rev.gens, False) == isomorphism_key(s.gens, False)
    elif notion == "conjugacy":
        key = canonical_key(s.gens, report.group_order, duality)
        self_dual = canonical_key(rev.gens, report.group_order, duality=False) == \
            canonical_key(s.gens, report.group_order, duality=False)
    else:
        raise ValueError(f"unknown notion {notion!r}")
    return PolytopeRecord(s, report, key, group_label, None if self_dual else rev)


def _dedupe(found: list[tuple], mode: str) -> list[PolytopeRecord]:
    if mode == "raw":
        records = [make_record(g, duality=False, notion="conjugacy") for g in found]
    else:
        # conjugate strings are isomorphic, so collapse conjugacy classes
        # first and build the costlier isomorphism key once per class
        by_conj: dict[str, tuple] = {}
        for g in found:
            group = PermGroup(g, degree=len(g[0]))
            k = canonical_key(g, group.order(), True)
            if k not in by_conj or g < by_conj[k]:
                by_conj[k] = g
        notion = mode.split("+")[0]
        records = [make_record(g, duality=True, notion=notion) for g in by_conj.values()]
    records.sort(key=lambda r: (r.canonical_key, tuple(tuple(x) for x in r.string.gens)))
    if mode != "raw":
        uniq = []
        for r in records:
            if not uniq or uniq[-1].canonical_key != r.canonical_key:
                uniq.append(r)
        records = uniq
    return records


def enumerate_string_cgroups(spec: SearchSpec) -> EnumerationResult:
    """All string C-groups matching ``spec``; one record per equivalence
    class (or per search leaf with ``dedupe="raw"``), sorted by key."""
    start = time.monotonic()
    scope_gens = None if spec.scope is None else [tuple(g) for g in spec.scope._gens]
    # workers rebuild the scope group from its generators
    light = replace(spec, scope=None)
    probe = _Search(spec, scope_gens)
    roots = probe.roots()
    if spec.workers == 1 or len(roots) == 1:
        found, nodes, complete = _run_roots(spec, scope_gens, roots)
    else:
        tasks = [(light, scope_gens, [r]) for r in roots]
        found, nodes, complete = [], 0, True
        with ProcessPoolExecutor(max_workers=spec.workers) as ex:
            for f, k, c in ex.map(_worker, tasks):
                found.extend(f)
                nodes += k
                complete = complete and c
        if nodes > spec.node_budget:
            complete = False
    records = _dedupe(found, spec.dedupe)
    return EnumerationResult(records, complete, nodes, time.monotonic() - start)


# the public name shadows a builtin only inside this module's namespace
enumerate = enumerate_string_cgroups  # noqa: A001


def enumerate_in_group(group: PermGroup, rank_min: int = 1, rank_max: int | None = None,
                       **options) -> EnumerationResult:
    """String C-groups generating exactly ``group``."""
    spec = SearchSpec(degree=group.degree, rank_min=rank_min, rank_max=rank_max, scope=group,
                      predicates=frozenset({"full-group"}) | frozenset(options.pop("predicates", ())),
                      **options)
    return enumerate_string_cgroups(spec)
