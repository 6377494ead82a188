"""Permutation groups backed by a deterministic Schreier-Sims stabilizer chain.

Internally every element is a plain tuple of 0-based images; the public
methods accept :class:`~stringc.perm.Permutation` (or any tuple) and hand back
:class:`Permutation` objects.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .perm import Permutation, _conj, _inv, _is_involution, _mul

ELEMENT_CAP = 10**7
COSET_INDEX_CAP = 10**5
SYM_CENTRALIZER_DEGREE_CAP = 64


class CapExceeded(RuntimeError):
    """An operation refused to run because the group (or index) is too big."""

    def __init__(self, what: str, size: int, cap: int):
        super().__init__(f"{what} {size} exceeds cap {cap}")
        self.size = size
        self.cap = cap


class NotTransitive(ValueError):
    pass


class _Level:
    """One level of the chain: base point, its strong generators, transversal."""

    __slots__ = ("point", "gens", "trans", "inv", "checked")

    def __init__(self, point: int, ident: tuple):
        self.point = point
        self.gens: list[tuple] = []
        self.trans = {point: ident}
        self.inv = {point: ident}
        self.checked: set = set()

    def copy(self) -> _Level:
        new = _Level.__new__(_Level)
        new.point = self.point
        new.gens = list(self.gens)
        new.trans = dict(self.trans)
        new.inv = dict(self.inv)
        new.checked = set(self.checked)
        return new

    def add_gen(self, g: tuple) -> None:
        self.gens.append(g)
        trans, inv = self.trans, self.inv
        fresh = []
        for b in list(trans):
            c = g[b]
            if c not in trans:
                u = _mul(trans[b], g)
                trans[c] = u
                inv[c] = _inv(u)
                fresh.append(c)
        i = 0
        while i < len(fresh):
            b = fresh[i]
            i += 1
            ub = trans[b]
            for s in self.gens:
                c = s[b]
                if c not in trans:
                    u = _mul(ub, s)
                    trans[c] = u
                    inv[c] = _inv(u)
                    fresh.append(c)


def _strip(levels: list[_Level], g: tuple, start: int = 0) -> tuple[tuple, int]:
    for j in range(start, len(levels)):
        lev = levels[j]
        inv = lev.inv.get(g[lev.point])
        if inv is None:
            return g, j
        g = _mul(g, inv)
    return g, len(levels)


def _first_moved(g: tuple) -> int:
    for i, x in enumerate(g):
        if i != x:
            return i
    raise ValueError("identity has no moved point")


def _schreier_sims(levels: list[_Level], new_gens: Iterable[tuple], ident: tuple) -> None:
    """Extend ``levels`` in place so that it is a complete chain for the old
    group joined with ``new_gens``.  Base points are always the smallest point
    moved by the element that forces a new level."""
    k = len(levels)
    for g in new_gens:
        h, j = _strip(levels, g)
        if j == k and h == ident:
            continue
        if j == k:
            levels.append(_Level(_first_moved(h), ident))
            k += 1
        for lev in levels[: j + 1]:
            lev.add_gen(h)
    i = len(levels) - 1
    while i >= 0:
        lev = levels[i]
        restart = False
        for b in list(lev.trans):
            ub = lev.trans[b]
            for gi, s in enumerate(lev.gens):
                key = (b, gi)
                if key in lev.checked:
                    continue
                lev.checked.add(key)
                h = _mul(_mul(ub, s), lev.inv[s[b]])
                if h == ident:
                    continue
                y, j = _strip(levels, h, i + 1)
                if j < len(levels) or y != ident:
                    if j == len(levels):
                        levels.append(_Level(_first_moved(y), ident))
                    for l in range(i + 1, j + 1):
                        levels[l].add_gen(y)
                    i = j
                    restart = True
                    break
            if restart:
                break
        if not restart:
            i -= 1


@dataclass(frozen=True)
class BlockSystem:
    blocks: tuple[tuple[int, ...], ...]  # 1-based, each block sorted, blocks sorted

    @property
    def m(self) -> int:
        return len(self.blocks)

    @property
    def k(self) -> int:
        return len(self.blocks[0])

    def as_lists(self) -> list[list[int]]:
        return [list(b) for b in self.blocks]


class PermGroup:
    """A permutation group given by generators, with a lazily built chain."""

    def __init__(self, generators: Iterable[Sequence[int]] = (), degree: int | None = None):
        gens = [tuple(g) for g in generators]
        if degree is None:
            if not gens:
                raise ValueError("degree required for a group without generators")
            degree = len(gens[0])
        for g in gens:
            if len(g) != degree:
                raise ValueError(f"generator of degree {len(g)} in a group of degree {degree}")
        ident = tuple(range(degree))
        uniq = []
        for g in gens:
            if g != ident and g not in uniq:
                uniq.append(g)
        self.degree = degree
        self._gens = tuple(uniq)
        self._ident = ident
        self._levels: list[_Level] | None = None
        self._order: int | None = None

    # -- construction helpers ------------------------------------------------

    @classmethod
    def symmetric(cls, n: int) -> PermGroup:
        if n < 2:
            return cls([], degree=max(n, 1))
        gens = [(1, 0) + tuple(range(2, n))]
        if n > 2:
            gens.append(tuple(range(1, n)) + (0,))
        return cls(gens, degree=n)

    @classmethod
    def alternating(cls, n: int) -> PermGroup:
        if n < 3:
            return cls([], degree=max(n, 1))
        gens = []
        for i in range(2, n):
            g = list(range(n))
            g[0], g[1], g[i] = 1, i, 0  # (1,2,i+1)
            gens.append(tuple(g))
        return cls(gens, degree=n)

    @classmethod
    def cyclic(cls, n: int) -> PermGroup:
        return cls([tuple(range(1, n)) + (0,)], degree=n)

    def extended(self, *gens: Sequence[int]) -> PermGroup:
        """The group generated by this one and ``gens``; reuses the chain."""
        new = PermGroup.__new__(PermGroup)
        new.degree = self.degree
        new._ident = self._ident
        extra = [tuple(g) for g in gens if tuple(g) != self._ident and tuple(g) not in self._gens]
        new._gens = self._gens + tuple(extra)
        levels = [lev.copy() for lev in self._chain()]
        _schreier_sims(levels, extra, self._ident)
        new._levels = levels
        new._order = None
        return new

    # -- chain ---------------------------------------------------------------

    def _chain(self) -> list[_Level]:
        if self._levels is None:
            levels: list[_Level] = []
            _schreier_sims(levels, self._gens, self._ident)
            self._levels = levels
        return self._levels

    @property
    def generators(self) -> list[Permutation]:
        return [Permutation._trusted(g) for g in self._gens]

    @property
    def base(self) -> list[int]:
        return [lev.point + 1 for lev in self._chain()]

    def order(self) -> int:
        if self._order is None:
            self._order = math.prod(len(lev.trans) for lev in self._chain())
        return self._order

    def __len__(self) -> int:
        return self.order()

    def _check_degree(self, p: Sequence[int]) -> None:
        if len(p) != self.degree:
            raise ValueError(f"degree mismatch: element of degree {len(p)}, group of degree {self.degree}")

    def contains(self, p: Sequence[int]) -> bool:
        self._check_degree(p)
        h, j = _strip(self._chain(), tuple(p))
        return j == len(self._levels) and h == self._ident

    __contains__ = contains

    def _contains_raw(self, p: tuple) -> bool:
        levels = self._chain()
        h, j = _strip(levels, p)
        return j == len(levels) and h == self._ident

    def is_subgroup_of(self, other: PermGroup) -> bool:
        return all(other._contains_raw(g) for g in self._gens)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PermGroup):
            return NotImplemented
        return (self.degree == other.degree and self.order() == other.order()
                and self.is_subgroup_of(other))

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        gens = ", ".join(str(g) for g in self.generators)
        return f"PermGroup([{gens}], degree={self.degree})"

    # -- orbits and blocks ---------------------------------------------------

    def orbits(self) -> list[list[int]]:
        """Orbits as sorted lists of 1-based points, ordered by smallest point."""
        return [[x + 1 for x in o] for o in self._orbits0()]

    def _orbits0(self) -> list[list[int]]:
        n = self.degree
        seen = [False] * n
        out = []
        for start in range(n):
            if seen[start]:
                continue
            seen[start] = True
            orb = [start]
            i = 0
            while i < len(orb):
                b = orb[i]
                i += 1
                for g in self._gens:
                    c = g[b]
                    if not seen[c]:
                        seen[c] = True
                        orb.append(c)
            out.append(sorted(orb))
        return out

    def is_transitive(self) -> bool:
        return len(self._orbits0()) == 1

    def _require_transitive(self) -> None:
        if not self.is_transitive():
            raise NotTransitive("group is not transitive")

    def minimal_block_system(self, seed: tuple[int, int]) -> BlockSystem | None:
        """Finest block system joining the two (1-based) seed points.

        Returns ``None`` when that system is the single block of all points.
        """
        self._require_transitive()
        a, b = seed
        if a == b:
            raise ValueError("seed points must differ")
        return self._block_system0(a - 1, b - 1)

    def _block_system0(self, a: int, b: int) -> BlockSystem | None:
        n = self.degree
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        queue = [(a, b)]
        parent[find(b)] = find(a)
        i = 0
        while i < len(queue):
            x, y = queue[i]
            i += 1
            for g in self._gens:
                u, v = find(g[x]), find(g[y])
                if u != v:
                    if v < u:
                        u, v = v, u
                    parent[v] = u
                    queue.append((u, v))
        classes: dict[int, list[int]] = {}
        for x in range(n):
            classes.setdefault(find(x), []).append(x + 1)
        if len(classes) == 1:
            return None
        return BlockSystem(tuple(sorted(tuple(c) for c in classes.values())))

    def is_primitive(self) -> tuple[bool, BlockSystem | None]:
        """``(True, None)`` or ``(False, witness)``; seeds (1, b) for b = 2..n."""
        self._require_transitive()
        for b in range(1, self.degree):
            bs = self._block_system0(0, b)
            if bs is not None:
                return False, bs
        return True, None

    # -- elements, classes, centralizers ------------------------------------

    def elements(self, cap: int = ELEMENT_CAP) -> Iterator[Permutation]:
        """Every element once, in chain-transversal product order."""
        for g in self._elements_raw(cap):
            yield Permutation._trusted(g)

    def _elements_raw(self, cap: int = ELEMENT_CAP) -> Iterator[tuple]:
        order = self.order()
        if order > cap:
            raise CapExceeded("group order", order, cap)
        levels = self._levels
        trans = [[lev.trans[b] for b in sorted(lev.trans)] for lev in levels]

        def rec(i):
            if i == len(trans):
                yield self._ident
                return
            for x in rec(i + 1):
                for u in trans[i]:
                    yield _mul(x, u)

        return rec(0)

    def involutions(self, cap: int = ELEMENT_CAP) -> list[Permutation]:
        return sorted(Permutation._trusted(g) for g in self._elements_raw(cap) if _is_involution(g))

    def _conjugacy_orbit(self, x: tuple, within: set | None = None) -> list[tuple]:
        orb = [x]
        seen = {x}
        i = 0
        while i < len(orb):
            y = orb[i]
            i += 1
            for g in self._gens:
                z = _conj(y, g)
                if z not in seen:
                    seen.add(z)
                    orb.append(z)
        return orb

    def involution_classes(self, cap: int = ELEMENT_CAP) -> list[tuple[Permutation, int]]:
        """``(representative, size)`` for each class of involutions.

        Representatives are the lexicographically smallest class members;
        classes are listed by increasing size, then representative.
        """
        invs = sorted(g for g in self._elements_raw(cap) if _is_involution(g))
        done: set = set()
        out = []
        for x in invs:
            if x in done:
                continue
            orb = self._conjugacy_orbit(x)
            done.update(orb)
            out.append((Permutation._trusted(min(orb)), len(orb)))
        out.sort(key=lambda t: (t[1], t[0]))
        return out

    def class_size(self, p: Sequence[int]) -> int:
        return len(self._conjugacy_orbit(tuple(p)))

    def centralizer_order(self, p: Sequence[int], cap: int = ELEMENT_CAP,
                          cross_check_limit: int = 10**6) -> int:
        """``|C_G(p)|`` as order / class size, cross-checked by counting
        commuting elements when the group is small enough."""
        self._check_degree(p)
        p = tuple(p)
        if not self._contains_raw(p):
            raise ValueError("element is not in the group")
        order = self.order()
        if order > cap:
            raise CapExceeded("group order", order, cap)
        result = order // self.class_size(p)
        if order <= cross_check_limit:
            count = sum(1 for g in self._elements_raw(cap) if _mul(g, p) == _mul(p, g))
            if count != result:
                raise AssertionError(f"centralizer mismatch: {count} != {result}")
        return result

    def centralizer_in_sym(self) -> list[Permutation]:
        """All elements of Sym_n commuting with every generator (backtracking)."""
        if self.degree > SYM_CENTRALIZER_DEGREE_CAP:
            raise CapExceeded("degree", self.degree, SYM_CENTRALIZER_DEGREE_CAP)
        return [Permutation._trusted(c) for c in _commuting_maps(self._gens, self._gens, self.degree)]

    def centralizer_in_sym_is_trivial(self) -> bool:
        return len(self.centralizer_in_sym()) == 1

    # -- cosets and actions --------------------------------------------------

    def _coset_rep(self, g: tuple) -> tuple:
        """Canonical element of the right coset ``self * g``."""
        for lev in self._chain():
            best = None
            for b, u in lev.trans.items():
                img = g[b]
                if best is None or img < best[0]:
                    best = (img, u)
            g = _mul(best[1], g)
        return g

    def right_cosets(self, overgroup: PermGroup, cap: int = COSET_INDEX_CAP) -> list[tuple]:
        """Canonical representatives of the right cosets of ``self`` in
        ``overgroup`` (which must contain it), identity coset first."""
        index = overgroup.order() // self.order()
        if index > cap:
            raise CapExceeded("index", index, cap)
        first = self._coset_rep(self._ident)
        reps = [first]
        pos = {first: 0}
        i = 0
        while i < len(reps):
            x = reps[i]
            i += 1
            for s in overgroup._gens:
                y = self._coset_rep(_mul(x, s))
                if y not in pos:
                    pos[y] = len(reps)
                    reps.append(y)
        return reps

    def coset_action(self, subgroup_generators: Iterable[Sequence[int]],
                     cap: int = COSET_INDEX_CAP) -> PermGroup:
        """Action on the right cosets of a subgroup by right multiplication.

        One image generator per generator of this group; the kernel is kept.
        Coset 1 is the subgroup itself.
        """
        sub_gens = [tuple(h) for h in subgroup_generators]
        for h in sub_gens:
            self._check_degree(h)
            if not self._contains_raw(h):
                raise ValueError(f"subgroup generator {Permutation._trusted(h)} is not in the group")
        sub = PermGroup(sub_gens, degree=self.degree)
        reps = sub.right_cosets(self, cap)
        pos = {r: i for i, r in enumerate(reps)}
        images = []
        for s in self._gens:
            images.append(tuple(pos[sub._coset_rep(_mul(r, s))] for r in reps))
        return PermGroup(images, degree=len(reps))

    def conjugation_stabilizer(self, x: Sequence[int]) -> PermGroup:
        """``C_G(x)``: the stabilizer of ``x`` under conjugation."""
        x = tuple(x)
        trans = {x: self._ident}
        orbit = [x]
        i = 0
        while i < len(orbit):
            y = orbit[i]
            i += 1
            uy = trans[y]
            for g in self._gens:
                z = _conj(y, g)
                if z not in trans:
                    trans[z] = _mul(uy, g)
                    orbit.append(z)
        return _stabilizer_from_orbit(self, trans)


def _stabilizer_from_orbit(group: PermGroup, trans: dict) -> PermGroup:
    """Schreier generators for an orbit given as ``{point: u}`` with ``u``
    moving the root to the point; stops once the target order is reached."""
    ident = group._ident
    target = group.order() // len(trans)
    stab = PermGroup([], degree=group.degree)
    levels = stab._chain()
    gens: list[tuple] = []
    if target == 1:
        return stab
    order = 1
    for y, uy in trans.items():
        for g in group._gens:
            z = _conj(y, g)
            h = _mul(_mul(uy, g), _inv(trans[z]))
            if h == ident:
                continue
            r, j = _strip(levels, h)
            if j == len(levels) and r == ident:
                continue
            gens.append(h)
            _schreier_sims(levels, [h], ident)
            order = math.prod(len(lev.trans) for lev in levels)
            if order == target:
                break
        if order == target:
            break
    stab._gens = tuple(gens)
    stab._order = None
    if stab.order() != target:
        raise AssertionError("stabilizer order mismatch")
    return stab


def _commuting_maps(xs: Sequence[tuple], ys: Sequence[tuple], n: int,
                    first_only: bool = False) -> list[tuple]:
    """All ``c`` in Sym_n with ``c(x_i(a)) = y_i(c(a))`` for every i and a,
    i.e. ``c^-1 x_i c = y_i``; found orbit by orbit with propagation."""
    # orbits of <xs>, each with a spanning word from its root
    seen = [False] * n
    orbit_plans = []
    for root in range(n):
        if seen[root]:
            continue
        seen[root] = True
        plan = []  # (point, source point, generator index)
        pts = [root]
        k = 0
        while k < len(pts):
            a = pts[k]
            k += 1
            for gi, x in enumerate(xs):
                b = x[a]
                if not seen[b]:
                    seen[b] = True
                    pts.append(b)
                    plan.append((b, a, gi))
        orbit_plans.append((root, pts, plan))

    results: list[tuple] = []
    c = [-1] * n
    used = [False] * n

    def assign(idx: int) -> bool:
        if idx == len(orbit_plans):
            results.append(tuple(c))
            return first_only
        root, pts, plan = orbit_plans[idx]
        for img in range(n):
            if used[img]:
                continue
            touched = []
            ok = True
            c[root] = img
            used[img] = True
            touched.append(root)
            for b, a, gi in plan:
                v = ys[gi][c[a]]
                if used[v]:
                    ok = False
                    break
                c[b] = v
                used[v] = True
                touched.append(b)
            if ok:
                for a in pts:
                    for gi, x in enumerate(xs):
                        if c[x[a]] != ys[gi][c[a]]:
                            ok = False
                            break
                    if not ok:
                        break
            if ok and assign(idx + 1):
                return True
            for t in touched:
                used[c[t]] = False
                c[t] = -1
        return False

    assign(0)
    return results
