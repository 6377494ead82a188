"""Equivalence of generator sequences under Sym_n-conjugacy and reversal.

Two independent routes:

* :func:`canonical_certificate` relabels each orbit of the generated group by
  a breadth-first walk from every possible start point and keeps the
  smallest result, so conjugate sequences get identical certificates.
* :func:`find_conjugator` backtracks over point images directly.
"""

from __future__ import annotations

import hashlib
from typing import Sequence

from .perm import _cycles0, _mul, element_order


def _orbits(gens: Sequence[tuple], n: int) -> list[list[int]]:
    seen = [False] * n
    out = []
    for s in range(n):
        if seen[s]:
            continue
        seen[s] = True
        orb = [s]
        k = 0
        while k < len(orb):
            a = orb[k]
            k += 1
            for g in gens:
                b = g[a]
                if not seen[b]:
                    seen[b] = True
                    orb.append(b)
        out.append(orb)
    return out


def _component_form(gens: Sequence[tuple], orbit: list[int]) -> tuple:
    best = None
    for start in orbit:
        label = {start: 0}
        order = [start]
        k = 0
        while k < len(order):
            a = order[k]
            k += 1
            for g in gens:
                b = g[a]
                if b not in label:
                    label[b] = len(order)
                    order.append(b)
        form = tuple(tuple(label[g[a]] for a in order) for g in gens)
        if best is None or form < best:
            best = form
    return best


def canonical_form(gens: Sequence[Sequence[int]]) -> tuple:
    """Invariant of the sequence under simultaneous conjugation in Sym_n."""
    gens = [tuple(g) for g in gens]
    n = len(gens[0])
    comps = [_component_form(gens, o) for o in _orbits(gens, n)]
    comps.sort(key=lambda f: (len(f[0]) if f else 0, f))
    return tuple(comps)


def canonical_certificate(gens: Sequence[Sequence[int]], duality: bool = True) -> tuple:
    f = canonical_form(gens)
    if duality:
        f = min(f, canonical_form(list(gens)[::-1]))
    return f


def _cycle_type(g) -> tuple:
    return tuple(sorted(len(c) for c in _cycles0(g)))


def canonical_key(gens: Sequence[Sequence[int]], group_order: int, duality: bool = True) -> str:
    """Sortable string, equal exactly for equivalent sequences.

    Readable coarse invariants come first (rank, order, type, orbit sizes,
    cycle types per position), then a digest of the full certificate.
    """
    gens = [tuple(g) for g in gens]
    n = len(gens[0])
    stype = tuple(element_order(_mul(gens[i], gens[i + 1])) for i in range(len(gens) - 1))
    ctypes = tuple(_cycle_type(g) for g in gens)
    if duality:
        stype = min(stype, stype[::-1])
        ctypes = min(ctypes, ctypes[::-1])
    orbit_sizes = sorted(len(o) for o in _orbits(gens, n))
    cert = canonical_certificate(gens, duality)
    digest = hashlib.sha256(repr(cert).encode()).hexdigest()[:24]
    ct = ";".join(".".join(map(str, c)) for c in ctypes)
    return (f"n{n:02d}|r{len(gens):02d}|o{group_order:015d}|t{'-'.join(map(str, stype))}"
            f"|orb{'.'.join(map(str, orbit_sizes))}|ct{ct}|{digest}")


def find_conjugator(xs: Sequence[Sequence[int]], ys: Sequence[Sequence[int]]) -> tuple | None:
    """Some ``c`` with ``c^-1 x_i c = y_i`` for all i, or ``None``.

    Points are matched orbit by orbit; a candidate image must have the same
    per-generator fixed/moved pattern and cycle lengths as the source point.
    """
    xs = [tuple(x) for x in xs]
    ys = [tuple(y) for y in ys]
    if len(xs) != len(ys):
        return None
    n = len(xs[0])
    if any(len(y) != n for y in ys):
        raise ValueError("degree mismatch")
    if any(_cycle_type(x) != _cycle_type(y) for x, y in zip(xs, ys)):
        return None

    def signatures(gs):
        lens = []
        for g in gs:
            ln = [0] * n
            for c in _cycles0(g):
                for a in c:
                    ln[a] = len(c)
            lens.append(ln)
        return [tuple(ln[a] for ln in lens) for a in range(n)]

    sx, sy = signatures(xs), signatures(ys)
    plans = []
    seen = [False] * n
    for root in range(n):
        if seen[root]:
            continue
        seen[root] = True
        pts = [root]
        steps = []
        k = 0
        while k < len(pts):
            a = pts[k]
            k += 1
            for gi, x in enumerate(xs):
                b = x[a]
                if not seen[b]:
                    seen[b] = True
                    pts.append(b)
                    steps.append((b, a, gi))
        plans.append((root, pts, steps))

    c = [-1] * n
    used = [False] * n

    def rec(idx: int) -> bool:
        if idx == len(plans):
            return True
        root, pts, steps = plans[idx]
        for img in range(n):
            if used[img] or sy[img] != sx[root]:
                continue
            assigned = [root]
            c[root] = img
            used[img] = True
            ok = True
            for b, a, gi in steps:
                v = ys[gi][c[a]]
                if used[v] or sy[v] != sx[b]:
                    ok = False
                    break
                c[b] = v
                used[v] = True
                assigned.append(b)
            if ok:
                ok = all(c[x[a]] == ys[gi][c[a]] for a in pts for gi, x in enumerate(xs))
            if ok and rec(idx + 1):
                return True
            for b in assigned:
                used[c[b]] = False
                c[b] = -1
        return False

    return tuple(c) if rec(0) else None


def are_equivalent(xs: Sequence[Sequence[int]], ys: Sequence[Sequence[int]],
                   duality: bool = True) -> bool:
    """Conjugate in Sym_n, possibly after reversing ``ys``."""
    if len(xs[0]) != len(ys[0]):
        raise ValueError("degree mismatch")
    if find_conjugator(xs, ys) is not None:
        return True
    return duality and find_conjugator(xs, list(ys)[::-1]) is not None


ISOMORPHISM_ORDER_CAP = 10**6


def cayley_form(gens: Sequence[Sequence[int]], cap: int = ISOMORPHISM_ORDER_CAP) -> tuple:
    """Invariant of the generated group together with its ordered generators,
    up to isomorphisms carrying generator i to generator i.

    Elements are numbered in breadth-first order from the identity, trying
    generators in sequence order, and the form lists right multiplication by
    each generator in that numbering.  Isomorphic pairs produce identical
    numberings, so the forms agree.
    """
    gens = [tuple(g) for g in gens]
    ident = tuple(range(len(gens[0])))
    label = {ident: 0}
    order = [ident]
    k = 0
    while k < len(order):
        x = order[k]
        k += 1
        for g in gens:
            y = _mul(x, g)
            if y not in label:
                if len(order) >= cap:
                    from .group import CapExceeded
                    raise CapExceeded(f"group order exceeds {cap}")
                label[y] = len(order)
                order.append(y)
    return tuple(tuple(label[_mul(x, g)] for x in order) for g in gens)


def isomorphism_key(gens: Sequence[Sequence[int]], duality: bool = True,
                    cap: int = ISOMORPHISM_ORDER_CAP) -> str:
    """Sortable string, equal exactly for sequences related by a group
    isomorphism matching generators in order (or in reverse order)."""
    gens = [tuple(g) for g in gens]
    form = cayley_form(gens, cap)
    stype = tuple(element_order(_mul(gens[i], gens[i + 1])) for i in range(len(gens) - 1))
    if duality:
        form = min(form, cayley_form(gens[::-1], cap))
        stype = min(stype, stype[::-1])
    digest = hashlib.sha256(repr(form).encode()).hexdigest()[:24]
    return f"r{len(gens):02d}|o{len(form[0]):015d}|t{'-'.join(map(str, stype))}|{digest}"


def generator_map_extends(xs: Sequence[Sequence[int]], ys: Sequence[Sequence[int]]) -> bool:
    """Whether x_i -> y_i extends to an isomorphism of the generated groups.

    The pairs (x_i, y_i) act on two disjoint copies of the points; the map
    extends exactly when the group they generate is no larger than either
    side.
    """
    from .group import PermGroup
    if len(xs) != len(ys):
        return False
    n, m = len(xs[0]), len(ys[0])
    both = [tuple(x) + tuple(n + b for b in y) for x, y in zip(xs, ys)]
    gx = PermGroup([tuple(x) for x in xs], degree=n).order()
    gy = PermGroup([tuple(y) for y in ys], degree=m).order()
    return gx == gy == PermGroup(both, degree=n + m).order()


def are_isomorphic(xs: Sequence[Sequence[int]], ys: Sequence[Sequence[int]],
                   duality: bool = True) -> bool:
    if generator_map_extends(xs, ys):
        return True
    return duality and generator_map_extends(xs, list(ys)[::-1])
