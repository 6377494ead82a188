"""One test per acceptance criterion.  Each prints a single PASS/FAIL line
(outside pytest's capture) and then asserts the criterion exactly."""

import math
import random
import time

import pytest

from stringc.bounds import MIN_RANK6_ORDER, maroti_order_bound, primitive_rank_bound
from stringc.canon import are_isomorphic
from stringc.cgroup import check_intersection_property, dual, type_up_to_reversal, verify
from stringc.constructions import (alternating_group, cross_polytope, projective_group, s6_on_partitions,
                                   shipped_group, theorem1b_generators, wreath_c2_sym)
from stringc.enumeration import SearchSpec, enumerate_in_group, enumerate_string_cgroups
from stringc.group import PermGroup
from stringc.perm import Permutation

from conftest import corpus, random_groups


@pytest.fixture
def report(capsys):
    def emit(number, ok, seconds, detail):
        with capsys.disabled():
            print(f"\ncriterion {number:>2}: {'PASS' if ok else 'FAIL'}  ({seconds:.1f} s)  {detail}")
    return emit


def types(records):
    return sorted(type_up_to_reversal(r.schlafli) for r in records)


def test_criterion_01_table1_degree6(report):
    t = time.perf_counter()
    res = enumerate_string_cgroups(SearchSpec(degree=6, rank_min=4,
                                              predicates={"transitive", "imprimitive", "proper"}))
    secs = time.perf_counter() - t
    got = sorted((r.group_order, type_up_to_reversal(r.schlafli)) for r in res)
    want = sorted([(36, (2, 3, 3)), (48, (2, 3, 3)), (48, (2, 3, 4))])
    ok = res.complete and got == want and secs < 60
    report(1, ok, secs, f"classes {got}, expected {want}")
    assert res.complete and secs < 60
    assert got == want


def test_criterion_02_table1_degree8(report):
    t = time.perf_counter()
    res = enumerate_string_cgroups(SearchSpec(degree=8, rank_min=5,
                                              predicates={"transitive", "imprimitive", "proper"}))
    secs = time.perf_counter() - t
    got = [(r.group_order, type_up_to_reversal(r.schlafli)) for r in res]
    ok = res.complete and got == [(576, (3, 4, 4, 3))] and secs < 30 * 60
    report(2, ok, secs, f"classes {got}")
    assert ok


def test_criterion_03_explicit_family(report):
    t = time.perf_counter()
    problems = []
    for n in (6, 10, 14, 18):
        h = n // 2
        s = theorem1b_generators(n)
        rep = verify(s)
        want_type = (2,) + (3,) * (h - 2) + (4,)
        blocks = rep.blocks
        checks = {
            "string C-group": rep.is_string_c_group,
            "rank": rep.rank == h + 1,
            "order": rep.group_order == 2 ** h * math.factorial(h),
            "transitive": rep.transitive,
            "imprimitive": rep.primitive is False,
            "blocks": blocks is not None and blocks.m == h and blocks.k == 2,
            "type": type_up_to_reversal(rep.schlafli) == type_up_to_reversal(want_type),
        }
        problems += [f"n={n} {k} (type {rep.schlafli})" if k == "type" else f"n={n} {k}"
                     for k, v in checks.items() if not v]
    secs = time.perf_counter() - t
    ok = not problems and secs < 10
    report(3, ok, secs, "all clauses hold" if not problems else "failing: " + "; ".join(problems))
    assert ok


def test_criterion_04_wreath_degree10_unique(report):
    t = time.perf_counter()
    res = enumerate_in_group(wreath_c2_sym(5), rank_min=6, rank_max=6)
    secs = time.perf_counter() - t
    family = theorem1b_generators(10)
    matches = [are_isomorphic(family.gens, r.string.gens) for r in res]
    ok = res.complete and len(res) == 1 and all(matches) and secs < 600
    report(4, ok, secs, f"{len(res)} classes, types {[r.schlafli for r in res]}, "
                        f"family matches {sum(matches)}")
    assert res.complete and secs < 600
    assert len(res) == 1 and all(matches)


def test_criterion_05_wreath_degree12_parity(report):
    t = time.perf_counter()
    res = enumerate_string_cgroups(SearchSpec(degree=12, rank_min=6, scope=wreath_c2_sym(6),
                                              predicates={"transitive"}))
    secs = time.perf_counter() - t
    ranks = sorted({r.rank for r in res})
    cross = cross_polytope(6)
    has_cross = any(are_isomorphic(cross.gens, r.string.gens) for r in res)
    ok = res.complete and ranks == [6] and has_cross and secs < 30 * 60
    report(5, ok, secs, f"ranks found {ranks}, {len(res)} classes, cross-polytope present {has_cross}")
    assert ok


def test_criterion_06_table2(report):
    t = time.perf_counter()
    psl = enumerate_in_group(projective_group(5, "PSL"), rank_min=3)
    pgl = enumerate_in_group(projective_group(5, "PGL"), rank_min=3)
    s6 = enumerate_in_group(s6_on_partitions(), rank_min=5)
    secs = time.perf_counter() - t
    pgl3 = types(r for r in pgl if r.rank == 3)
    pgl4 = types(r for r in pgl if r.rank == 4)
    checks = [
        types(psl) == [(3, 5), (5, 5)],
        pgl3 == [(4, 5), (4, 6), (5, 6), (6, 6)],
        pgl4 == [(3, 3, 3)],
        {r.rank for r in pgl} == {3, 4},
        types(s6) == [(3, 3, 3, 3)],
        psl.complete and pgl.complete and s6.complete,
    ]
    ok = all(checks) and secs < 300
    report(6, ok, secs, f"A5 {types(psl)}; S5 rank 3 {pgl3}, rank 4 {pgl4}; S6 {types(s6)}")
    assert ok


def test_criterion_07_alt6(report):
    t = time.perf_counter()
    res = enumerate_in_group(alternating_group(6), rank_min=3, rank_max=5)
    secs = time.perf_counter() - t
    ok = res.complete and len(res) == 0 and secs < 300
    report(7, ok, secs, f"{len(res)} string C-groups generate Alt6")
    assert ok


def test_criterion_08_degree16(report):
    t = time.perf_counter()
    a7 = shipped_group("affine-2^4:A7")
    a8 = shipped_group("affine-2^4:A8")
    classes = sorted(a7.involution_classes(), key=lambda c: c[1])
    smallest, size = classes[0]
    cent = a7.centralizer_order(smallest)
    secs = time.perf_counter() - t
    ok = (a7.order() == 40320 and len(classes) == 2 and size == 15 and cent == 2688
          and cent < 2 * MIN_RANK6_ORDER and a8.order() == 322560 == maroti_order_bound(16)
          and secs < 120)
    report(8, ok, secs, f"|A7 group| {a7.order()}, class sizes {[c[1] for c in classes]}, "
                        f"centralizer {cent}, |A8 group| {a8.order()}")
    assert ok


def test_criterion_09_bounds_crossover(report):
    t = time.perf_counter()
    bad = [n for n in range(23, 2 ** 20 + 1) if not primitive_rank_bound(n) < -(-n // 2)]
    secs = time.perf_counter() - t
    ok = not bad and secs < 5
    report(9, ok, secs, f"{len(bad)} violations in 23..2^20")
    assert ok


def test_criterion_10_property_suites(report):
    t = time.perf_counter()
    failures = []
    for gens, n, elements in random_groups():
        G = PermGroup(gens, degree=n)
        if G.order() != len(elements):
            failures.append(f"order of {n}-point group")
    strings = [s for s in corpus() if s.rank <= 6]
    rng = random.Random(10)
    for s in strings:
        naive = check_intersection_property(s, method="naive").ok
        if check_intersection_property(s, method="sectional").ok != naive:
            failures.append(f"sectional vs naive on {s}")
        img = list(range(s.degree))
        rng.shuffle(img)
        a, b = verify(s), verify(s.conjugate(Permutation(img)))
        if (a.is_string_c_group, a.group_order, a.schlafli, a.transitive, a.primitive) != \
           (b.is_string_c_group, b.group_order, b.schlafli, b.transitive, b.primitive):
            failures.append(f"conjugation changed the report of {s}")
        d = dual(s)
        if dual(d).gens != s.gens or verify(d).schlafli != a.schlafli[::-1] or \
           verify(d).is_string_c_group != a.is_string_c_group:
            failures.append(f"dual laws on {s}")
    for spec in (SearchSpec(degree=6, rank_min=3, predicates={"transitive"}),
                 SearchSpec(degree=5, rank_min=2, dedupe="raw")):
        for rec in enumerate_string_cgroups(spec):
            rep = verify(rec.string, method="naive")
            if not rep.is_string_c_group or rep.group_order != rec.group_order:
                failures.append(f"unsound record {rec.string}")
    secs = time.perf_counter() - t
    ok = not failures
    report(10, ok, secs, f"{len(strings)} corpus strings, 50 random groups; "
                         f"{len(failures)} failures {failures[:3]}")
    assert ok
