import random

import pytest

from stringc.canon import (are_equivalent, are_isomorphic, canonical_certificate, canonical_key, cayley_form,
                           find_conjugator, generator_map_extends, isomorphism_key)
from stringc.cgroup import dual
from stringc.constructions import coxeter_symmetric, cross_polytope, projective_group, theorem1b_generators
from stringc.enumeration import SearchSpec, enumerate_in_group, enumerate_string_cgroups
from stringc.group import PermGroup
from stringc.perm import Permutation, _conj

from conftest import corpus, random_sggis


def shuffled(n, seed):
    img = list(range(n))
    random.Random(seed).shuffle(img)
    return Permutation(img)


def test_equivalence_examples():
    s = theorem1b_generators(6)
    assert are_equivalent(s.gens, dual(s).gens)
    assert not are_equivalent(s.gens, dual(s).gens, duality=False)
    cycle = Permutation([(a + 1) % 6 for a in range(6)])
    assert are_equivalent(s.gens, s.conjugate(cycle).gens, duality=False)


def test_table_rows_48_are_distinct():
    res = enumerate_string_cgroups(SearchSpec(degree=6, rank_min=4,
                                              predicates={"transitive", "imprimitive", "proper"}))
    order48 = [r for r in res if r.group_order == 48]
    for i, a in enumerate(order48):
        for b in order48[i + 1:]:
            assert not are_equivalent(a.string.gens, b.string.gens)
            assert not are_isomorphic(a.string.gens, b.string.gens)


@pytest.mark.parametrize("idx", range(30))
def test_key_is_conjugation_and_reversal_invariant(idx):
    s = corpus()[idx]
    g = shuffled(s.degree, idx)
    t = s.conjugate(g)
    order = s.group().order()
    assert canonical_key(s.gens, order) == canonical_key(t.gens, order)
    assert canonical_key(s.gens, order) == canonical_key(dual(t).gens, order)
    c = find_conjugator(s.gens, t.gens)
    assert c is not None
    assert all(_conj(x, c) == tuple(y) for x, y in zip(s.gens, t.gens))


def test_certificate_route_agrees_with_backtracking():
    items = random_sggis(11, 80, degrees=(4, 5), ranks=(2, 3))
    for i, a in enumerate(items):
        for b in items[i + 1:]:
            if a.degree != b.degree or a.rank != b.rank:
                continue
            same_cert = canonical_certificate(a.gens) == canonical_certificate(b.gens)
            assert same_cert == are_equivalent(a.gens, b.gens)


def test_isomorphism_routes_agree():
    raw = enumerate_string_cgroups(SearchSpec(degree=6, rank_min=3, rank_max=3, predicates={"transitive"},
                                              dedupe="raw"))
    recs = list(raw)
    assert len(recs) > 20
    rng = random.Random(3)
    pairs = [(rng.choice(recs), rng.choice(recs)) for _ in range(300)]
    for a, b in pairs:
        same_key = isomorphism_key(a.string.gens) == isomorphism_key(b.string.gens)
        assert same_key == are_isomorphic(a.string.gens, b.string.gens)


def test_isomorphism_across_degrees():
    simplex = enumerate_in_group(projective_group(5, "PGL"), rank_min=4)[0].string
    cox = coxeter_symmetric(5)
    assert simplex.degree == 6 and cox.degree == 5
    assert generator_map_extends(simplex.gens, cox.gens)
    assert isomorphism_key(simplex.gens) == isomorphism_key(cox.gens)
    assert not generator_map_extends(cox.gens, cross_polytope(4).gens)


def test_conjugate_strings_are_isomorphic():
    s = cross_polytope(4)
    t = s.conjugate(shuffled(8, 5))
    assert cayley_form(s.gens) == cayley_form(t.gens)
    assert are_isomorphic(s.gens, dual(t).gens)


def test_cayley_form_size():
    s = cross_polytope(3)
    form = cayley_form(s.gens)
    assert len(form) == 3 and len(form[0]) == 48
    assert all(sorted(row) == list(range(48)) for row in form)


def test_degree_mismatch():
    with pytest.raises(ValueError):
        are_equivalent(coxeter_symmetric(4).gens, coxeter_symmetric(5).gens)
