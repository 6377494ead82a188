import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stringc.perm import (CycleParseError, Permutation, classify, compose, element_order, format_cycles,
                          inverse, parse_cycles)


def perms(max_degree=12):
    return st.integers(1, max_degree).flatmap(
        lambda n: st.permutations(list(range(n))).map(Permutation))


def same_degree_pair(max_degree=12):
    return st.integers(1, max_degree).flatmap(lambda n: st.tuples(
        st.permutations(list(range(n))).map(Permutation),
        st.permutations(list(range(n))).map(Permutation),
        st.permutations(list(range(n))).map(Permutation)))


def test_parse_examples():
    assert parse_cycles("(1,4)(2,5)(3,6)", 6).images == (4, 5, 6, 1, 2, 3)
    assert parse_cycles("", 5) == Permutation.identity(5)
    assert parse_cycles("()", 5) == Permutation.identity(5)
    assert parse_cycles("(1,2,3)", 4).images == (2, 3, 1, 4)
    assert parse_cycles(" ( 1 , 2 ) ( 3,4 ) ", 4).images == (2, 1, 4, 3)


@pytest.mark.parametrize("text, degree, fragment", [
    ("(1,2)(2,3)", 3, "repeated"),
    ("(1,2,1)", 3, "repeated"),
    ("(1,7)", 6, "exceeds"),
    ("(1,2", 4, None),
    ("(1,2)x", 4, None),
    ("(1)", 4, None),
    ("(0,1)", 4, None),
])
def test_parse_errors(text, degree, fragment):
    with pytest.raises(CycleParseError) as exc:
        parse_cycles(text, degree)
    if fragment:
        assert fragment in str(exc.value)
    assert exc.value.position is not None


def test_compose_examples():
    assert compose(parse_cycles("(1,2)", 3), parse_cycles("(2,3)", 3)) == parse_cycles("(1,3,2)", 3)
    r0, r1 = parse_cycles("(1,4)(2,5)(3,6)", 6), parse_cycles("(2,5)(3,6)", 6)
    assert compose(r0, r1) == parse_cycles("(1,4)", 6)
    with pytest.raises(ValueError):
        compose(Permutation.identity(3), Permutation.identity(4))


def test_order_and_classify_examples():
    assert element_order(parse_cycles("(1,2,3)(4,5)", 5)) == 6
    assert element_order(Permutation.identity(4)) == 1
    assert element_order(parse_cycles("(1,4)(2,5)(3,6)", 6)) == 2
    c = classify(parse_cycles("(1,4)(2,5)(3,6)", 6))
    assert (c.cycle_type, c.parity, c.is_involution) == ((2, 2, 2), "odd", True)
    c = classify(parse_cycles("(1,2,3)", 3))
    assert (c.cycle_type, c.parity, c.is_involution) == ((3,), "even", False)
    c = classify(parse_cycles("(2,5)(3,6)", 6))
    assert (c.cycle_type, c.parity, c.is_involution) == ((2, 2, 1, 1), "even", True)
    assert not classify(Permutation.identity(3)).is_involution


def test_identity_serializes_as_empty_cycle():
    assert format_cycles(Permutation.identity(3)) == "()"


@given(perms())
def test_round_trip(p):
    assert parse_cycles(format_cycles(p), p.degree) == p


@given(same_degree_pair())
def test_group_laws(triple):
    p, q, r = triple
    e = Permutation.identity(p.degree)
    assert compose(compose(p, q), r) == compose(p, compose(q, r))
    assert compose(p, e) == p == compose(e, p)
    assert compose(p, inverse(p)) == e == compose(inverse(p), p)


@given(same_degree_pair())
def test_parity_is_homomorphism(triple):
    p, q, _ = triple
    odd = lambda x: classify(x).parity == "odd"
    assert odd(compose(p, q)) == (odd(p) != odd(q))


@given(perms())
def test_order_is_least_power(p):
    k = element_order(p)
    assert (p ** k).is_identity()
    assert all(not (p ** j).is_identity() for j in range(1, k))


def test_compose_is_left_to_right():
    p, q = parse_cycles("(1,2)", 3), parse_cycles("(2,3)", 3)
    for a in range(3):
        assert compose(p, q)[a] == q[p[a]]


def test_conjugate_relabels_cycles():
    x = parse_cycles("(1,2,3)", 4)
    g = parse_cycles("(1,4)", 4)
    assert x.conjugate(g) == inverse(g) * x * g == parse_cycles("(4,2,3)", 4)


@settings(max_examples=50)
@given(perms(8))
def test_cycles_partition_moved_points(p):
    moved = [a for c in p.cycles() for a in c]
    assert len(moved) == len(set(moved)) == sum(1 for a in range(p.degree) if p[a] != a)
