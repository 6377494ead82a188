import random

import pytest

from stringc.cgroup import InvolutionString, check_string_property
from stringc.constructions import coxeter_symmetric, cross_polytope, intransitive_product, theorem1b_generators
from stringc.enumeration import sym_involutions
from stringc.perm import Permutation, _mul, parse_cycles

CLOSURE_CAP = 10**4


def closure(gens, n, cap=CLOSURE_CAP):
    """All elements by breadth-first closure, or None past ``cap``."""
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = _mul(x, tuple(g))
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > cap:
                        return None
        frontier = nxt
    return seen


def random_groups(count=50, seed=7):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(2, 8)
        k = rng.randint(1, 3)
        gens = []
        for _ in range(k):
            img = list(range(n))
            rng.shuffle(img)
            gens.append(Permutation(img))
        elements = closure(gens, n)
        if elements is not None:
            out.append((gens, n, elements))
    return out


KLEIN = ("(1,2)(3,4)", "(1,3)(2,4)", "(1,4)(2,3)")


def random_sggis(seed: int, count: int, degrees=(4, 5, 6, 7), ranks=(2, 3, 4)) -> list[InvolutionString]:
    """Random strings of distinct involutions with the string property."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.choice(degrees)
        invs = sym_involutions(n)
        d = rng.choice(ranks)
        gens = []
        for _ in range(200):
            if len(gens) == d:
                break
            x = rng.choice(invs)
            if x in gens:
                continue
            if all(tuple(x[g[a]] for a in range(n)) == tuple(g[x[a]] for a in range(n))
                   for g in gens[:-1]):
                gens.append(x)
        if len(gens) == d:
            s = InvolutionString(tuple(Permutation(g) for g in gens))
            assert check_string_property(s)
            out.append(s)
    return out


def corpus() -> list[InvolutionString]:
    items = [coxeter_symmetric(n) for n in range(3, 8)]
    items += [cross_polytope(m) for m in range(2, 6)]
    items += [theorem1b_generators(6), theorem1b_generators(10)]
    items += [intransitive_product(p) for p in ((3, 3), (2, 2), (4, 3), (2, 3, 2))]
    items.append(InvolutionString.parse(KLEIN, 4))
    items += random_sggis(1, 60)
    return items


@pytest.fixture(scope="session")
def string_corpus():
    return corpus()


def P(text: str, n: int) -> Permutation:
    return parse_cycles(text, n)
