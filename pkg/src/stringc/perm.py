"""Permutations of {1, ..., n}.

A :class:`Permutation` is a tuple of 0-based images, so ``p[i]`` is the image
of point ``i + 1`` minus one.  Everything that talks to the outside world
(cycle notation, :attr:`Permutation.images`) is 1-based.

Products act left to right: ``p * q`` means "apply p, then q".
"""

from __future__ import annotations

import math
import re
from typing import Iterable, NamedTuple, Sequence

DEFAULT_DEGREE_CAP = 64


class CycleParseError(ValueError):
    """Malformed cycle notation.  ``position`` is a 0-based character offset."""

    def __init__(self, message: str, position: int | None = None, point: int | None = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position
        self.point = point


class Permutation(tuple):
    __slots__ = ()

    def __new__(cls, images: Iterable[int] = ()):
        """Build from 0-based images, checking that they form a bijection."""
        t = tuple(images)
        if not t:
            raise ValueError("degree must be at least 1")
        if sorted(t) != list(range(len(t))):
            raise ValueError(f"not a permutation of 0..{len(t) - 1}: {t}")
        return tuple.__new__(cls, t)

    @classmethod
    def _trusted(cls, images: tuple) -> Permutation:
        return tuple.__new__(cls, images)

    @classmethod
    def from_images(cls, images: Sequence[int]) -> Permutation:
        """Build from 1-based images: ``images[i]`` is the image of point ``i + 1``."""
        return cls(x - 1 for x in images)

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        if degree < 1:
            raise ValueError("degree must be at least 1")
        return cls._trusted(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> Permutation:
        """Build from disjoint 1-based cycles."""
        img = list(range(degree))
        seen = set()
        for cyc in cycles:
            for a in cyc:
                if not 1 <= a <= degree:
                    raise ValueError(f"point {a} outside 1..{degree}")
                if a in seen:
                    raise ValueError(f"point {a} repeated")
                seen.add(a)
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                img[a - 1] = b - 1
        return cls._trusted(tuple(img))

    @property
    def degree(self) -> int:
        return len(self)

    @property
    def images(self) -> tuple[int, ...]:
        return tuple(x + 1 for x in self)

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, 1-based, each starting at its smallest point."""
        return [tuple(x + 1 for x in c) for c in _cycles0(self) if len(c) > 1]

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self))

    def order(self) -> int:
        return element_order(self)

    def __mul__(self, other):
        if isinstance(other, tuple):
            return compose(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, tuple):
            return compose(other, self)
        return NotImplemented

    def __invert__(self) -> Permutation:
        return inverse(self)

    def __pow__(self, k: int) -> Permutation:
        if k < 0:
            return inverse(self) ** (-k)
        result = tuple(range(len(self)))
        base = tuple(self)
        while k:
            if k & 1:
                result = _mul(result, base)
            base = _mul(base, base)
            k >>= 1
        return Permutation._trusted(result)

    def conjugate(self, g: Sequence[int]) -> Permutation:
        """``g^-1 * self * g``: relabel every point ``a`` as ``g(a)``."""
        return Permutation._trusted(_conj(self, g))

    def __str__(self) -> str:
        return format_cycles(self)

    def __repr__(self) -> str:
        return f"Permutation.parse({str(self)!r}, {len(self)})"

    @classmethod
    def parse(cls, text: str, degree: int) -> Permutation:
        return parse_cycles(text, degree)

    def __reduce__(self):
        return (Permutation._trusted, (tuple(self),))


# -- raw tuple helpers (used in hot loops elsewhere) -------------------------

def _mul(p: tuple, q: tuple) -> tuple:
    return tuple(map(q.__getitem__, p))


def _inv(p: tuple) -> tuple:
    r = [0] * len(p)
    for i, x in enumerate(p):
        r[x] = i
    return tuple(r)


def _conj(x: tuple, g: tuple) -> tuple:
    r = [0] * len(x)
    for a, b in enumerate(x):
        r[g[a]] = g[b]
    return tuple(r)


def _cycles0(p: Sequence[int]) -> list[list[int]]:
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if seen[i]:
            continue
        c = []
        j = i
        while not seen[j]:
            seen[j] = True
            c.append(j)
            j = p[j]
        out.append(c)
    return out


def _is_involution(p: tuple) -> bool:
    moved = False
    for i, x in enumerate(p):
        if x != i:
            if p[x] != i:
                return False
            moved = True
    return moved


# -- public operations -------------------------------------------------------

def compose(p: Sequence[int], q: Sequence[int]) -> Permutation:
    """Apply ``p`` then ``q``."""
    if len(p) != len(q):
        raise ValueError(f"degree mismatch: {len(p)} vs {len(q)}")
    return Permutation._trusted(_mul(tuple(p), tuple(q)))


def inverse(p: Sequence[int]) -> Permutation:
    return Permutation._trusted(_inv(p))


def element_order(p: Sequence[int]) -> int:
    return math.lcm(*(len(c) for c in _cycles0(p)))


class Classification(NamedTuple):
    cycle_type: tuple[int, ...]
    parity: str
    is_involution: bool


def classify(p: Sequence[int]) -> Classification:
    """Cycle type (descending, fixed points included), parity, involution flag.

    The identity has order 1 and is not an involution.
    """
    cycles = _cycles0(p)
    ctype = tuple(sorted((len(c) for c in cycles), reverse=True))
    parity = "odd" if (len(p) - len(cycles)) % 2 else "even"
    return Classification(ctype, parity, _is_involution(tuple(p)))


def format_cycles(p: Sequence[int]) -> str:
    cyc = [c for c in _cycles0(p) if len(c) > 1]
    if not cyc:
        return "()"
    return "".join("(" + ",".join(str(x + 1) for x in c) + ")" for c in cyc)


_TOKEN = re.compile(r"\s*(?:(\()|(\))|(,)|(\d+)|(\S))")


def parse_cycles(text: str, degree: int, degree_cap: int = DEFAULT_DEGREE_CAP) -> Permutation:
    """Parse a product of disjoint cycles such as ``"(1,4)(2,5)(3,6)"``.

    Empty text and ``"()"`` both give the identity.  Cycles of length one are
    rejected, as are repeated points and points above ``degree``.
    """
    if not 1 <= degree <= degree_cap:
        raise ValueError(f"degree {degree} outside 1..{degree_cap}")
    img = list(range(degree))
    if text.strip() == "()":
        return Permutation._trusted(tuple(img))
    seen: set[int] = set()
    pos = 0
    n = len(text)
    cycle: list[int] | None = None
    expect_point = False
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        start = m.start(m.lastindex)
        pos = m.end()
        kind = m.lastindex
        if kind == 5:
            raise CycleParseError(f"unexpected character {m.group(5)!r}", start)
        if kind == 1:
            if cycle is not None:
                raise CycleParseError("nested '('", start)
            cycle = []
            expect_point = True
        elif kind == 2:
            if cycle is None:
                raise CycleParseError("unmatched ')'", start)
            if expect_point or len(cycle) < 2:
                raise CycleParseError("cycle needs at least two points", start)
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                img[a] = b
            cycle = None
        elif kind == 3:
            if cycle is None or expect_point:
                raise CycleParseError("unexpected ','", start)
            expect_point = True
        else:
            if cycle is None or not expect_point:
                raise CycleParseError("unexpected number", start)
            a = int(m.group(4))
            if not 1 <= a <= degree:
                raise CycleParseError(f"point {a} exceeds degree {degree}", start, point=a)
            if a in seen:
                raise CycleParseError(f"point {a} repeated", start, point=a)
            seen.add(a)
            cycle.append(a - 1)
            expect_point = False
    if cycle is not None:
        raise CycleParseError("unterminated cycle", n)
    return Permutation._trusted(tuple(img))
