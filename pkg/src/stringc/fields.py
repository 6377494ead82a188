"""The handful of finite fields needed for projective lines: GF(p) for p in
{5, 7} and GF(4), GF(8), GF(9) as lookup tables.

Elements are integers 0..q-1.  For q = p^e an element encodes the
coefficient vector of a polynomial in x of degree < e, base p, constant term
first (so 1 is 1 and x is p).
"""

from __future__ import annotations

from functools import lru_cache

# q -> (p, e, coefficients of the monic modulus below the leading term)
_MODULI = {
    4: (2, 2, (1, 1)),      # x^2 + x + 1
    8: (2, 3, (1, 1, 0)),   # x^3 + x + 1
    9: (3, 2, (1, 0)),      # x^2 + 1
}


class SmallField:
    def __init__(self, q: int):
        if q in (2, 3, 5, 7):
            p, e, mod = q, 1, None
        elif q in _MODULI:
            p, e, mod = _MODULI[q]
        else:
            raise ValueError(f"GF({q}) not supported")
        self.q, self.p, self.e = q, p, e
        vecs = [self._vec(a) for a in range(q)]
        self.add = [[self._enc([(x + y) % p for x, y in zip(vecs[a], vecs[b])]) for b in range(q)]
                    for a in range(q)]
        self.mul = [[self._enc(self._polymul(vecs[a], vecs[b], mod)) for b in range(q)]
                    for a in range(q)]
        self.neg = [self._enc([(-x) % p for x in vecs[a]]) for a in range(q)]
        self.inv = [None] + [next(b for b in range(1, q) if self.mul[a][b] == 1) for a in range(1, q)]
        self.primitive = next(a for a in range(2 if q > 2 else 1, q) if self._order(a) == q - 1)

    def _vec(self, a: int) -> list[int]:
        out = []
        for _ in range(self.e):
            out.append(a % self.p)
            a //= self.p
        return out

    def _enc(self, v) -> int:
        return sum(c * self.p ** i for i, c in enumerate(v))

    def _polymul(self, u, v, mod):
        p, e = self.p, self.e
        prod = [0] * (2 * e - 1)
        for i, a in enumerate(u):
            for j, b in enumerate(v):
                prod[i + j] = (prod[i + j] + a * b) % p
        # reduce using x^e = -(mod[0] + mod[1] x + ...)
        for k in range(len(prod) - 1, e - 1, -1):
            c = prod[k]
            if c:
                prod[k] = 0
                for i, m in enumerate(mod):
                    prod[k - e + i] = (prod[k - e + i] - c * m) % p
        return prod[:e]

    def _order(self, a: int) -> int:
        x, k = a, 1
        while x != 1:
            x = self.mul[x][a]
            k += 1
        return k

    def power(self, a: int, k: int) -> int:
        r = 1
        for _ in range(k):
            r = self.mul[r][a]
        return r

    def frobenius(self, a: int) -> int:
        return self.power(a, self.p)


@lru_cache(maxsize=None)
def field(q: int) -> SmallField:
    return SmallField(q)
