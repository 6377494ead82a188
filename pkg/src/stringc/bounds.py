"""Closed-form order and rank bounds for permutation groups and string C-groups.

All arithmetic is exact integer arithmetic.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import asdict, dataclass
from typing import Iterable

# Smallest order of a string C-group of rank 6, taken from the published
# census of small string C-groups rather than recomputed here.
MIN_RANK6_ORDER = 1728

# Below this rank the exponential order lower bound is not available.
CONDER_MIN_RANK = 9


def _log2_floor(n: int) -> int:
    return n.bit_length() - 1


def maroti_order_bound(n: int) -> int:
    """n * prod_{i=0}^{L-1} (n - 2^i) with L = floor(log2 n): an upper bound on
    the order of a primitive group of degree n other than Sym_n, Alt_n and
    the groups of product type."""
    if n < 2:
        raise ValueError("degree must be at least 2")
    result = n
    for i in range(_log2_floor(n)):
        result *= n - (1 << i)
    return result


def case_a_decompositions(n: int) -> list[tuple[int, int, int]]:
    """All (m, k, l) with C(m, k)^l == n, 1 <= k <= m/2 and l >= 1, except
    (n, 1, 1).  Sorted by l, then by decreasing m."""
    if n < 2:
        raise ValueError("degree must be at least 2")
    out = []
    for l in range(1, _log2_floor(n) + 1):
        base = round(n ** (1.0 / l))
        # the float root can be off by one either way
        root = next((b for b in (base - 1, base, base + 1) if b >= 2 and b ** l == n), None)
        if root is None:
            continue
        for m in range(2, root + 1):
            for k in range(1, m // 2 + 1):
                c = math.comb(m, k)
                if c > root:
                    break
                if c == root and (m, k, l) != (n, 1, 1):
                    out.append((m, k, l))
    out.sort(key=lambda t: (t[2], -t[0], t[1]))
    return out


def conder_min_order(d: int) -> int | None:
    """Lower bound 2^(2d-1) on the order of a string C-group of rank d >= 9;
    ``None`` when d is too small for the bound to apply."""
    if d < CONDER_MIN_RANK:
        return None
    return 2 ** (2 * d - 1)


def primitive_rank_floor(n: int) -> int:
    """floor((L(L+1) + 1) / 2) with L = floor(log2 n)."""
    L = _log2_floor(n)
    return (L * (L + 1) + 1) // 2


def primitive_rank_continuous(n: int) -> float:
    """The same expression with the real logarithm, for comparison."""
    x = math.log2(n)
    return (x * (x + 1) + 1) / 2


def primitive_rank_bound(n: int) -> int:
    """Largest rank a string C-group can have when it is a primitive group of
    degree n other than Sym_n and Alt_n.  Values up to 8 cannot be excluded
    this way, so the result is never below 8."""
    if n < 4:
        raise ValueError("degree must be at least 4")
    return max(primitive_rank_floor(n), CONDER_MIN_RANK - 1)


@dataclass(frozen=True)
class ImprimitiveParams:
    """A transitive imprimitive action of degree n with m blocks of size k."""

    n: int
    k: int
    m: int

    def __post_init__(self):
        if self.k < 2 or self.m < 2:
            raise ValueError("blocks need size k >= 2 and there must be m >= 2 of them")
        if self.k * self.m != self.n:
            raise ValueError(f"k*m = {self.k * self.m} differs from n = {self.n}")

    @classmethod
    def all_for(cls, n: int) -> list[ImprimitiveParams]:
        return [cls(n, k, n // k) for k in range(2, n // 2 + 1) if n % k == 0]


def imprimitive_rank_bound(params: ImprimitiveParams) -> int:
    """Rank bound for a string C-group acting transitively with the given
    block system, valid for n >= 10."""
    n, k, m = params.n, params.k, params.m
    if n < 10:
        raise ValueError("the imprimitive rank bound needs n >= 10")
    if k == 2:
        return n // 2 + 1 if n % 4 == 2 else n // 2
    if m == 2:
        return n // 2
    return k + m - 1


def whiston_cap(n: int) -> int:
    """Largest independent set of permutations of n points."""
    if n < 2:
        raise ValueError("degree must be at least 2")
    return n - 1


@dataclass(frozen=True)
class BoundReport:
    n: int
    maroti_order_bound: int
    case_a_decompositions: list
    conder_applicable: bool
    rank_bound: int
    rank_bound_continuous: float
    half_degree: int
    comparison: str          # "below", "equal" or "above" ceil(n/2)

    def as_dict(self) -> dict:
        d = asdict(self)
        d["case_a_decompositions"] = [list(t) for t in self.case_a_decompositions]
        return d


def bound_report(n: int) -> BoundReport:
    floor_value = primitive_rank_floor(n)
    rank = primitive_rank_bound(n)
    half = -(-n // 2)
    comparison = "below" if rank < half else ("equal" if rank == half else "above")
    return BoundReport(
        n=n,
        maroti_order_bound=maroti_order_bound(n),
        case_a_decompositions=case_a_decompositions(n),
        conder_applicable=floor_value >= CONDER_MIN_RANK,
        rank_bound=rank,
        rank_bound_continuous=primitive_rank_continuous(n),
        half_degree=half,
        comparison=comparison,
    )


SWEEP_FIELDS = ("n", "rank_bound", "rank_bound_continuous", "half_degree", "comparison",
                "conder_applicable")


def sweep_rows(lo: int, hi: int) -> Iterable[dict]:
    """Rank-bound rows for lo <= n <= hi (the order bound is left out: it
    grows to hundreds of digits)."""
    for n in range(lo, hi + 1):
        floor_value = primitive_rank_floor(n)
        rank = max(floor_value, CONDER_MIN_RANK - 1)
        half = -(-n // 2)
        yield {
            "n": n,
            "rank_bound": rank,
            "rank_bound_continuous": f"{primitive_rank_continuous(n):.4f}",
            "half_degree": half,
            "comparison": "below" if rank < half else ("equal" if rank == half else "above"),
            "conder_applicable": floor_value >= CONDER_MIN_RANK,
        }


def sweep_csv(lo: int, hi: int) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=SWEEP_FIELDS, lineterminator="\n")
    w.writeheader()
    w.writerows(sweep_rows(lo, hi))
    return buf.getvalue()
