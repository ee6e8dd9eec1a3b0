"""Brute-force reference computations, written without the library's algorithms.

Everything here works from raw independence oracles (``m.indep``) by
exhaustive enumeration, so it can referee the greedy, augmenting-path,
simplex and search code paths in the package.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations


def subsets(mask: int):
    """All submasks of ``mask``, including 0 and ``mask``."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def bits(mask: int) -> list[int]:
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


def rank(indep, mask: int) -> int:
    """Largest independent submask, found by scanning every submask."""
    return max(s.bit_count() for s in subsets(mask) if indep(s))


def rank_table(indep, n: int) -> list[int]:
    return [rank(indep, m) for m in range(1 << n)]


def zeta(indep, n: int) -> Fraction:
    best = Fraction(0)
    for mask in range(1, 1 << n):
        r = rank(indep, mask)
        best = max(best, Fraction(mask.bit_count(), r))
    return best


def family(indep, n: int) -> list[int]:
    return [m for m in range(1 << n) if indep(m)]


def max_common(d, marked: int, g: int) -> int:
    """Max ``|S & marked|`` over size-``g`` common independent S, or -1."""
    best = -1
    for combo in combinations(range(d.n), g):
        s = sum(1 << x for x in combo)
        if d.P.indep(s) and d.Q.indep(s):
            best = max(best, (s & marked).bit_count())
    return best


def max_common_size(d) -> int:
    return max(m.bit_count() for m in range(1 << d.n) if d.P.indep(m) and d.Q.indep(m))


def cover_number(indep, n: int) -> int:
    """Fewest independent sets covering ``{0..n-1}``, by iterative deepening over maximal sets."""
    full = (1 << n) - 1
    sets = family(indep, n)
    maximal = [s for s in sets if not any(s != t and s & t == s for t in sets)]

    def fits(covered: int, left: int) -> bool:
        if covered == full:
            return True
        if not left:
            return False
        rest = full & ~covered
        low = rest & -rest
        return any(fits(covered | m, left - 1) for m in maximal if m & low)

    k = 0
    while not fits(0, k):
        k += 1
    return k


def lp_cover_float(n: int, columns: list[int]) -> float:
    """Covering LP optimum by an external floating-point solver."""
    from scipy.optimize import linprog

    a = [[-(c >> v & 1) for c in columns] for v in range(n)]
    res = linprog([1] * len(columns), A_ub=a, b_ub=[-1] * n, bounds=(0, None), method="highs")
    assert res.status == 0, res.message
    return res.fun


def close_to_fraction(x: float, q: Fraction) -> bool:
    return math.isclose(x, float(q), rel_tol=1e-9, abs_tol=1e-9)


def set_partitions(n: int, max_blocks: int):
    """Every partition of ``range(n)`` into at most ``max_blocks`` nonempty blocks."""
    labels = [0] * n

    def go(i: int, used: int):
        if i == n:
            blocks = [[] for _ in range(used)]
            for x, b in enumerate(labels):
                blocks[b].append(x)
            yield blocks
            return
        for b in range(min(used + 1, max_blocks)):
            labels[i] = b
            yield from go(i + 1, max(used, b + 1))

    if n == 0:
        yield []
        return
    yield from go(0, 0)
