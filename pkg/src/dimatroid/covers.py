"""Density, edge-cover numbers and fractional covers.

All values are exact: densities and fractional totals are :class:`Fraction`.
A matroid with a loop has no cover at all, so every routine here rejects
loops up front.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Union

from .errors import InvariantViolation, LoopError, PreconditionError, SizeCapExceeded
from .intersection import (
    Dimatroid,
    common_independent_masks,
    max_common_independent_mask,
    maximal_common_independent_masks,
)
from .lp import CoveringLP, solve_covering, OPTIMAL
from .matroid import DirectSumMatroid, Matroid, PartitionMatroid, TruncatedMatroid
from .sets import ElementSet, iter_bits, popcount

ZETA_CAP = 22
BETA_EXACT_CAP = 18
FRACTIONAL_CAP = 14


@dataclass(frozen=True)
class FractionalCover:
    """Nonnegative weights on edges of a complex, covering every vertex at least once."""

    n: int
    entries: tuple[tuple[ElementSet, Fraction], ...]

    @property
    def total(self) -> Fraction:
        return sum((w for _, w in self.entries), Fraction(0))

    def support(self) -> list[ElementSet]:
        return [e for e, w in self.entries if w > 0]

    def coverage(self) -> list[Fraction]:
        cov = [Fraction(0)] * self.n
        for e, w in self.entries:
            for v in e:
                cov[v] += w
        return cov

    def is_cover(self) -> bool:
        return all(w >= 0 for _, w in self.entries) and all(c >= 1 for c in self.coverage())


@dataclass(frozen=True)
class CoverReport:
    """A cover number together with the witness that certifies it."""

    value: Union[int, Fraction]
    witness: Union[tuple[ElementSet, ...], FractionalCover]
    method: str


def require_loopless(*ms: Matroid) -> None:
    for m in ms:
        loops = m.loops()
        if loops:
            raise LoopError(f"matroid has loops {loops}; no cover exists")


def zeta(m: Matroid, max_n: int = ZETA_CAP) -> Fraction:
    """Density: the maximum of ``|S| / rank(S)`` over nonempty ``S``, by full sweep.

    >>> from dimatroid.matroid import UniformMatroid
    >>> zeta(UniformMatroid(6, 4))
    Fraction(3, 2)
    """
    if m.n == 0:
        raise PreconditionError("density is undefined on an empty ground set")
    if m.n > max_n:
        raise SizeCapExceeded(f"exhaustive density needs n <= {max_n}, got {m.n}")
    if "zeta" in m.cache:
        return m.cache["zeta"]
    require_loopless(m)
    table = m.rank_table(max_n)
    best_num, best_den = 1, 1
    for mask in range(1, 1 << m.n):
        size, r = popcount(mask), table[mask]
        if size * best_den > best_num * r:
            best_num, best_den = size, r
    m.cache["zeta"] = Fraction(best_num, best_den)
    return m.cache["zeta"]


def complex_zeta(d: Dimatroid, max_n: int = ZETA_CAP) -> Fraction:
    """Density of the intersection complex itself (not of its two matroids)."""
    if d.n == 0:
        raise PreconditionError("density is undefined on an empty ground set")
    if d.n > max_n:
        raise SizeCapExceeded(f"exhaustive density needs n <= {max_n}, got {d.n}")
    require_loopless(d.P, d.Q)
    table = [0] * (1 << d.n)
    best = Fraction(1)
    for mask in range(1, 1 << d.n):
        size = popcount(mask)
        r = 0
        m = mask
        while m:
            low = m & -m
            r = max(r, table[mask ^ low])
            m ^= low
        if r == size - 1 and d.indep(mask):
            r = size
        table[mask] = r
        best = max(best, Fraction(size, r))
    return best


def _greedy_partition(indep, n: int, ground: int) -> list[int]:
    """Repeatedly peel off a greedy maximal independent set of the uncovered elements."""
    left = ground
    parts = []
    while left:
        cur = 0
        for x in iter_bits(left):
            if indep(cur | 1 << x):
                cur |= 1 << x
        if not cur:
            raise LoopError("an element is dependent on its own")
        parts.append(cur)
        left &= ~cur
    return parts


def _partition_into(m: Matroid, k: int) -> list[int] | None:
    """Split the ground set into ``k`` independent sets, or report that none exists.

    ``k`` copies of ``m`` side by side, intersected with the partition matroid
    that takes each element at most once: a common independent set of size
    ``n`` is exactly such a split.
    """
    n = m.n
    copies = DirectSumMatroid([m] * k)
    once = PartitionMatroid([[j * n + v for j in range(k)] for v in range(n)], 1)
    best = max_common_independent_mask(Dimatroid(copies, once))
    if popcount(best) < n:
        return None
    return [(best >> (j * n)) & m.ground_mask for j in range(k)]


def beta_matroid(m: Matroid) -> CoverReport:
    """Edge-cover number of a matroid, ``ceil(zeta)``, with a cover of that size."""
    require_loopless(m)
    if m.n == 0:
        return CoverReport(0, (), "empty")
    k = math.ceil(zeta(m))
    parts = _greedy_partition(m.indep, m.n, m.ground_mask)
    method = "greedy"
    if len(parts) > k:
        parts = _partition_into(m, k)
        method = "matroid-partition"
        if parts is None:
            raise InvariantViolation("Edmonds covering theorem",
                                     f"ground set does not split into {k} independent sets")
    witness = tuple(ElementSet.from_mask(m.n, p) for p in parts)
    _check_cover(m.n, m.indep, witness, k)
    return CoverReport(k, witness, method)


def _check_cover(n: int, indep, witness, k: int) -> None:
    covered = 0
    for e in witness:
        if not indep(e.mask):
            raise InvariantViolation("cover witness", f"{e} is not independent")
        covered |= e.mask
    if covered != (1 << n) - 1 or len(witness) != k:
        raise InvariantViolation("cover witness", "witness does not certify the value")


def _search_cover(d: Dimatroid, k: int, cap: int) -> list[int] | None:
    """Assign elements to ``k`` colour classes, each kept common independent.

    Classes are opened in order, so each split is visited once up to relabelling.
    ``cap`` (the largest common independent size) bounds how much the open
    and unopened classes can still absorb.
    """
    n = d.n
    # Elements with the fewest compatible partners first.
    order = sorted(range(n), key=lambda x: (
        sum(d.indep(1 << x | 1 << y) for y in range(n) if y != x), x))
    classes = [0] * k
    sizes = [0] * k

    def dfs(i: int, opened: int) -> bool:
        if i == n:
            return True
        room = sum(cap - sizes[j] for j in range(opened)) + (k - opened) * cap
        if room < n - i:
            return False
        bit = 1 << order[i]
        for j in range(min(opened + 1, k)):
            m = classes[j] | bit
            if d.indep(m):
                classes[j] = m
                sizes[j] += 1
                if dfs(i + 1, max(opened, j + 1)):
                    return True
                classes[j] ^= bit
                sizes[j] -= 1
        return False

    return list(classes) if dfs(0, 0) else None


def beta_exact(d: Dimatroid, max_n: int = BETA_EXACT_CAP) -> CoverReport:
    """Minimum number of common independent sets covering the ground set.

    The lower bound is ``ceil(max(zeta(P), zeta(Q)))``; the upper bound comes
    from peeling maximum common independent sets.  Each ``k`` in between is
    decided by exhaustive colour-class search.
    """
    if d.n > max_n:
        raise SizeCapExceeded(f"exact cover search needs n <= {max_n}, got {d.n}")
    require_loopless(d.P, d.Q)
    if d.n == 0:
        return CoverReport(0, (), "empty")
    lower = math.ceil(max(zeta(d.P), zeta(d.Q)))
    upper_parts = []
    left = d.ground_mask
    while left:
        sub = Dimatroid(_Masked(d.P, left), _Masked(d.Q, left))
        best = max_common_independent_mask(sub)
        upper_parts.append(best)
        left &= ~best
    cap = popcount(max_common_independent_mask(d))
    parts, method = upper_parts, "greedy-max-intersection"
    for k in range(lower, len(upper_parts)):
        found = _search_cover(d, k, cap)
        if found is not None:
            parts, method = found, "branch-and-bound"
            break
    witness = tuple(ElementSet.from_mask(d.n, p) for p in parts)
    _check_cover(d.n, d.indep, witness, len(parts))
    return CoverReport(len(parts), witness, method)


class _Masked(Matroid):
    """Elements outside ``allowed`` are treated as loops."""

    def __init__(self, inner: Matroid, allowed: int):
        super().__init__(inner.n)
        self.inner = inner
        self.allowed = allowed

    def _indep(self, mask: int) -> bool:
        return mask & ~self.allowed == 0 and self.inner.indep(mask)


def beta_star(d: Dimatroid) -> Fraction:
    """Fractional cover number of a dimatroid in closed form: ``max(zeta(P), zeta(Q))``."""
    require_loopless(d.P, d.Q)
    return max(zeta(d.P), zeta(d.Q))


def covering_lp(d: Dimatroid, columns: list[int]) -> CoveringLP:
    return CoveringLP.from_columns(d.n, [list(iter_bits(c)) for c in columns])


def _lp_cover(d: Dimatroid, columns: list[int]) -> FractionalCover:
    sol = solve_covering(covering_lp(d, columns))
    if sol.status != OPTIMAL:
        raise InvariantViolation("fractional covering", "covering LP is infeasible")
    entries = tuple(
        (ElementSet.from_mask(d.n, c), x) for c, x in zip(columns, sol.values) if x
    )
    return FractionalCover(d.n, entries)


def beta_star_lp(d: Dimatroid, columns: str = "maximal",
                 max_n: int = FRACTIONAL_CAP) -> FractionalCover:
    """Optimal fractional cover by every (or every maximal) common independent set.

    Restricting to maximal sets does not change the optimum: any weight on a
    set can be moved to a maximal superset without losing coverage.
    """
    if d.n > max_n:
        raise SizeCapExceeded(f"fractional cover LP needs n <= {max_n}, got {d.n}")
    require_loopless(d.P, d.Q)
    if columns == "maximal":
        cols = maximal_common_independent_masks(d)
    elif columns == "all":
        cols = [c for c in common_independent_masks(d) if c]
    else:
        raise ValueError(f"columns must be 'maximal' or 'all', not {columns!r}")
    return _lp_cover(d, cols)


def zeta_truncated(m: Matroid, g: int) -> Fraction:
    """Density of the truncation at ``g``, which equals ``n / g`` for ``1 <= g <= n / zeta``."""
    z = zeta(m)
    if not 1 <= g or g > m.n / z:
        raise PreconditionError(f"g must satisfy 1 <= g <= n/zeta = {m.n / z}")
    return Fraction(m.n, g)


def minimal_fractional_cover(d: Dimatroid, g: int, columns: str = "size_g",
                             max_n: int = FRACTIONAL_CAP) -> FractionalCover:
    """An optimal fractional cover of the intersection truncated at ``g``.

    ``columns="size_g"`` uses only common independent sets of exactly ``g``
    elements; ``columns="all"`` offers every nonempty one of size at most
    ``g``.  Either way the optimum must be ``n / g`` and the support must
    consist of size-``g`` sets, both of which are checked.
    """
    if d.n > max_n:
        raise SizeCapExceeded(f"fractional cover LP needs n <= {max_n}, got {d.n}")
    z = beta_star(d)
    if not 1 <= g or g > d.n / z:
        raise PreconditionError(f"g must satisfy 1 <= g <= n/zeta = {d.n / z}")
    if columns == "size_g":
        cols = []
        for combo in combinations(range(d.n), g):
            m = sum(1 << x for x in combo)
            if d.indep(m):
                cols.append(m)
    elif columns == "all":
        cols = [c for c in common_independent_masks(d, max_size=g) if c]
    else:
        raise ValueError(f"columns must be 'size_g' or 'all', not {columns!r}")
    cover = _lp_cover(d, cols)
    if cover.total != Fraction(d.n, g):
        raise InvariantViolation(
            "fractional cover of truncation",
            f"optimum {cover.total} differs from n/g = {Fraction(d.n, g)}")
    if any(len(e) != g for e in cover.support()):
        raise InvariantViolation("fractional cover support",
                                 "an optimal cover uses a set smaller than g")
    return cover


def truncated(d: Dimatroid, g: int) -> Dimatroid:
    return Dimatroid(TruncatedMatroid(d.P, g), TruncatedMatroid(d.Q, g))
