"""Fair and almost-fair representation of partitions.

A set ``S`` represents a block ``A`` alpha-fairly when
``|S & A| >= floor(alpha |A|)``, and almost alpha-fairly when it misses that
by at most one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .covers import require_loopless, zeta
from .errors import InvariantViolation, PreconditionError, UniverseMismatch
from .intersection import (
    Dimatroid,
    ExchangeWalk,
    exchange_walk,
    max_common_independent_mask,
    max_marked_common_mask,
)
from .matroid import Matroid, PartitionMatroid
from .sets import ElementSet, SetLike, popcount, to_mask

FAIR, ALMOST, FAIL = "fair", "almost", "fail"


class Partition:
    """Pairwise-disjoint blocks whose union is ``{0, ..., n-1}``."""

    def __init__(self, n: int, blocks: Iterable[SetLike]):
        self.n = n
        self.blocks = tuple(ElementSet.from_mask(n, to_mask(n, b)) for b in blocks)
        seen = 0
        for b in self.blocks:
            if seen & b.mask:
                raise PreconditionError("partition blocks overlap")
            seen |= b.mask
        if seen != (1 << n) - 1:
            raise PreconditionError("partition blocks do not cover the ground set")

    @classmethod
    def two_blocks(cls, n: int, a: SetLike) -> Partition:
        a = ElementSet.from_mask(n, to_mask(n, a))
        return cls(n, [a, a.complement()])

    @property
    def m(self) -> int:
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def __repr__(self):
        return f"Partition({self.n}, {[list(b.members()) for b in self.blocks]})"


@dataclass(frozen=True)
class BlockFairness:
    size: int
    required_fair: int
    required_almost: int
    required_linear: Fraction
    achieved: int

    @property
    def verdict(self) -> str:
        if self.achieved >= self.required_fair:
            return FAIR
        if self.achieved >= self.required_almost:
            return ALMOST
        return FAIL


@dataclass(frozen=True)
class FairnessReport:
    """Per-block counts for one set against one partition.

    ``required_linear`` is the unrounded bound ``alpha |A| - 1``; the
    verdicts use the floor form.
    """

    alpha: Fraction
    blocks: tuple[BlockFairness, ...]

    @property
    def verdicts(self) -> list[str]:
        return [b.verdict for b in self.blocks]

    @property
    def fair(self) -> bool:
        return all(b.verdict == FAIR for b in self.blocks)

    @property
    def almost_fair(self) -> bool:
        return all(b.verdict != FAIL for b in self.blocks)


def delta(zeta_value: Fraction | int, n: int) -> Fraction:
    """``1/zeta - 1/n``, exactly.

    >>> delta(Fraction(5, 2), 10)
    Fraction(3, 10)
    """
    if n < 1:
        raise PreconditionError("n must be >= 1")
    zeta_value = Fraction(zeta_value)
    if zeta_value < 1:
        raise PreconditionError("zeta must be >= 1")
    return 1 / zeta_value - Fraction(1, n)


def _block_fairness(s_mask: int, block_mask: int, alpha: Fraction) -> BlockFairness:
    size = popcount(block_mask)
    fair = math.floor(alpha * size)
    return BlockFairness(size, fair, fair - 1, alpha * size - 1, popcount(s_mask & block_mask))


def fairness_report(s: SetLike, part: Partition, alpha: Fraction | int) -> FairnessReport:
    mask = to_mask(part.n, s)
    alpha = Fraction(alpha)
    return FairnessReport(alpha, tuple(_block_fairness(mask, b.mask, alpha) for b in part))


def fair_rep_matroid(m: Matroid, part: Partition) -> ElementSet:
    """An independent set meeting each block ``A_i`` in ``floor(|A_i| / zeta)`` elements.

    Intersects ``m`` with the partition matroid on the blocks whose
    capacities are exactly those quotas; a common independent set reaching the
    total quota meets every block in its quota.
    """
    if part.n != m.n:
        raise UniverseMismatch("partition and matroid have different ground sets")
    require_loopless(m)
    z = zeta(m)
    caps = [math.floor(len(b) / z) for b in part]
    quota = PartitionMatroid([b.members() for b in part], caps, n=m.n)
    d = Dimatroid(m, quota)
    start = 0
    for x in range(m.n):  # greedy seed saves most augmentations
        if d.indep(start | 1 << x):
            start |= 1 << x
    best = max_common_independent_mask(d, start)
    if popcount(best) != sum(caps):
        raise InvariantViolation(
            "fair representation in a matroid",
            f"largest common set has {popcount(best)} elements, quotas need {sum(caps)}")
    return ElementSet.from_mask(m.n, best)


@dataclass(frozen=True)
class FairRepTrace:
    """How :func:`fair_rep_two_blocks` reached its answer.

    ``chain_index`` indexes ``walk.chain()`` when a walk was needed; otherwise
    it is 0 when ``S`` was chosen and ``-1`` when ``T`` was.
    """

    n: int
    zeta: Fraction
    g: int
    delta: Fraction
    A: ElementSet
    S: ElementSet
    T: ElementSet | None
    walk: ExchangeWalk | None
    chosen: ElementSet
    chain_index: int
    report: FairnessReport


def _almost(mask: int, a: int, b: int, dlt: Fraction) -> bool:
    return (popcount(mask & a) >= math.floor(dlt * popcount(a)) - 1
            and popcount(mask & b) >= math.floor(dlt * popcount(b)) - 1)


def fair_rep_two_blocks(d: Dimatroid, a: SetLike, zeta_value: Fraction | None = None) -> FairRepTrace:
    """A common independent set almost delta-fair for both ``A`` and its complement.

    ``delta = 1/zeta - 1/n`` with ``zeta = max(zeta(P), zeta(Q))``.  Two
    size-``g`` sets are found, ``g = floor(n / zeta)``: ``S`` with as much of
    ``A`` as possible and ``T`` with as much of ``B``.  If neither qualifies,
    the exchange walk from ``S`` to ``T`` is scanned; its marked counts move by
    at most one per step, so it crosses into a set that is almost fair for
    both blocks.

    Pass ``zeta_value`` to reuse a density already computed for ``d``.
    """
    n = d.n
    if n == 0:
        raise PreconditionError("empty ground set")
    require_loopless(d.P, d.Q)
    a_mask = to_mask(n, a)
    b_mask = d.ground_mask & ~a_mask
    z = Fraction(zeta_value) if zeta_value is not None else max(zeta(d.P), zeta(d.Q))
    g = math.floor(n / z)
    dlt = delta(z, n)
    part = Partition(n, [ElementSet.from_mask(n, a_mask), ElementSet.from_mask(n, b_mask)])

    def size_g(marked: int) -> int:
        try:
            return max_marked_common_mask(d, marked, g)
        except PreconditionError as exc:
            raise InvariantViolation(
                "fractional cover of truncation",
                f"no common independent set of size g = {g}") from exc

    def finish(chosen: int, t: int | None, walk, index: int) -> FairRepTrace:
        report = fairness_report(ElementSet.from_mask(n, chosen), part, dlt)
        if not report.almost_fair or not d.indep(chosen):
            raise InvariantViolation("almost-fair representation", "chosen set fails")
        return FairRepTrace(
            n, z, g, dlt, ElementSet.from_mask(n, a_mask), ElementSet.from_mask(n, s),
            None if t is None else ElementSet.from_mask(n, t), walk,
            ElementSet.from_mask(n, chosen), index, report)

    if a_mask == 0 or b_mask == 0:
        s = size_g(d.ground_mask)
        return finish(s, None, None, 0)

    s = size_g(a_mask)
    if _almost(s, a_mask, b_mask, dlt):
        return finish(s, None, None, 0)
    t = size_g(b_mask)
    if _almost(t, a_mask, b_mask, dlt):
        return finish(t, t, None, -1)

    walk = exchange_walk(d, ElementSet.from_mask(n, s), ElementSet.from_mask(n, t))
    size_a, size_b = popcount(a_mask), popcount(b_mask)
    for r in walk.intermediates:
        # A walk set short of delta|A| on A must clear delta|B| - 1 on B.
        if popcount(r.mask & a_mask) < dlt * size_a and not popcount(r.mask & b_mask) > dlt * size_b - 1:
            raise InvariantViolation("crossing step",
                                     f"{r} misses both delta|A| and delta|B| - 1")
    chain = walk.chain()
    for i, c in enumerate(chain):
        if i and abs(popcount(c.mask & a_mask) - popcount(chain[i - 1].mask & a_mask)) > 1:
            raise InvariantViolation("exchange walk", "marked count jumps by more than one")
    for i, c in enumerate(chain):
        if _almost(c.mask, a_mask, b_mask, dlt):
            return finish(c.mask, t, walk, i)
    raise InvariantViolation("almost-fair representation for two blocks",
                             "no set on the exchange chain is almost fair for both blocks")
