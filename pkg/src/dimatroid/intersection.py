"""Common independent sets of two matroids.

Augmenting paths follow the usual exchange graph for a current common
independent set ``S``: for ``y`` in ``S`` and ``z`` outside it there is an arc
``y -> z`` when ``S - y + z`` is independent in ``P`` and an arc ``z -> y`` when
``S - y + z`` is independent in ``Q``.  Paths run from elements addable in
``P`` to elements addable in ``Q``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations

from .errors import InvariantViolation, PreconditionError, SizeCapExceeded, UniverseMismatch
from .matroid import Matroid
from .sets import ElementSet, SetLike, iter_bits, popcount, to_mask


@dataclass(frozen=True)
class Dimatroid:
    """The intersection of two matroids on one ground set."""

    P: Matroid
    Q: Matroid

    def __post_init__(self):
        if self.P.n != self.Q.n:
            raise UniverseMismatch(
                f"matroids have different ground sets: {self.P.n} vs {self.Q.n}")

    @property
    def n(self) -> int:
        return self.P.n

    @property
    def ground_mask(self) -> int:
        return (1 << self.P.n) - 1

    def indep(self, mask: int) -> bool:
        return self.P.indep(mask) and self.Q.indep(mask)

    def is_common_independent(self, s: SetLike) -> bool:
        return self.indep(to_mask(self.n, s))

    def is_loopless(self) -> bool:
        return self.P.is_loopless() and self.Q.is_loopless()


def is_common_independent(d: Dimatroid, s: SetLike) -> bool:
    return d.is_common_independent(s)


def _exchange_arcs(d: Dimatroid, s: int):
    inside = list(iter_bits(s))
    outside = [z for z in range(d.n) if not s >> z & 1]
    succ: dict[int, list[int]] = {x: [] for x in range(d.n)}
    for y in inside:
        base = s ^ 1 << y
        for z in outside:
            m = base | 1 << z
            if d.P.indep(m):
                succ[y].append(z)
            if d.Q.indep(m):
                succ[z].append(y)
    sources = [z for z in outside if d.P.indep(s | 1 << z)]
    sinks = {z for z in outside if d.Q.indep(s | 1 << z)}
    return succ, sources, sinks


def _shortest_path(d: Dimatroid, s: int) -> list[int] | None:
    succ, sources, sinks = _exchange_arcs(d, s)
    prev: dict[int, int | None] = {}
    queue = deque()
    for z in sources:
        prev[z] = None
        queue.append(z)
    while queue:
        u = queue.popleft()
        if u in sinks:
            path = [u]
            while prev[path[-1]] is not None:
                path.append(prev[path[-1]])
            return path[::-1]
        for v in succ[u]:
            if v not in prev:
                prev[v] = u
                queue.append(v)
    return None


def _apply(s: int, path: list[int]) -> int:
    for x in path:
        s ^= 1 << x
    return s


def max_common_independent_mask(d: Dimatroid, start: int = 0) -> int:
    s = start
    if not d.indep(s):
        raise PreconditionError("starting set must be common independent")
    while True:
        path = _shortest_path(d, s)
        if path is None:
            return s
        s = _apply(s, path)
        if not d.indep(s):
            raise InvariantViolation("matroid intersection",
                                     "shortest augmenting path produced a dependent set")


def max_common_independent(d: Dimatroid) -> ElementSet:
    """A maximum-cardinality common independent set, by shortest augmenting paths.

    >>> from dimatroid.matroid import UniformMatroid
    >>> len(max_common_independent(Dimatroid(UniformMatroid(5, 3), UniformMatroid(5, 3))))
    3
    """
    return ElementSet.from_mask(d.n, max_common_independent_mask(d))


def _cheapest_path(d: Dimatroid, s: int, weight: list[int]) -> list[int] | None:
    # Vertex lengths: -w(z) outside S, +w(y) inside. Minimise (length, arcs)
    # lexicographically; no negative cycles exist while S is max-weight for its size.
    succ, sources, sinks = _exchange_arcs(d, s)
    if not sinks or not sources:
        return None
    length = [weight[x] if s >> x & 1 else -weight[x] for x in range(d.n)]
    best: dict[int, tuple[int, int]] = {}
    prev: dict[int, int | None] = {}
    for z in sources:
        best[z] = (length[z], 0)
        prev[z] = None
    for _ in range(d.n):
        changed = False
        for u in sorted(best):
            lu, au = best[u]
            for v in succ[u]:
                cand = (lu + length[v], au + 1)
                if v not in best or cand < best[v]:
                    best[v] = cand
                    prev[v] = u
                    changed = True
        if not changed:
            break
    reached = [z for z in sinks if z in best]
    if not reached:
        return None
    end = min(reached, key=lambda z: (best[z], z))
    path = [end]
    while prev[path[-1]] is not None:
        path.append(prev[path[-1]])
        if len(path) > d.n:
            raise InvariantViolation("weighted matroid intersection",
                                     "predecessor chain contains a cycle")
    return path[::-1]


def max_marked_common_mask(d: Dimatroid, marked: int, g: int) -> int:
    if g < 0:
        raise PreconditionError("g must be >= 0")
    weight = [marked >> x & 1 for x in range(d.n)]
    s = 0
    for _ in range(g):
        path = _cheapest_path(d, s, weight)
        if path is None:
            raise PreconditionError(f"no common independent set of size {g} exists")
        s = _apply(s, path)
        if not d.indep(s):
            raise InvariantViolation("weighted matroid intersection",
                                     "cheapest augmenting path produced a dependent set")
    return s


def max_marked_common_independent(d: Dimatroid, a: SetLike, g: int) -> ElementSet:
    """A size-``g`` common independent set with as many elements of ``a`` as possible.

    Runs ``g`` rounds of weighted augmentation (weight 1 on ``a``), each along a
    path of maximum weight gain and, among those, fewest arcs.  Raises
    :class:`PreconditionError` if no size-``g`` common independent set exists.
    """
    return ElementSet.from_mask(d.n, max_marked_common_mask(d, to_mask(d.n, a), g))


def brute_force_max_common(d: Dimatroid, a: SetLike, g: int, max_n: int = 22) -> int:
    """Max ``|S & a|`` over size-``g`` common independent ``S``; ``-1`` if there is none."""
    if d.n > max_n:
        raise SizeCapExceeded(f"brute force needs n <= {max_n}, got {d.n}")
    marked = to_mask(d.n, a)
    best = -1
    for combo in combinations(range(d.n), g):
        m = 0
        for x in combo:
            m |= 1 << x
        if d.indep(m):
            best = max(best, popcount(m & marked))
            if best == min(g, popcount(marked)):
                break
    return best


def brute_force_max_size(d: Dimatroid) -> int:
    return max(popcount(m) for m in common_independent_masks(d))


def common_independent_masks(d: Dimatroid, within: int | None = None,
                             max_size: int | None = None) -> list[int]:
    """Every common independent subset of ``within`` (default: the ground set)."""
    if within is None:
        within = d.ground_mask
    elems = list(iter_bits(within))
    out = []
    stack = [(0, 0, 0)]
    while stack:
        mask, start, size = stack.pop()
        out.append(mask)
        if max_size is not None and size >= max_size:
            continue
        for i in range(start, len(elems)):
            m = mask | 1 << elems[i]
            if d.indep(m):
                stack.append((m, i + 1, size + 1))
    out.sort()
    return out


def maximal_common_independent_masks(d: Dimatroid, within: int | None = None) -> list[int]:
    if within is None:
        within = d.ground_mask
    members = common_independent_masks(d, within)
    out = []
    for m in members:
        if all(not d.indep(m | 1 << x) for x in iter_bits(within & ~m)):
            out.append(m)
    return out


@dataclass(frozen=True)
class ExchangeWalk:
    """Orderings of ``S`` and ``T`` with feasible intermediates.

    ``intermediates[i-1]`` is ``S - s_1 + t_1 - ... + t_{i-1} - s_i``.
    """

    S: ElementSet
    T: ElementSet
    s_order: tuple[int, ...]
    t_order: tuple[int, ...]
    intermediates: tuple[ElementSet, ...]

    @property
    def g(self) -> int:
        return len(self.s_order)

    def chain(self) -> list[ElementSet]:
        """``S, R_1, ..., R_g, T``; neighbours differ in at most two elements."""
        return [self.S, *self.intermediates, self.T]

    def problems(self, d: Dimatroid) -> list[str]:
        """Violated walk invariants; empty when the walk is valid for ``d``."""
        errs = []
        g = len(self.S)
        if len(self.T) != g or len(self.s_order) != g or len(self.t_order) != g:
            errs.append("sizes disagree")
        if sorted(self.s_order) != sorted(self.S.members()):
            errs.append("s_order is not an ordering of S")
        if sorted(self.t_order) != sorted(self.T.members()):
            errs.append("t_order is not an ordering of T")
        if len(self.intermediates) != g:
            errs.append("wrong number of intermediates")
        cur = self.S
        for i, r in enumerate(self.intermediates):
            expect = cur.minus(self.s_order[i])
            if r != expect:
                errs.append(f"R_{i + 1} is not the previous set minus s_{i + 1}")
            if len(r) != g - 1:
                errs.append(f"|R_{i + 1}| != g - 1")
            if not d.is_common_independent(r):
                errs.append(f"R_{i + 1} is not common independent")
            cur = r.plus(self.t_order[i])
        if g and cur != self.T:
            errs.append("R_g + t_g does not reconstruct T")
        chain = self.chain()
        for a, b in zip(chain, chain[1:]):
            if len(a ^ b) > 2:
                errs.append("adjacent chain sets differ in more than two elements")
                break
        return errs


def exchange_walk(d: Dimatroid, s: SetLike, t: SetLike) -> ExchangeWalk:
    """Interleave removals from ``S`` with insertions from ``T``, staying common independent.

    At stage ``i`` the current set ``R_i`` has ``g - 1`` elements.  ``t_i`` is
    the lowest element of ``T - R_i`` with ``R_i + t_i`` in ``P``; then
    ``s_{i+1}`` is the lowest unused element of ``S``, taken from the
    ``Q``-circuit of ``R_i + t_i`` when that set is ``Q``-dependent.  Every
    circuit element picked this way lies outside ``T`` because ``T`` is
    ``Q``-independent.
    """
    sm, tm = to_mask(d.n, s), to_mask(d.n, t)
    if not d.indep(sm) or not d.indep(tm):
        raise PreconditionError("S and T must both be common independent")
    g = popcount(sm)
    if popcount(tm) != g:
        raise PreconditionError("S and T must have the same size")
    if g == 0:
        empty = ElementSet(d.n)
        return ExchangeWalk(empty, empty, (), (), ())

    s_order: list[int] = []
    t_order: list[int] = []
    intermediates: list[ElementSet] = []
    unused_s = sm
    first = unused_s & -unused_s
    s_order.append(first.bit_length() - 1)
    unused_s ^= first
    r = sm ^ first
    for i in range(g):
        intermediates.append(ElementSet.from_mask(d.n, r))
        if not d.indep(r):
            raise InvariantViolation("exchange walk", f"R_{i + 1} is not common independent")
        candidates = [x for x in iter_bits(tm & ~r) if d.P.indep(r | 1 << x)]
        if not candidates:
            raise InvariantViolation("exchange walk",
                                     f"no element of T extends R_{i + 1} in P")
        ti = candidates[0]
        t_order.append(ti)
        rt = r | 1 << ti
        if i == g - 1:
            r = rt
            break
        if d.Q.indep(rt):
            pool = unused_s
        else:
            circuit = 0
            for x in iter_bits(rt):
                if d.Q.indep(rt ^ 1 << x):
                    circuit |= 1 << x
            pool = circuit & unused_s
        if not pool:
            raise InvariantViolation("exchange walk",
                                     f"Q-circuit of R_{i + 1} + t_{i + 1} avoids S")
        low = pool & -pool
        s_order.append(low.bit_length() - 1)
        unused_s ^= low
        r = rt ^ low
    if r != tm:
        raise InvariantViolation("exchange walk", "final set differs from T")
    walk = ExchangeWalk(ElementSet.from_mask(d.n, sm), ElementSet.from_mask(d.n, tm),
                        tuple(s_order), tuple(t_order), tuple(intermediates))
    errs = walk.problems(d)
    if errs:
        raise InvariantViolation("exchange walk", "; ".join(errs))
    return walk
