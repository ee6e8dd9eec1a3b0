"""Exact simplex for covering programs ``min 1.x  s.t.  A x >= 1, x >= 0``.

``A`` is a 0/1 matrix given column-wise: column ``j`` lists the constraints
(vertices) that variable ``j`` covers.  Arithmetic uses :class:`Fraction`
throughout; there is no tolerance anywhere.

The solver is a dense two-phase tableau simplex with Bland's rule.  Columns
are laid out as ``x_0..x_{N-1}``, surplus ``s_0..s_{m-1}``, artificial
``a_0..a_{m-1}``.  Artificial columns stay in the tableau during phase two
(barred from entering) so a zero-level artificial left in a redundant row
never has to be removed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InvariantViolation

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class CoveringLP:
    num_constraints: int
    columns: tuple[tuple[int, ...], ...]

    @classmethod
    def from_columns(cls, num_constraints: int, columns: Iterable[Iterable[int]]) -> CoveringLP:
        cols = tuple(tuple(sorted(set(c))) for c in columns)
        for c in cols:
            for v in c:
                if not 0 <= v < num_constraints:
                    raise ValueError(f"constraint index {v} out of range")
        return cls(num_constraints, cols)

    @property
    def num_vars(self) -> int:
        return len(self.columns)

    def matrix(self) -> list[list[int]]:
        a = [[0] * self.num_vars for _ in range(self.num_constraints)]
        for j, col in enumerate(self.columns):
            for v in col:
                a[v][j] = 1
        return a

    def empty_rows(self) -> list[int]:
        covered = set()
        for col in self.columns:
            covered.update(col)
        return [v for v in range(self.num_constraints) if v not in covered]


@dataclass
class LPSolution:
    status: str
    values: list[Fraction] = field(default_factory=list)
    objective: Fraction | None = None
    duals: list[Fraction] = field(default_factory=list)
    pivots: int = 0


class _Tableau:
    def __init__(self, lp: CoveringLP):
        m, N = lp.num_constraints, lp.num_vars
        self.m, self.N = m, N
        self.width = N + 2 * m
        zero = Fraction(0)
        rows = [[zero] * self.width for _ in range(m)]
        one = Fraction(1)
        for j, col in enumerate(lp.columns):
            for v in col:
                rows[v][j] = one
        for i in range(m):
            rows[i][N + i] = -one
            rows[i][N + m + i] = one
        self.rows = rows
        self.rhs = [one] * m
        self.basis = [N + m + i for i in range(m)]
        self.pivots = 0

    def is_artificial(self, j: int) -> bool:
        return j >= self.N + self.m

    def reduced_costs(self, cost: Sequence[Fraction]) -> list[Fraction]:
        d = list(cost)
        for i, row in enumerate(self.rows):
            cb = cost[self.basis[i]]
            if cb:
                for j, a in enumerate(row):
                    if a:
                        d[j] -= cb * a
        return d

    def pivot(self, r: int, c: int, d: list[Fraction]) -> None:
        prow = self.rows[r]
        p = prow[c]
        if p != 1:
            inv = 1 / p
            for j in range(self.width):
                if prow[j]:
                    prow[j] *= inv
            self.rhs[r] *= inv
        nz = [j for j in range(self.width) if prow[j]]
        for i, row in enumerate(self.rows):
            if i == r:
                continue
            f = row[c]
            if f:
                for j in nz:
                    row[j] -= f * prow[j]
                self.rhs[i] -= f * self.rhs[r]
        f = d[c]
        if f:
            for j in nz:
                d[j] -= f * prow[j]
        self.basis[r] = c
        self.pivots += 1

    def run(self, d: list[Fraction], allow) -> None:
        """Bland's rule: lowest-index improving column, ties in the ratio test by lowest basic index."""
        while True:
            enter = next((j for j in range(self.width) if d[j] < 0 and allow(j)), None)
            if enter is None:
                return
            best = None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    key = (self.rhs[i] / a, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                raise InvariantViolation("covering LP", "objective unbounded below")
            self.pivot(best[1], enter, d)


def solve_covering(lp: CoveringLP) -> LPSolution:
    """Minimise the total weight covering every constraint at least once.

    Returns an ``infeasible`` solution when some constraint has no covering
    column.  On success the primal values and a dual certificate are
    checked exactly before returning.

    >>> solve_covering(CoveringLP.from_columns(2, [[0], [1]])).objective
    Fraction(2, 1)
    """
    if lp.empty_rows():
        return LPSolution(INFEASIBLE)
    if lp.num_constraints == 0:
        return LPSolution(OPTIMAL, [Fraction(0)] * lp.num_vars, Fraction(0), [])
    tab = _Tableau(lp)
    m, N = tab.m, tab.N
    zero, one = Fraction(0), Fraction(1)

    phase1 = [zero] * (N + m) + [one] * m
    d = tab.reduced_costs(phase1)
    tab.run(d, lambda j: True)
    if sum(tab.rhs[i] for i in range(m) if tab.is_artificial(tab.basis[i])) != 0:
        return LPSolution(INFEASIBLE, pivots=tab.pivots)

    # Drive zero-level artificials out where some real column can replace them.
    for i in range(m):
        if tab.is_artificial(tab.basis[i]):
            c = next((j for j in range(N + m) if tab.rows[i][j] != 0), None)
            if c is not None:
                tab.pivot(i, c, d)

    phase2 = [one] * N + [zero] * (2 * m)
    d = tab.reduced_costs(phase2)
    tab.run(d, lambda j: not tab.is_artificial(j))

    values = [zero] * N
    for i, b in enumerate(tab.basis):
        if b < N:
            values[b] = tab.rhs[i]
    objective = sum(values, zero)
    duals = [d[N + i] for i in range(m)]
    sol = LPSolution(OPTIMAL, values, objective, duals, tab.pivots)
    problems = certificate_problems(lp, sol)
    if problems:
        raise InvariantViolation("LP duality", "; ".join(problems))
    return sol


def certificate_problems(lp: CoveringLP, sol: LPSolution) -> list[str]:
    """Exact checks of primal feasibility, dual feasibility and equal objectives."""
    errs = []
    if any(x < 0 for x in sol.values):
        errs.append("negative primal value")
    cover = [Fraction(0)] * lp.num_constraints
    for x, col in zip(sol.values, lp.columns):
        if x:
            for v in col:
                cover[v] += x
    if any(c < 1 for c in cover):
        errs.append("a constraint is not covered")
    if sum(sol.values, Fraction(0)) != sol.objective:
        errs.append("objective differs from the sum of values")
    if any(y < 0 for y in sol.duals):
        errs.append("negative dual value")
    for col in lp.columns:
        if sum((sol.duals[v] for v in col), Fraction(0)) > 1:
            errs.append("dual constraint violated")
            break
    if sum(sol.duals, Fraction(0)) != sol.objective:
        errs.append("dual objective differs from primal objective")
    return errs
