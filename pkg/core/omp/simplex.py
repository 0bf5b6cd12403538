"""
A small two-phase simplex over the rationals.

    minimize c.x   subject to   A_eq x = b_eq,  A_ub x <= b_ub,  x >= 0

Every number is converted to a Fraction on the way in (a float converts
exactly, being a dyadic rational), so pivots never round and an optimum of 0
is exactly 0. Bland's rule (lowest-index entering column, lowest-index basic
variable among tied ratios) rules out cycling. Desk scale only: a dense
tableau of a few hundred columns.

Phase I puts an artificial variable on every row (rows with a negative right-
hand side are negated first) and minimizes their sum; a positive optimum means
infeasible. Artificials left basic at zero are pivoted out, or their row is
dropped as redundant, before phase II runs on the original objective.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass
class LPResult:
    status: str
    x: Optional[List[Fraction]] = None
    objective: Optional[Fraction] = None

    @property
    def ok(self) -> bool:
        return self.status == OPTIMAL


def _frac(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


class _Tableau:
    def __init__(self, rows: List[List[Fraction]], rhs: List[Fraction], basis: List[int]):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.obj: List[Fraction] = []
        self.obj_value = Fraction(0)

    def set_objective(self, cost: Sequence[Fraction]) -> None:
        """Reduced costs of `cost` against the current basis."""
        self.obj = list(cost)
        self.obj_value = Fraction(0)
        for r, b in enumerate(self.basis):
            coef = self.obj[b]
            if coef != 0:
                row = self.rows[r]
                for k in range(len(self.obj)):
                    if row[k] != 0:
                        self.obj[k] -= coef * row[k]
                self.obj_value -= coef * self.rhs[r]

    def pivot(self, row: int, col: int) -> None:
        prow = self.rows[row]
        piv = prow[col]
        if piv != 1:
            inv = 1 / piv
            self.rows[row] = prow = [v * inv for v in prow]
            self.rhs[row] = self.rhs[row] * inv
        for i, other in enumerate(self.rows):
            if i == row:
                continue
            f = other[col]
            if f != 0:
                self.rows[i] = [a - f * b for a, b in zip(other, prow)]
                self.rhs[i] = self.rhs[i] - f * self.rhs[row]
        f = self.obj[col]
        if f != 0:
            self.obj = [a - f * b for a, b in zip(self.obj, prow)]
            self.obj_value = self.obj_value - f * self.rhs[row]
        self.basis[row] = col

    def run(self, allowed: int) -> str:
        """Bland iterations over columns [0, allowed)."""
        while True:
            col = next((j for j in range(allowed) if self.obj[j] < 0), None)
            if col is None:
                return OPTIMAL
            best_row, best_ratio = None, None
            for i, row in enumerate(self.rows):
                a = row[col]
                if a > 0:
                    ratio = self.rhs[i] / a
                    if (best_ratio is None or ratio < best_ratio
                            or (ratio == best_ratio and self.basis[i] < self.basis[best_row])):
                        best_row, best_ratio = i, ratio
            if best_row is None:
                return UNBOUNDED
            self.pivot(best_row, col)


def linprog_exact(
    c: Sequence,
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
) -> LPResult:
    n = len(c)
    m_ub = len(A_ub)
    if len(A_eq) != len(b_eq) or len(A_ub) != len(b_ub):
        raise ValueError("constraint matrix and right-hand side lengths differ")
    for row in list(A_eq) + list(A_ub):
        if len(row) != n:
            raise ValueError(f"constraint row has {len(row)} entries, objective has {n}")

    # Standard form: slack s_i for every <= row, then one artificial per row.
    rows: List[List[Fraction]] = []
    rhs: List[Fraction] = []
    for row, b in zip(A_eq, b_eq):
        rows.append([_frac(v) for v in row] + [Fraction(0)] * m_ub)
        rhs.append(_frac(b))
    for i, (row, b) in enumerate(zip(A_ub, b_ub)):
        r = [_frac(v) for v in row] + [Fraction(0)] * m_ub
        r[n + i] = Fraction(1)
        rows.append(r)
        rhs.append(_frac(b))
    for i in range(len(rows)):
        if rhs[i] < 0:
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -rhs[i]

    width = n + m_ub
    m = len(rows)
    for i in range(m):
        rows[i] = rows[i] + [Fraction(int(k == i)) for k in range(m)]
    tab = _Tableau(rows, rhs, [width + i for i in range(m)])

    # Phase I
    tab.set_objective([Fraction(0)] * width + [Fraction(1)] * m)
    tab.run(width + m)
    if tab.obj_value != 0:
        return LPResult(INFEASIBLE)

    # Drive zero-level artificials out of the basis; drop rows that can't be.
    keep = []
    for r in range(m):
        if tab.basis[r] >= width:
            col = next((j for j in range(width) if tab.rows[r][j] != 0), None)
            if col is None:
                continue
            tab.pivot(r, col)
        keep.append(r)
    tab.rows = [tab.rows[r][:width] for r in keep]
    tab.rhs = [tab.rhs[r] for r in keep]
    tab.basis = [tab.basis[r] for r in keep]

    # Phase II
    tab.set_objective([_frac(v) for v in c] + [Fraction(0)] * m_ub)
    if tab.run(width) == UNBOUNDED:
        return LPResult(UNBOUNDED)
    x = [Fraction(0)] * width
    for r, b in enumerate(tab.basis):
        x[b] = tab.rhs[r]
    return LPResult(OPTIMAL, x[:n], -tab.obj_value)
