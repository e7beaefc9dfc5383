"""Two-phase simplex for ``max c.x  s.t.  E x = b, x >= 0``.

Pivoting follows Bland's rule (lowest-index entering column, lowest-index
leaving basic variable on ratio ties), which rules out cycling.  In exact mode
all arithmetic is on :class:`fractions.Fraction`; float mode uses the same
code with a ``1e-9`` tolerance and is approximate.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import Infeasible, Unbounded

log = logging.getLogger(__name__)

EPS_LP = 1e-9


@dataclass
class RationalLP:
    c: list
    E: list
    b: list

    def __post_init__(self):
        v = len(self.c)
        if len(self.E) != len(self.b):
            raise ValueError(f"{len(self.E)} constraint rows but {len(self.b)} right-hand sides")
        for k, row in enumerate(self.E):
            if len(row) != v:
                raise ValueError(f"row {k} has {len(row)} entries, expected {v}")

    @property
    def num_vars(self) -> int:
        return len(self.c)


class _Tableau:
    def __init__(self, rows, basis, tol):
        self.rows = rows
        self.basis = basis
        self.tol = tol

    def pivot(self, r, j):
        rows = self.rows
        prow = rows[r]
        p = prow[j]
        prow[:] = [v / p for v in prow]
        for i, row in enumerate(rows):
            if i != r:
                f = row[j]
                if f:
                    row[:] = [a - f * b for a, b in zip(row, prow)]
        self.basis[r] = j

    def run(self, cost, allowed):
        """Maximize ``cost`` over the current basis; columns outside ``allowed`` never enter."""
        tol = self.tol
        iterations = 0
        while True:
            rows, basis = self.rows, self.basis
            entering = None
            for j in allowed:
                r = cost[j] - sum(cost[basis[i]] * rows[i][j] for i in range(len(rows)))
                if r > tol:
                    entering = j
                    break
            if entering is None:
                return iterations
            best = None
            for i, row in enumerate(rows):
                a = row[entering]
                if a > tol:
                    ratio = row[-1] / a
                    if best is None or ratio < best[0] - tol or (abs(ratio - best[0]) <= tol and basis[i] < basis[best[1]]):
                        best = (ratio, i)
            if best is None:
                raise Unbounded(f"objective unbounded along column {entering}")
            self.pivot(best[1], entering)
            iterations += 1


def lp_maximize(lp: RationalLP, exact: bool = True) -> tuple[object, list]:
    """Solve the LP; returns ``(optimum, x)`` with ``x`` an optimal vertex."""
    tol = 0 if exact else EPS_LP
    conv = Fraction if exact else float
    nvar = lp.num_vars
    m = len(lp.b)
    rows = []
    for k in range(m):
        row = [conv(v) for v in lp.E[k]]
        rhs = conv(lp.b[k])
        if rhs < 0:
            row, rhs = [-v for v in row], -rhs
        art = [conv(0)] * m
        art[k] = conv(1)
        rows.append(row + art + [rhs])
    tab = _Tableau(rows, [nvar + k for k in range(m)], tol)

    phase1 = [conv(0)] * nvar + [conv(-1)] * m
    it1 = tab.run(phase1, range(nvar + m))
    infeas = sum(row[-1] for row, j in zip(tab.rows, tab.basis) if j >= nvar)
    if infeas > (tol * max(1, m) if tol else 0):
        raise Infeasible(f"phase one ended with artificial mass {infeas}")

    # drive zero-level artificials out of the basis; drop redundant rows
    i = 0
    while i < len(tab.rows):
        if tab.basis[i] >= nvar:
            col = next((j for j in range(nvar) if abs(tab.rows[i][j]) > tol), None)
            if col is None:
                del tab.rows[i]
                del tab.basis[i]
                continue
            tab.pivot(i, col)
        i += 1

    cost = [conv(v) for v in lp.c] + [conv(0)] * m
    it2 = tab.run(cost, range(nvar))
    log.debug("simplex finished: %d phase-one and %d phase-two pivots", it1, it2)

    x = [conv(0)] * nvar
    for row, j in zip(tab.rows, tab.basis):
        x[j] = row[-1]
    if not exact:
        x = [0.0 if abs(v) <= tol else v for v in x]
    opt = sum(cv * xv for cv, xv in zip(cost, x))
    return opt, x


def solve(c: Sequence, E: Sequence[Sequence], b: Sequence, exact: bool = True):
    return lp_maximize(RationalLP(list(c), [list(r) for r in E], list(b)), exact=exact)
