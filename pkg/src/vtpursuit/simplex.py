"""Bounded-variable two-phase revised simplex for small dense LPs.

Solves

    min c.x  subject to  A x (<=, =, >=) b,  0 <= x <= u

with dense numpy linear algebra. Geared to the assignment relaxations this
package produces: a handful of rows, possibly tens of thousands of columns.
The basis is refactorized every iteration, which is cheap at these row
counts and avoids any numerical drift from incremental updates.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

OPT_TOL = 1e-9
FEAS_TOL = 1e-9
PIVOT_TOL = 1e-10

_AT_LOWER = 0
_AT_UPPER = 1
_BASIC = 2


@dataclass
class LPResult:
    """Outcome of one LP solve.

    ``x`` holds the structural variables only (no slacks or artificials)
    and is None unless the status is "optimal".
    """

    status: str
    x: np.ndarray | None
    objective: float
    iterations: int


class _Tableau:
    """Working state for the equality-form problem with bounds."""

    def __init__(self, a: np.ndarray, b: np.ndarray, lower: np.ndarray, upper: np.ndarray):
        self.a = a
        self.b = b
        self.lower = lower
        self.upper = upper
        m, n = a.shape
        self.m = m
        self.n = n
        self.basis = np.arange(n - m, n)
        self.state = np.full(n, _AT_LOWER, dtype=np.int8)
        self.state[self.basis] = _BASIC
        self.fixed = lower == upper

    def values(self) -> np.ndarray:
        x = np.where(self.state == _AT_UPPER, self.upper, self.lower).astype(np.float64)
        x[self.basis] = 0.0
        rhs = self.b - self.a @ x
        x[self.basis] = np.linalg.solve(self.a[:, self.basis], rhs)
        return x

    def minimize(self, costs: np.ndarray, max_iterations: int) -> tuple[str, int]:
        """Run simplex iterations for the given cost vector.

        Returns (status, iterations) where status is "optimal",
        "unbounded" or "iteration_limit". Dantzig pricing with a Bland
        fallback after a run of degenerate pivots guards against cycling.
        """
        iterations = 0
        degenerate_run = 0
        bland = False
        while iterations < max_iterations:
            x = self.values()
            basis_matrix = self.a[:, self.basis]
            pi = np.linalg.solve(basis_matrix.T, costs[self.basis])
            reduced = costs - self.a.T @ pi

            at_lower = (self.state == _AT_LOWER) & ~self.fixed
            at_upper = self.state == _AT_UPPER
            score = np.zeros(self.n)
            score[at_lower] = reduced[at_lower]
            score[at_upper] = -reduced[at_upper]
            eligible = (at_lower | at_upper) & (score < -OPT_TOL)
            if not eligible.any():
                return "optimal", iterations

            if bland:
                entering = int(np.nonzero(eligible)[0][0])
            else:
                masked = np.where(eligible, score, 0.0)
                entering = int(np.argmin(masked))
            direction = 1.0 if self.state[entering] == _AT_LOWER else -1.0

            column = np.linalg.solve(basis_matrix, self.a[:, entering])
            step = direction * column
            basic_vals = x[self.basis]
            basic_low = self.lower[self.basis]
            basic_up = self.upper[self.basis]

            with np.errstate(divide="ignore", invalid="ignore"):
                ratio = np.full(self.m, np.inf)
                pos = step > PIVOT_TOL
                ratio[pos] = (basic_vals[pos] - basic_low[pos]) / step[pos]
                neg = step < -PIVOT_TOL
                ratio[neg] = (basic_up[neg] - basic_vals[neg]) / (-step[neg])
            ratio = np.maximum(ratio, 0.0)

            bound_gap = self.upper[entering] - self.lower[entering]
            min_ratio = ratio.min() if self.m else np.inf
            limit = min(bound_gap, min_ratio)
            if not np.isfinite(limit):
                return "unbounded", iterations

            iterations += 1
            if limit <= 1e-12:
                degenerate_run += 1
                if degenerate_run > 2 * (self.m + 10):
                    bland = True
            else:
                degenerate_run = 0
                bland = False

            if bound_gap < min_ratio - 1e-12:
                # The entering variable hits its other bound: no basis change.
                self.state[entering] = (
                    _AT_UPPER if self.state[entering] == _AT_LOWER else _AT_LOWER
                )
                continue

            candidates = np.nonzero(ratio <= limit + 1e-12)[0]
            # Prefer the numerically largest pivot among the tied rows, then
            # the smallest variable index for determinism.
            pivots = np.abs(step[candidates])
            best = pivots.max()
            tied = candidates[pivots >= best - 1e-12]
            leaving_pos = int(tied[np.argmin(self.basis[tied])])

            leaving_var = self.basis[leaving_pos]
            self.state[leaving_var] = _AT_LOWER if step[leaving_pos] > 0 else _AT_UPPER
            self.basis[leaving_pos] = entering
            self.state[entering] = _BASIC
        return "iteration_limit", iterations

    def feasible(self, x: np.ndarray) -> bool:
        if ((x < self.lower - 1e-7) | (x > self.upper + 1e-7)).any():
            return False
        return bool(np.abs(self.a @ x - self.b).max() <= 1e-7 * max(1.0, np.abs(self.b).max()))


def solve_lp(
    costs: np.ndarray,
    a_matrix: np.ndarray,
    senses: list[str],
    rhs: np.ndarray,
    upper: np.ndarray,
    max_iterations: int = 50_000,
) -> LPResult:
    """Solve the LP min costs.x s.t. A x (senses) rhs, 0 <= x <= upper.

    ``senses`` entries are "<", "=" or ">". Infinite upper bounds are
    allowed. Returns structural variable values on success.
    """
    costs = np.asarray(costs, dtype=np.float64)
    a = np.asarray(a_matrix, dtype=np.float64).copy()
    b = np.asarray(rhs, dtype=np.float64).copy()
    upper = np.asarray(upper, dtype=np.float64)
    m, n = a.shape
    if len(senses) != m or b.shape != (m,) or costs.shape != (n,) or upper.shape != (n,):
        raise ValueError("inconsistent LP dimensions")

    senses = list(senses)
    for r in range(m):
        if b[r] < 0:
            a[r] *= -1.0
            b[r] *= -1.0
            senses[r] = {"<": ">", ">": "<", "=": "="}[senses[r]]

    slack_cols = []
    slack_upper = []
    for r, sense in enumerate(senses):
        if sense == "<":
            col = np.zeros(m)
            col[r] = 1.0
            slack_cols.append(col)
            slack_upper.append(np.inf)
        elif sense == ">":
            col = np.zeros(m)
            col[r] = -1.0
            slack_cols.append(col)
            slack_upper.append(np.inf)
        elif sense != "=":
            raise ValueError(f"unknown sense {sense!r}")

    blocks = [a]
    if slack_cols:
        blocks.append(np.column_stack(slack_cols))
    blocks.append(np.eye(m))
    full = np.hstack(blocks)

    lower = np.zeros(full.shape[1])
    up = np.concatenate([upper, np.array(slack_upper), np.full(m, np.inf)])
    tab = _Tableau(full, b, lower, up)

    n_art = m
    phase1 = np.zeros(full.shape[1])
    phase1[-n_art:] = 1.0
    status, it1 = tab.minimize(phase1, max_iterations)
    if status != "optimal":
        return LPResult(status=status, x=None, objective=float("inf"), iterations=it1)
    x = tab.values()
    if float(phase1 @ x) > 1e-7:
        return LPResult(status="infeasible", x=None, objective=float("inf"), iterations=it1)

    # Freeze the artificials at zero for phase 2.
    tab.upper[-n_art:] = 0.0
    tab.fixed[-n_art:] = True

    phase2 = np.zeros(full.shape[1])
    phase2[:n] = costs
    status, it2 = tab.minimize(phase2, max_iterations)
    iterations = it1 + it2
    if status != "optimal":
        return LPResult(status=status, x=None, objective=float("inf"), iterations=iterations)
    x = tab.values()
    if not tab.feasible(x):
        return LPResult(status="numerical", x=None, objective=float("inf"), iterations=iterations)
    structural = x[:n].copy()
    return LPResult(
        status="optimal",
        x=structural,
        objective=float(costs @ structural),
        iterations=iterations,
    )
