"""Dense phase-one simplex for linear feasibility.

Decides whether {x >= 0 : A x = b} is nonempty by minimizing the total
artificial-variable mass. Bland's rule is used for both the entering and
the leaving choice, so the procedure terminates on degenerate systems.
On infeasibility the simplex multipliers provide a separating functional
y with A^T y <= 0 and b^T y equal to the positive phase-one optimum.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["FeasibilityResult", "solve_feasibility"]


@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    x: np.ndarray | None
    dual: np.ndarray | None
    objective: float
    dual_margin: float
    pivots: int


def solve_feasibility(A, b, tol: float = 1e-9, pivot_tol: float = 1e-11, max_pivots: int | None = None) -> FeasibilityResult:
    A = np.array(A, dtype=float)
    b = np.array(b, dtype=float)
    m, n = A.shape
    if b.shape != (m,):
        raise ValueError(f"b has shape {b.shape}, expected ({m},)")
    flip = b < 0
    A[flip] *= -1.0
    b = np.abs(b)

    # Tableau: row 0 holds reduced costs and -objective; artificial columns n..n+m.
    T = np.zeros((m + 1, n + m + 1))
    T[1:, :n] = A
    T[1:, n : n + m] = np.eye(m)
    T[1:, -1] = b
    T[0, :n] = -A.sum(axis=0)
    T[0, -1] = -b.sum()
    basis = list(range(n, n + m))
    if max_pivots is None:
        max_pivots = 200 * (m + n) + 2000

    pivots = 0
    while pivots < max_pivots:
        entering = -1
        for j in range(n + m):
            if T[0, j] < -pivot_tol:
                entering = j
                break
        if entering < 0:
            break
        # Ratio test; ties resolved by the smallest basis variable index (Bland).
        leaving = -1
        best_ratio = np.inf
        for i in range(m):
            a = T[i + 1, entering]
            if a > pivot_tol:
                ratio = T[i + 1, -1] / a
                if ratio < best_ratio - 1e-15 or (
                    abs(ratio - best_ratio) <= 1e-15 and (leaving < 0 or basis[i] < basis[leaving])
                ):
                    best_ratio = ratio
                    leaving = i
        if leaving < 0:
            # Unbounded reduced direction cannot occur in phase one; treat as stalled.
            break
        piv_row = leaving + 1
        T[piv_row] /= T[piv_row, entering]
        col = T[:, entering].copy()
        col[piv_row] = 0.0
        T -= np.outer(col, T[piv_row])
        T[:, entering] = 0.0
        T[piv_row, entering] = 1.0
        basis[leaving] = entering
        pivots += 1

    objective = -float(T[0, -1])

    if objective <= tol:
        x = np.zeros(n + m)
        for i, var in enumerate(basis):
            x[var] = T[i + 1, -1]
        return FeasibilityResult(True, np.clip(x[:n], 0.0, None), None, objective, 0.0, pivots)

    # Multipliers: artificial costs are 1, so y_i = 1 - reduced_cost(artificial_i).
    # Mapped back through the row sign flips, y certifies infeasibility of the
    # original system when A0^T y <= 0 and b0^T y > 0.
    y = 1.0 - T[0, n : n + m]
    A0 = np.array(A)
    A0[flip] *= -1.0
    b0 = np.where(flip, -b, b)
    y0 = np.where(flip, -y, y)
    slack = float(np.max(A0.T @ y0)) if n else 0.0
    margin = float(b0 @ y0)
    dual_margin = margin if slack <= 1e-8 and margin > 0 else 0.0
    return FeasibilityResult(False, None, y0, objective, dual_margin, pivots)
