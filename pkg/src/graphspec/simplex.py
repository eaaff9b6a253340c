"""Dense two-phase simplex for small linear programs.

Solves  min c^T x  subject to  A x <= b,  x >= 0  with Bland's rule for
anti-cycling.  Problem sizes here are tiny (tens of variables), so a dense
tableau is the simplest robust choice.
"""

from __future__ import annotations

import numpy as np

PIVOT_TOL = 1e-10


class Infeasible(RuntimeError):
    pass


class Unbounded(RuntimeError):
    pass


def _pivot(tableau: np.ndarray, basis: np.ndarray, row: int, col: int) -> None:
    tableau[row] /= tableau[row, col]
    for r in range(tableau.shape[0]):
        if r != row and abs(tableau[r, col]) > 0.0:
            tableau[r] -= tableau[r, col] * tableau[row]
    basis[row] = col


def _iterate(tableau: np.ndarray, basis: np.ndarray, ncols: int) -> None:
    """Run simplex iterations on a tableau whose last row is the objective."""
    while True:
        obj = tableau[-1, :ncols]
        entering = -1
        for j in range(ncols):  # Bland: smallest eligible index
            if obj[j] < -PIVOT_TOL:
                entering = j
                break
        if entering < 0:
            return
        col = tableau[:-1, entering]
        rhs = tableau[:-1, -1]
        leaving, best = -1, np.inf
        for r in range(col.size):
            if col[r] > PIVOT_TOL:
                ratio = rhs[r] / col[r]
                if ratio < best - PIVOT_TOL or (
                    abs(ratio - best) <= PIVOT_TOL
                    and (leaving < 0 or basis[r] < basis[leaving])
                ):
                    leaving, best = r, ratio
        if leaving < 0:
            raise Unbounded("objective unbounded below")
        _pivot(tableau, basis, leaving, entering)


def solve_lp(c: np.ndarray, a: np.ndarray, b: np.ndarray) -> tuple[float, np.ndarray]:
    """min c.x s.t. a @ x <= b, x >= 0.  Returns (optimal value, optimizer)."""
    c = np.asarray(c, dtype=float)
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float).copy()
    m, n = a.shape
    # rows with negative rhs get their slack replaced by an artificial var
    a = a.copy()
    slack = np.eye(m)
    neg = b < 0
    a[neg] *= -1.0
    slack[neg] *= -1.0
    b[neg] *= -1.0
    n_art = int(neg.sum())
    art = np.zeros((m, n_art))
    for k, r in enumerate(np.flatnonzero(neg)):
        art[r, k] = 1.0
    ncols = n + m + n_art
    tableau = np.zeros((m + 1, ncols + 1))
    tableau[:m, :n] = a
    tableau[:m, n : n + m] = slack
    tableau[:m, n + m : ncols] = art
    tableau[:m, -1] = b
    basis = np.empty(m, dtype=int)
    art_cols = []
    for r in range(m):
        if neg[r]:
            col = n + m + art_cols.__len__()
            art_cols.append(col)
            basis[r] = col
        else:
            basis[r] = n + r

    if n_art:
        # phase 1: minimize the sum of artificials
        tableau[-1, :] = 0.0
        for col in art_cols:
            tableau[-1, col] = 1.0
        for r in range(m):
            if basis[r] in art_cols:
                tableau[-1] -= tableau[r]
        _iterate(tableau, basis, ncols)
        if tableau[-1, -1] < -1e-8:
            raise Infeasible("phase 1 objective positive")
        # drive remaining artificials out of the basis where possible
        for r in range(m):
            if basis[r] in art_cols:
                for j in range(n + m):
                    if abs(tableau[r, j]) > PIVOT_TOL:
                        _pivot(tableau, basis, r, j)
                        break

    # phase 2
    tableau[-1, :] = 0.0
    tableau[-1, :n] = c
    for col in art_cols:
        tableau[:, col] = 0.0  # artificials are frozen out
    for r in range(m):
        if basis[r] < n and abs(tableau[-1, basis[r]]) > 0.0:
            tableau[-1] -= tableau[-1, basis[r]] * tableau[r]
    _iterate(tableau, basis, n + m)
    x = np.zeros(n)
    for r in range(m):
        if basis[r] < n:
            x[basis[r]] = tableau[r, -1]
    return float(c @ x), x
