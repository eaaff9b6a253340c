"""Hot numeric kernels: cyclic Jacobi diagonalization of symmetric matrices.

Two interchangeable implementations are provided: a numba ``@njit`` version
with explicit loops, and a vectorized pure-numpy version.  The numpy path is
selected when the ``GRAPHSPEC_NO_NUMBA`` environment variable is set (or when
numba is unavailable).  ``benchmarks/bench_jacobi.py`` compares the two.
"""

from __future__ import annotations

import math
import os

import numpy as np

SWEEP_CAP = 100
OFF_TOL = 1e-13

_DISABLED = os.environ.get("GRAPHSPEC_NO_NUMBA", "").lower() in {"1", "true", "yes"}

if not _DISABLED:
    try:
        from numba import njit

        HAS_NUMBA = True
    except ImportError:  # pragma: no cover - numba is a declared dependency
        HAS_NUMBA = False
else:
    HAS_NUMBA = False


def _jacobi_sweeps_py(a, v, sweep_cap, off_tol):
    """Cyclic Jacobi on symmetric ``a`` (modified in place); rotations are
    accumulated into ``v``.  Returns the sweep count, or -1 on failure to
    reach ``off_tol * ||a||_F`` within ``sweep_cap`` sweeps."""
    n = a.shape[0]
    norm = 0.0
    for i in range(n):
        for j in range(n):
            norm += a[i, j] * a[i, j]
    norm = math.sqrt(norm)
    if norm == 0.0:
        return 0
    threshold = off_tol * norm
    for sweep in range(sweep_cap):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off += 2.0 * a[p, q] * a[p, q]
        off = math.sqrt(off)
        if off < threshold:
            return sweep
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if theta >= 0.0:
                    t = 1.0 / (theta + math.sqrt(1.0 + theta * theta))
                else:
                    t = -1.0 / (-theta + math.sqrt(1.0 + theta * theta))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[k, q] = s * akp + c * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * aqk
                    a[q, k] = s * apk + c * aqk
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - s * vkq
                    v[k, q] = s * vkp + c * vkq
    return -1


def _jacobi_sweeps_np(a, v, sweep_cap, off_tol):
    """Same contract as :func:`_jacobi_sweeps_py` with vectorized updates."""
    n = a.shape[0]
    norm = float(np.linalg.norm(a))
    if norm == 0.0:
        return 0
    threshold = off_tol * norm
    for sweep in range(sweep_cap):
        off = math.sqrt(2.0) * float(np.linalg.norm(np.triu(a, k=1)))
        if off < threshold:
            return sweep
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (
                    abs(theta) + math.sqrt(1.0 + theta * theta)
                )
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                cols = a[:, [p, q]]
                a[:, [p, q]] = cols @ np.array([[c, s], [-s, c]])
                rows = a[[p, q], :]
                a[[p, q], :] = np.array([[c, -s], [s, c]]) @ rows
                vcols = v[:, [p, q]]
                v[:, [p, q]] = vcols @ np.array([[c, s], [-s, c]])
    return -1


if HAS_NUMBA:
    _jacobi_sweeps = njit(cache=True)(_jacobi_sweeps_py)
else:
    _jacobi_sweeps = _jacobi_sweeps_np


class ConvergenceError(RuntimeError):
    """The Jacobi iteration did not reach its off-diagonal threshold."""


def jacobi_eigh(matrix: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.

    Returns (eigenvalues ascending, orthonormal eigenvector columns).
    Raises ConvergenceError after ``SWEEP_CAP`` sweeps without convergence.
    """
    a = np.array(matrix, dtype=float, order="C")
    n = a.shape[0]
    if n == 0:
        return np.empty(0), np.empty((0, 0))
    v = np.eye(n)
    sweeps = _jacobi_sweeps(a, v, SWEEP_CAP, OFF_TOL)
    if sweeps < 0:
        raise ConvergenceError(
            f"Jacobi iteration did not converge in {SWEEP_CAP} sweeps (n={n})"
        )
    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]
