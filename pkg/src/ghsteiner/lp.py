"""Dense two-phase simplex for the small LPs of the tree solvers.

Solves ``min c @ x`` subject to ``A @ x >= b`` and ``x >= 0``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import LpNumericalFailure
from .kernels import SIMPLEX_OPTIMAL, SIMPLEX_UNBOUNDED, run_simplex

PIVOT_TOL = 1e-9
FEAS_TOL = 1e-7


@dataclass(frozen=True)
class LpResult:
    x: np.ndarray
    value: float
    pivots: int


def solve_min_ge(c, A, b, tol: float = PIVOT_TOL, max_iter: int = 50_000, use_numba=None) -> LpResult:
    c = np.asarray(c, dtype=np.float64)
    A = np.atleast_2d(np.asarray(A, dtype=np.float64))
    b = np.asarray(b, dtype=np.float64)
    m, nx = A.shape
    if c.shape != (nx,) or b.shape != (m,):
        raise ValueError("inconsistent LP dimensions")

    # A x - s = b; rows with b <= 0 are negated so the slack can start basic.
    flip = b <= 0.0
    sign = np.where(flip, -1.0, 1.0)
    need_art = np.flatnonzero(~flip)
    n_art = len(need_art)
    ncol = nx + m + n_art
    T = np.zeros((m + 1, ncol + 1))
    T[:m, :nx] = A * sign[:, None]
    T[:m, nx : nx + m] = -np.diag(sign)
    T[:m, -1] = b * sign
    basis = np.empty(m, dtype=np.int64)
    for r in np.flatnonzero(flip):
        basis[r] = nx + r
    for k, r in enumerate(need_art):
        T[r, nx + m + k] = 1.0
        basis[r] = nx + m + k

    pivots = 0
    if n_art:
        # phase one: minimize the sum of artificials
        T[m, :] = 0.0
        T[m, :] -= T[need_art].sum(axis=0)
        T[m, nx + m : ncol] = 0.0
        status, p = run_simplex(T, basis, nx + m, tol, max_iter, use_numba)
        pivots += p
        if status != SIMPLEX_OPTIMAL:
            raise LpNumericalFailure(f"phase one did not converge (status {status})")
        if -T[m, -1] > FEAS_TOL * max(1.0, np.abs(b).max()):
            raise LpNumericalFailure(f"LP infeasible: residual {-T[m, -1]:.3g}")
        T, basis = _drive_out_artificials(T, basis, nx + m, tol)
        T = np.delete(T, np.s_[nx + m : ncol], axis=1)

    # phase two objective row in canonical form
    cost = np.zeros(nx + m)
    cost[:nx] = c
    rows = T.shape[0] - 1
    T[rows, :] = 0.0
    T[rows, : nx + m] = cost
    cb = cost[basis]
    T[rows, :] -= cb @ T[:rows, :]
    status, p = run_simplex(T, basis, nx + m, tol, max_iter, use_numba)
    pivots += p
    if status == SIMPLEX_UNBOUNDED:
        raise LpNumericalFailure("LP unbounded")
    if status != SIMPLEX_OPTIMAL:
        raise LpNumericalFailure("simplex iteration limit reached")

    x = np.zeros(nx + m)
    x[basis] = T[:rows, -1]
    x = np.maximum(x[:nx], 0.0)
    resid = A @ x - b
    if resid.size and resid.min() < -FEAS_TOL * max(1.0, np.abs(b).max()):
        raise LpNumericalFailure(f"solution violates constraints by {-resid.min():.3g}")
    return LpResult(x=x, value=float(c @ x), pivots=pivots)


def _drive_out_artificials(T, basis, n_real, tol):
    m = T.shape[0] - 1
    keep = []
    for r in range(m):
        if basis[r] < n_real:
            keep.append(r)
            continue
        cand = np.flatnonzero(np.abs(T[r, :n_real]) > tol)
        if cand.size == 0:
            continue  # redundant row
        col = cand[0]
        T[r] /= T[r, col]
        f = T[:, col].copy()
        f[r] = 0.0
        T -= np.outer(f, T[r])
        basis[r] = col
        keep.append(r)
    keep_rows = keep + [m]
    return np.ascontiguousarray(T[keep_rows]), np.ascontiguousarray(basis[keep])
