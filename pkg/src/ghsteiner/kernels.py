"""Hot loops: simplex pivoting and the exhaustive distortion search.

Each kernel has a loop version (numba-compiled when available) and a
vectorized numpy version. ``USE_NUMBA`` from ``_accel`` picks the default.
Both versions must return identical answers; the test suite checks this.
"""

import numpy as np

from ._accel import USE_NUMBA, njit

SIMPLEX_OPTIMAL = 0
SIMPLEX_UNBOUNDED = 1
SIMPLEX_ITERATION_LIMIT = 2


# --- simplex --------------------------------------------------------------


@njit
def simplex_loops(T, basis, n_enter, tol, max_iter):
    """Bland-rule primal simplex on a canonical tableau, in place.

    ``T`` has constraint rows on top and the reduced-cost row last; the last
    column is the right-hand side. Only columns ``< n_enter`` may enter.
    Returns ``(status, pivots)``.
    """
    m = T.shape[0] - 1
    ncol = T.shape[1]
    for it in range(max_iter):
        col = -1
        for j in range(n_enter):
            if T[m, j] < -tol:
                col = j
                break
        if col < 0:
            return SIMPLEX_OPTIMAL, it
        best = np.inf
        for i in range(m):
            if T[i, col] > tol:
                r = T[i, ncol - 1] / T[i, col]
                if r < best:
                    best = r
        if best == np.inf:
            return SIMPLEX_UNBOUNDED, it
        row = -1
        for i in range(m):
            if T[i, col] > tol and T[i, ncol - 1] / T[i, col] <= best + tol:
                if row < 0 or basis[i] < basis[row]:
                    row = i
        piv = T[row, col]
        for j in range(ncol):
            T[row, j] /= piv
        for i in range(m + 1):
            if i != row:
                f = T[i, col]
                if f != 0.0:
                    for j in range(ncol):
                        T[i, j] -= f * T[row, j]
        basis[row] = col
    return SIMPLEX_ITERATION_LIMIT, max_iter


def simplex_numpy(T, basis, n_enter, tol, max_iter):
    """Same contract as ``simplex_loops`` with vectorized pivot selection."""
    m = T.shape[0] - 1
    for it in range(max_iter):
        neg = np.flatnonzero(T[m, :n_enter] < -tol)
        if neg.size == 0:
            return SIMPLEX_OPTIMAL, it
        col = neg[0]
        colv = T[:m, col]
        ok = colv > tol
        if not ok.any():
            return SIMPLEX_UNBOUNDED, it
        ratios = np.full(m, np.inf)
        ratios[ok] = T[:m, -1][ok] / colv[ok]
        best = ratios.min()
        cand = np.flatnonzero(ok & (ratios <= best + tol))
        row = cand[np.argmin(basis[cand])]
        T[row] /= T[row, col]
        f = T[:, col].copy()
        f[row] = 0.0
        T -= np.outer(f, T[row])
        basis[row] = col
    return SIMPLEX_ITERATION_LIMIT, max_iter


def run_simplex(T, basis, n_enter, tol, max_iter, use_numba=None):
    if use_numba is None:
        use_numba = USE_NUMBA
    if use_numba:
        status, pivots = simplex_loops(T, basis, n_enter, tol, max_iter)
    else:
        status, pivots = simplex_numpy(T, basis, n_enter, tol, max_iter)
    return int(status), int(pivots)


# --- distortion search ------------------------------------------------------


@njit
def min_distortion_loops(dx, dy):
    """Minimum distortion of graph(f) U graph(g) over all f: X->Y, g: Y->X.

    Depth-first over f then g, pruning any partial assignment whose
    distortion already reaches the incumbent.
    """
    n = dx.shape[0]
    m = dy.shape[0]
    best = np.inf
    f = np.full(n, -1, dtype=np.int64)
    fd = np.zeros(n + 1)
    g = np.full(m, -1, dtype=np.int64)
    gd = np.zeros(m + 1)
    i = 0
    while i >= 0:
        f[i] += 1
        if f[i] >= m:
            f[i] = -1
            i -= 1
            continue
        y = f[i]
        d = fd[i]
        for j in range(i):
            d = max(d, abs(dx[i, j] - dy[y, f[j]]))
        if d >= best:
            continue
        if i < n - 1:
            fd[i + 1] = d
            i += 1
            continue
        gd[0] = d
        k = 0
        while k >= 0:
            g[k] += 1
            if g[k] >= n:
                g[k] = -1
                k -= 1
                continue
            x = g[k]
            e = gd[k]
            for l in range(k):
                e = max(e, abs(dy[k, l] - dx[x, g[l]]))
            for xp in range(n):
                e = max(e, abs(dx[xp, x] - dy[f[xp], k]))
            if e >= best:
                continue
            if k < m - 1:
                gd[k + 1] = e
                k += 1
                continue
            best = e
    return best


def _all_maps(n, m):
    """Every map {0..n-1} -> {0..m-1} as rows of an (m**n, n) array."""
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.indices((m,) * n).reshape(n, -1).T
    return np.ascontiguousarray(grids, dtype=np.int64)


def _map_distortions(maps, dsrc, ddst):
    # |dsrc[i, j] - ddst[f(i), f(j)]| maximized over i, j
    img = ddst[maps[:, :, None], maps[:, None, :]]
    return np.abs(img - dsrc[None, :, :]).reshape(len(maps), -1).max(axis=1)


def min_distortion_numpy(dx, dy, chunk_elems=1 << 22):
    """Vectorized version of ``min_distortion_loops``."""
    n, m = dx.shape[0], dy.shape[0]
    F = _all_maps(n, m)
    G = _all_maps(m, n)
    dis_f = _map_distortions(F, dx, dy)
    dis_g = _map_distortions(G, dy, dx)
    order_f = np.argsort(dis_f, kind="stable")
    order_g = np.argsort(dis_g, kind="stable")
    G = G[order_g]
    dis_g = dis_g[order_g]
    # cross[g, x, y] = dx[x, g(y)]
    cross_g = dx[np.arange(n)[None, :, None], G[:, None, :]]
    best = np.inf
    step = max(1, chunk_elems // max(1, len(G) * n * m))
    for start in range(0, len(order_f), step):
        idx = order_f[start : start + step]
        base = dis_f[idx]
        keep = base < best
        if not keep.any():
            break
        idx, base = idx[keep], base[keep]
        live = dis_g < best
        if not live.any():
            break
        cg = cross_g[live]
        # cross_f[f, x, y] = dy[f(x), y]
        cross_f = dy[F[idx]]
        codis = np.abs(cross_f[:, None, :, :] - cg[None, :, :, :]).reshape(len(idx), len(cg), -1).max(axis=2)
        total = np.maximum(np.maximum(codis, base[:, None]), dis_g[live][None, :])
        best = min(best, float(total.min()))
    return best


def min_distortion(dx, dy, use_numba=None):
    dx = np.ascontiguousarray(dx, dtype=np.float64)
    dy = np.ascontiguousarray(dy, dtype=np.float64)
    if use_numba is None:
        use_numba = USE_NUMBA
    if use_numba:
        return float(min_distortion_loops(dx, dy))
    return float(min_distortion_numpy(dx, dy))
