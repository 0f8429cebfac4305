"""JIT switch for the numeric kernels.

Set ``GHSTEINER_NO_JIT=1`` to skip numba and run the pure-numpy kernels.
Numba's own ``NUMBA_DISABLE_JIT`` also works but runs the loop kernels as
plain Python, which is much slower than the numpy path.
"""

import os

_FALSY = {"", "0", "false", "no", "off"}

JIT_REQUESTED = os.environ.get("GHSTEINER_NO_JIT", "").strip().lower() in _FALSY

try:
    import numba as _nb
    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is an optional extra
    _nb = None
    HAS_NUMBA = False

USE_NUMBA = JIT_REQUESTED and HAS_NUMBA


def njit(func):
    """Compile ``func`` with numba when available, else return it unchanged.

    Loop kernels are always wrapped so they can be benchmarked against the
    numpy path; which path the library calls is decided by ``USE_NUMBA``.
    """
    if not HAS_NUMBA:
        return func
    return _nb.njit(cache=True, nogil=True)(func)


def thread_count() -> int:
    raw = os.environ.get("GH_STEINER_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def parallel_map(fn, items):
    """Ordered map, threaded when ``GH_STEINER_THREADS`` > 1."""
    items = list(items)
    workers = min(thread_count(), len(items))
    if workers <= 1:
        return [fn(item) for item in items]
    from concurrent.futures import ThreadPoolExecutor

    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
