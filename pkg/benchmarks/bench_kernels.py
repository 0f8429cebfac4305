"""Compare the numba loop kernels with the pure-numpy kernels.

    python benchmarks/bench_kernels.py [--repeat 5]

Compile time is excluded: each numba kernel is warmed up once first.
"""

import argparse
import time

import numpy as np

from ghsteiner import kernels
from ghsteiner._accel import HAS_NUMBA
from ghsteiner.lp import solve_min_ge
from ghsteiner.metric import kuratowski, random_generic, simplex_space
from ghsteiner.steiner import solve_topology
from ghsteiner.trees import enumerate_topologies


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def gh_cases():
    for n in (3, 4, 5):
        yield f"GH search {n}x{n} points", random_generic(n, 1).dist, random_generic(n, 2).dist


def steiner_lp_case():
    cloud = kuratowski(simplex_space(6))
    topo = next(iter(enumerate_topologies(6)))
    return cloud, topo


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    if not HAS_NUMBA:
        print("numba not installed; only the numpy path is available")

    rows = []
    for name, dx, dy in gh_cases():
        fns = {"numpy": lambda: kernels.min_distortion(dx, dy, use_numba=False)}
        if HAS_NUMBA:
            kernels.min_distortion(dx, dy, use_numba=True)
            fns["numba"] = lambda: kernels.min_distortion(dx, dy, use_numba=True)
        rows.append((name, {k: best_of(f, args.repeat) for k, f in fns.items()}))

    cloud, topo = steiner_lp_case()
    rng = np.random.default_rng(0)
    A = rng.uniform(-1, 2, (60, 40))
    b = rng.uniform(-1, 1, 60)
    c = rng.uniform(0.1, 2, 40)
    for name, call in [
        ("Steiner LP, 6 terminals in R^6", lambda un: _steiner_with(un, topo, cloud)),
        ("random LP 60x40", lambda un: solve_min_ge(c, A, b, use_numba=un)),
    ]:
        fns = {"numpy": lambda call=call: call(False)}
        if HAS_NUMBA:
            call(True)
            fns["numba"] = lambda call=call: call(True)
        rows.append((name, {k: best_of(f, args.repeat) for k, f in fns.items()}))

    print(f"{'kernel':34s} {'numpy [ms]':>12s} {'numba [ms]':>12s} {'speedup':>8s}")
    for name, t in rows:
        nb = t.get("numba")
        speed = f"{t['numpy'] / nb:8.1f}" if nb else "     n/a"
        nb_s = f"{nb * 1e3:12.3f}" if nb else "         n/a"
        print(f"{name:34s} {t['numpy'] * 1e3:12.3f} {nb_s} {speed}")


def _steiner_with(use_numba, topo, cloud):
    import ghsteiner.kernels as k

    saved = k.USE_NUMBA
    k.USE_NUMBA = use_numba
    try:
        return solve_topology(topo, cloud)
    finally:
        k.USE_NUMBA = saved


if __name__ == "__main__":
    main()
