"""Seeded verification suites shared by the CLI and the acceptance tests.

Every suite returns a ``SuiteResult``. ``chain`` collects (label, mf, smt,
mst) for each boundary touched, so the ordering mf <= smt <= mst can be
audited across suites.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field

import numpy as np

from ._accel import parallel_map
from .embed import anchor_from_space, embed_into_gh, nu_inverse, realize_filling
from .filling import mf, verify_filling_characterization
from .gh import DEFAULT_BUDGET, gh_distance, gh_distance_exhaustive
from .metric import (
    FiniteMetricSpace,
    PointCloudLinf,
    kuratowski,
    linf,
    make_space,
    nu,
    random_generic,
    simplex_space,
)
from .ratios import SAMPLE_SHRINK, gap_law_holds, simplex_experiment, verify_theorem1
from .steiner import smt_linf
from .trees import double_factorial, enumerate_topologies, mst

CHAIN_TOL = 1e-7


@dataclass
class SuiteResult:
    name: str
    passed: bool = True
    checks: int = 0
    failures: list = field(default_factory=list)
    records: list = field(default_factory=list)
    chain: list = field(default_factory=list)
    elapsed: float = 0.0

    def fail(self, message: str) -> None:
        self.passed = False
        self.failures.append(message)

    def check(self, ok: bool, message: str) -> bool:
        self.checks += 1
        if not ok:
            self.fail(message)
        return ok

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f"; first failure: {self.failures[0]}" if self.failures else ""
        return f"[{status}] {self.name}: {self.checks} checks in {self.elapsed:.2f}s{extra}"

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checks": self.checks,
            "failures": self.failures,
            "records": self.records,
            "elapsed": round(self.elapsed, 3),
        }


def trial_seeds(seed: int, count: int) -> list[int]:
    """Child seeds for independent trials (PCG64 stream of ``seed``)."""
    rng = np.random.default_rng(seed)
    return [int(s) for s in rng.integers(0, 2**32, size=count)]


def _timed(fn):
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        res = fn(*args, **kwargs)
        res.elapsed = time.perf_counter() - t0
        return res

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def _chain_entry(label, X: FiniteMetricSpace, cloud: PointCloudLinf):
    return (label, mf(X).length, smt_linf(cloud).length, mst(X).length)


@_timed
def simplex_suite(n_max: int = 6, table_max: int = 12, tol: float = 1e-9) -> SuiteResult:
    """mf(Delta_n) = n/2 and mst(Delta_n) = n - 1 over every binary topology."""
    res = SuiteResult("simplex spaces")
    for n in range(2, n_max + 1):
        X = simplex_space(n)
        res.check(len(list(enumerate_topologies(n))) == max(1, double_factorial(2 * n - 5)), f"topology count n={n}")
        f = mf(X)
        m = mst(X).length
        res.check(abs(f.length - n / 2) <= tol, f"mf(Delta_{n}) = {f.length!r}")
        res.check(m == n - 1, f"mst(Delta_{n}) = {m!r}")
        res.check(bool(verify_filling_characterization(f, X, f.length)), f"characterization n={n}")
        res.chain.append((f"Delta_{n}", f.length, smt_linf(kuratowski(X)).length, m))
    rows = simplex_experiment(table_max)
    for row in rows:
        res.check(abs(row.ratio - float(row.exact_ratio)) <= tol, f"ratio n={row.n}: {row.ratio!r}")
        res.check(abs(row.mf - row.mf_lower) <= tol, f"star bound n={row.n}")
        res.records.append(row.to_dict())
    res.check(gap_law_holds(rows), "gap law ratio(n) - 1/2 = 1/(2(n-1))")
    return res


def random_cloud(rng, n: int, k: int) -> PointCloudLinf:
    while True:
        coords = rng.uniform(0.0, 1.0, size=(n, k))
        if len({tuple(r) for r in coords.tolist()}) == n:
            return PointCloudLinf(tuple(f"t{i}" for i in range(n)), coords)


@_timed
def linf_filling_suite(count: int = 100, seed: int = 0, n_max: int = 4, k_max: int = 4, tol: float = 1e-7) -> SuiteResult:
    """Shortest trees in R^k_inf have the length of the minimal filling of their terminals."""
    res = SuiteResult("l-inf Steiner tree = minimal filling")
    rng = np.random.default_rng(seed)
    jobs = []
    for t in range(count):
        n = int(rng.integers(2, n_max + 1))
        k = int(rng.integers(1, k_max + 1))
        jobs.append((t, random_cloud(rng, n, k)))

    def run(job):
        t, cloud = job
        X = cloud.to_space()
        return t, cloud, smt_linf(cloud).length, mf(X).length, mst(X).length

    for t, cloud, s, f, m in parallel_map(run, jobs):
        res.check(abs(s - f) <= tol, f"trial {t} (n={len(cloud)}, k={cloud.dim}): smt {s!r} vs mf {f!r}")
        res.chain.append((f"linf-filling-{t}", f, s, m))
        res.records.append({"trial": t, "n": len(cloud), "k": cloud.dim, "smt": s, "mf": f, "mst": m})
    return res


@_timed
def local_isometry_suite(
    count3: int = 50, count4: int = 10, seed: int = 0, tol: float = 1e-9, budget: int = DEFAULT_BUDGET
) -> SuiteResult:
    """Near a generic anchor, exhaustive GH distance = l-inf distance of nu images."""
    res = SuiteResult("local isometry of nu")
    jobs = [(3, s) for s in trial_seeds(seed, count3)] + [(4, s) for s in trial_seeds(seed + 1, count4)]

    def run(job):
        n, s = job
        anchor = anchor_from_space(random_generic(n, s))
        rng = np.random.default_rng(s)
        r = anchor.ball_radius * SAMPLE_SHRINK
        w = anchor.center + rng.uniform(-r, r, size=(2, len(anchor.center)))
        Y, Z = nu_inverse(anchor, w[0]), nu_inverse(anchor, w[1])
        return n, s, Y, Z, gh_distance(Y, Z, budget), linf(nu(Y)[0], nu(Z)[0])

    for n, s, Y, Z, g, d in parallel_map(run, jobs):
        res.check(abs(g - d) <= tol, f"n={n} seed={s}: GH {g!r} vs l-inf {d!r}")
        res.records.append({"n": n, "seed": s, "gh": g, "linf": d})
        pair = PointCloudLinf(("Y", "Z"), np.vstack([nu(Y)[0], nu(Z)[0]]))
        res.chain.append((f"local-isometry-{n}-{s}", *_pair_chain(pair)))
    return res


def _pair_chain(cloud):
    X = cloud.to_space()
    return mf(X).length, smt_linf(cloud).length, mst(X).length


@_timed
def theorem1_suite(n: int = 3, m: int = 3, trials: int = 50, seed: int = 0, tol: float = 1e-7) -> SuiteResult:
    """smt = mf for boundaries of m spaces inside the shrunken ball around a generic n-point space."""
    res = SuiteResult(f"small-neighborhood smt = mf (n={n}, m={m})")
    seeds = trial_seeds(seed, trials)

    def run(s):
        X = random_generic(n, s)
        return verify_theorem1(X, m, s + 1, tol=tol)

    for trial in parallel_map(run, seeds):
        res.check(trial.passed, f"seed {trial.seed}: {trial.detail}")
        res.records.append(trial.to_dict())
        res.chain.append((f"thm1-{n}-{trial.seed}", trial.mf, trial.smt, trial.mst))
    return res


def realization_spaces(seed: int = 0, count: int = 5) -> list[FiniteMetricSpace]:
    out = [simplex_space(3), make_space("abc", [[0, 3, 4], [3, 0, 5], [4, 5, 0]])]
    out += [random_generic(3, s) for s in trial_seeds(seed, count)]
    return out


@_timed
def realization_suite(seed: int = 0, count: int = 5, spaces=None, tol: float = 1e-7) -> SuiteResult:
    """Minimal fillings carried into GH space keep their length; every edge checked by exhaustive GH."""
    res = SuiteResult("minimal filling realized in GH space")
    spaces = realization_spaces(seed, count) if spaces is None else spaces
    for idx, X in enumerate(spaces):
        real = realize_filling(X, seed + idx, verify=True)
        f = real.filling.length
        res.check(abs(real.length - f) <= tol, f"space {idx}: image length {real.length!r} vs mf {f!r}")
        V = real.vertex_space
        for (u, v), g in zip(real.tree.topology.edges, real.gh_edge_lengths):
            res.check(abs(g - V.dist[u, v]) <= 1e-9, f"space {idx}: edge {V.labels[u]}-{V.labels[v]} GH {g!r}")
        # terminals land isometrically
        rec = real.record
        for i, j in X.pairs():
            a, b = X.labels[i], X.labels[j]
            g = gh_distance(rec.spaces[a], rec.spaces[b])
            res.check(abs(g - X.dist[i, j]) <= 1e-9, f"space {idx}: terminals {a},{b} GH {g!r}")
        res.records.append({"space": X.to_dict(), "mf": f, "gh_tree_length": real.length})
        res.chain.append((f"thm2-{idx}", f, smt_linf(kuratowski(X)).length, mst(X).length))
    return res


@_timed
def embedding_suite(seed: int = 0, sizes=(2, 3, 4), per_size: int = 3, tol: float = 1e-9) -> SuiteResult:
    """Every pairwise GH distance of embedded images equals the source distance."""
    res = SuiteResult("isometric embedding into k-point spaces")
    for n in sizes:
        for s in trial_seeds(seed + n, per_size):
            X = random_generic(n, s)
            rec = embed_into_gh(X, s)
            for i, j in X.pairs():
                g = gh_distance(rec.spaces[X.labels[i]], rec.spaces[X.labels[j]])
                res.check(abs(g - X.dist[i, j]) <= tol, f"n={n} seed={s} pair {i},{j}: {g!r}")
    return res


def gh_corpus() -> list[FiniteMetricSpace]:
    """Ten fixed spaces with at most three points."""
    return [
        make_space(["a"], [[0]]),
        make_space("ab", [[0, 1], [1, 0]]),
        make_space("ab", [[0, 2], [2, 0]]),
        make_space("ab", [[0, 3.5], [3.5, 0]]),
        simplex_space(3),
        make_space("abc", [[0, 3, 4], [3, 0, 5], [4, 5, 0]]),
        make_space("abc", [[0, 1, 2], [1, 0, 1], [2, 1, 0]]),
        make_space("abc", [[0, 1, 1], [1, 0, 1.5], [1, 1.5, 0]]),
        make_space("abc", [[0, 2, 2], [2, 0, 2], [2, 2, 0]]),
        make_space("abc", [[0, 0.5, 3], [0.5, 0, 3.25], [3, 3.25, 0]]),
    ]


@_timed
def correspondence_suite(corpus=None) -> SuiteResult:
    """Pairs-of-maps minimum equals the minimum over all correspondences, exactly."""
    res = SuiteResult("map-pair reduction vs all correspondences")
    corpus = gh_corpus() if corpus is None else corpus
    for (i, X), (j, Y) in itertools.product(enumerate(corpus), repeat=2):
        fast = gh_distance(X, Y)
        slow = gh_distance_exhaustive(X, Y)
        res.check(fast == slow, f"spaces {i},{j}: {fast!r} vs {slow!r}")
    return res


@_timed
def gh_axioms_suite(corpus=None, tol: float = 1e-9) -> SuiteResult:
    """Exact symmetry and the triangle inequality on all triples of the corpus."""
    res = SuiteResult("GH symmetry and triangle inequality")
    corpus = gh_corpus() if corpus is None else corpus
    k = len(corpus)
    D = np.array([[gh_distance(corpus[i], corpus[j]) for j in range(k)] for i in range(k)])
    for i, j in itertools.product(range(k), repeat=2):
        res.check(D[i, j] == D[j, i], f"asymmetry at {i},{j}")
    for i, j, l in itertools.product(range(k), repeat=3):
        res.check(D[i, l] <= D[i, j] + D[j, l] + tol, f"triangle {i},{j},{l}")
    for i in range(k):
        res.check(D[i, i] == 0.0, f"self distance {i}")
    return res


def chain_suite(results, tol: float = CHAIN_TOL) -> SuiteResult:
    """mf <= smt <= mst on every boundary collected by ``results``."""
    t0 = time.perf_counter()
    res = SuiteResult("mf <= smt <= mst")
    for r in results:
        for label, f, s, m in r.chain:
            res.check(f <= s + tol and s <= m + tol, f"{label}: mf {f!r}, smt {s!r}, mst {m!r}")
    res.elapsed = time.perf_counter() - t0
    return res
