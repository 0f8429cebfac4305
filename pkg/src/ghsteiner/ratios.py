"""Steiner ratio, Steiner-Gromov ratio and subratio for concrete boundaries,
the simplex-space family, and the small-neighborhood check smt = mf."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np

from .embed import anchor_from_space, nu_inverse, theorem1_radius
from .filling import CHECK_TOL, mf, mf_topology
from .gh import DEFAULT_BUDGET, gh_distance_matrix
from .metric import FiniteMetricSpace, PointCloudLinf, linf, simplex_space
from .steiner import MAX_TERMINALS, smt_linf
from .trees import mst, star_topology

SAMPLE_SHRINK = 1.0 - 1e-6


@dataclass(frozen=True)
class RatioReport:
    smt_len: float
    mst_len: float
    mf_len: float
    sr: float
    sgr: float
    ssr: float
    context: str

    @classmethod
    def from_lengths(cls, smt_len, mst_len, mf_len, context):
        return cls(smt_len, mst_len, mf_len, smt_len / mst_len, mf_len / mst_len, mf_len / smt_len, context)

    def to_dict(self) -> dict:
        return asdict(self)


def ratios_linf(terminals: PointCloudLinf) -> RatioReport:
    X = terminals.to_space()
    return RatioReport.from_lengths(
        smt_linf(terminals).length, mst(X).length, mf(X).length, f"R^{terminals.dim} with the max norm"
    )


@dataclass(frozen=True)
class SimplexRow:
    n: int
    mf: float
    mst: float
    ratio: float
    exact_ratio: Fraction
    source: str
    mf_lower: float

    def to_dict(self) -> dict:
        d = asdict(self)
        d["exact_ratio"] = f"{self.exact_ratio.numerator}/{self.exact_ratio.denominator}"
        return d


def simplex_experiment(n_max: int = 6, lp_max: int = 6) -> list[SimplexRow]:
    """mf, mst and their ratio for the equilateral spaces Delta_n, n = 2..n_max.

    Up to ``lp_max`` points mf comes from the full topology search. Beyond
    that the star weights give an upper bound, and half the shortest closed
    tour through the points (each tree edge is walked at least twice) a
    lower bound; both equal n/2 for Delta_n.
    """
    if not 2 <= n_max <= 12:
        raise ValueError("n_max must lie in [2, 12]")
    rows = []
    for n in range(2, n_max + 1):
        X = simplex_space(n)
        m = mst(X).length
        if n <= lp_max:
            f = mf(X).length
            source = "lp"
        else:
            f = mf_topology(star_topology(X.labels), X).length
            source = "star"
        # all closed tours of Delta_n have the same length
        lower = 0.5 * float(sum(X.dist[i, (i + 1) % n] for i in range(n)))
        rows.append(SimplexRow(n, f, m, f / m, Fraction(n, 2) / (n - 1), source, lower))
    return rows


def gap_law_holds(rows) -> bool:
    """ratio(n) - 1/2 == 1/(2(n-1)) in exact arithmetic, ratios strictly decreasing above 1/2."""
    exact = [r.exact_ratio for r in rows]
    law = all(r.exact_ratio - Fraction(1, 2) == Fraction(1, 2 * (r.n - 1)) for r in rows)
    decreasing = all(a > b for a, b in zip(exact, exact[1:]))
    return law and decreasing and all(x > Fraction(1, 2) for x in exact)


@dataclass(frozen=True)
class Theorem1Trial:
    seed: int
    n: int
    m: int
    radius: float
    ball_radius: float
    smt: float
    mf: float
    mst: float
    gh_linf_gap: float
    max_steiner_offset: float
    passed: bool
    detail: str

    def to_dict(self) -> dict:
        return asdict(self)


def sample_boundary(X: FiniteMetricSpace, m: int, seed) -> tuple[list[FiniteMetricSpace], np.ndarray]:
    """m spaces drawn uniformly (in nu coordinates) from the theorem-one ball around X."""
    r = theorem1_radius(X, m)
    anchor = anchor_from_space(X)
    rng = np.random.default_rng(seed)
    center = anchor.center
    W = center + rng.uniform(-r * SAMPLE_SHRINK, r * SAMPLE_SHRINK, size=(m, len(center)))
    spaces = [nu_inverse(anchor, w) for w in W]
    return spaces, W


def verify_theorem1(
    X: FiniteMetricSpace, m: int, seed, tol: float = CHECK_TOL, budget: int = DEFAULT_BUDGET
) -> Theorem1Trial:
    """smt of the nu images equals mf of the boundary in GH distances,
    and every Steiner vertex stays in the isometry ball around nu(X)."""
    if not 2 <= m <= MAX_TERMINALS:
        raise ValueError(f"boundary size must lie in [2, {MAX_TERMINALS}]")
    rep_r = theorem1_radius(X, m)
    anchor = anchor_from_space(X)
    spaces, W = sample_boundary(X, m, seed)
    labels = tuple(f"M{i}" for i in range(m))
    D = gh_distance_matrix(spaces, budget)
    Dlinf = np.array([[linf(a, b) for b in W] for a in W])
    gap = float(np.abs(D - Dlinf).max())
    boundary = FiniteMetricSpace(labels, D)
    A = PointCloudLinf(labels, W)
    smt_sol = smt_linf(A, contract=False)
    mf_len = mf(boundary).length
    mst_len = mst(boundary).length
    center = anchor.center
    offsets = [linf(v, center) for v in smt_sol.vertex_coords()]
    offset = max(offsets)
    problems = []
    if abs(smt_sol.length - mf_len) > tol:
        problems.append(f"smt {smt_sol.length!r} != mf {mf_len!r}")
    if gap > 1e-9:
        problems.append(f"GH vs l-inf gap {gap:.3g}")
    if not offset < anchor.ball_radius:
        problems.append(f"Steiner vertex at offset {offset!r} outside ball {anchor.ball_radius!r}")
    if not (mf_len <= smt_sol.length + tol and smt_sol.length <= mst_len + tol):
        problems.append("mf <= smt <= mst fails")
    return Theorem1Trial(
        seed=int(seed),
        n=X.n,
        m=m,
        radius=rep_r,
        ball_radius=anchor.ball_radius,
        smt=smt_sol.length,
        mf=mf_len,
        mst=mst_len,
        gh_linf_gap=gap,
        max_steiner_offset=offset,
        passed=not problems,
        detail="; ".join(problems) or "ok",
    )

