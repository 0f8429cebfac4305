import numpy as np
import pytest
from scipy.optimize import linprog

from ghsteiner.errors import InvalidInput, TooManyTerminals
from ghsteiner.filling import mf
from ghsteiner.metric import PointCloudLinf, kuratowski, simplex_space
from ghsteiner.steiner import smt_linf, solve_topology
from ghsteiner.trees import TreeTopology, contract_zero_edges, enumerate_topologies, mst, star_topology


def cloud(rows, labels=None):
    rows = np.asarray(rows, dtype=float)
    return PointCloudLinf(labels or tuple("abcdefgh"[: len(rows)]), rows)


def highs_topology_length(topology, pts):
    """Independent LP with free internal coordinates, solved by HiGHS."""
    n, k, I = topology.n_terminals, pts.shape[1], topology.internal_count
    E = len(topology.edges)
    nvar = I * k + E
    A, b = [], []
    for e, (u, v) in enumerate(topology.edges):
        for i in range(k):
            for sgn in (1, -1):
                # sgn*(x_u - x_v) - t_e <= 0
                row = np.zeros(nvar)
                row[I * k + e] = -1
                rhs = 0.0
                for vert, s in ((u, sgn), (v, -sgn)):
                    if vert < n:
                        rhs -= s * pts[vert, i]
                    else:
                        row[(vert - n) * k + i] += s
                A.append(row)
                b.append(rhs)
    c = np.r_[np.zeros(I * k), np.ones(E)]
    bounds = [(None, None)] * (I * k) + [(0, None)] * E
    return linprog(c, A_ub=np.array(A), b_ub=np.array(b), bounds=bounds, method="highs").fun


def test_star_on_corners():
    C = cloud([[0, 0], [2, 0], [0, 2]])
    sol = solve_topology(star_topology(C.labels), C)
    assert sol.length == pytest.approx(3, abs=1e-9)
    assert sol.max_edge_mismatch() < 1e-12
    assert all(w == pytest.approx(1) for w in sol.tree.edge_lengths)


def test_single_edge():
    C = cloud([[0], [5]])
    assert solve_topology(TreeTopology("ab", 0, ((0, 1),)), C).length == 5
    assert smt_linf(C).length == 5


def test_collinear_degenerates():
    C = cloud([[0, 0], [1, 0], [3, 0]])
    sol = solve_topology(star_topology(C.labels), C)
    assert sol.length == pytest.approx(3)
    assert sol.length == pytest.approx(mst(C.to_space()).length)
    assert contract_zero_edges(sol.tree).topology.internal_count == 0


def test_smt_corners_below_mst():
    C = cloud([[0, 0], [2, 0], [0, 2]])
    s = smt_linf(C).length
    assert s == pytest.approx(3)
    assert mst(C.to_space()).length == 4
    assert mf(C.to_space()).length == pytest.approx(3)


def test_smt_kuratowski_simplex():
    assert smt_linf(kuratowski(simplex_space(3))).length == pytest.approx(1.5, abs=1e-9)


@pytest.mark.parametrize("seed", range(10))
def test_topology_lp_matches_highs(seed):
    rng = np.random.default_rng(seed)
    n, k = int(rng.integers(3, 6)), int(rng.integers(1, 4))
    C = cloud(rng.uniform(-2, 3, size=(n, k)))
    for topo in list(enumerate_topologies(n))[:5]:
        ours = solve_topology(topo, C).length
        assert ours == pytest.approx(highs_topology_length(topo, C.coords), abs=1e-8)


@pytest.mark.parametrize("seed", range(8))
def test_translation_and_scaling(seed):
    rng = np.random.default_rng(seed)
    C = cloud(rng.uniform(0, 1, size=(4, 3)))
    topo = next(iter(enumerate_topologies(4)))
    base = solve_topology(topo, C).length
    shifted = cloud(C.coords + rng.uniform(-5, 5, size=3))
    scaled = cloud(C.coords * 3.5)
    assert solve_topology(topo, shifted).length == pytest.approx(base, abs=1e-9)
    assert solve_topology(topo, scaled).length == pytest.approx(3.5 * base, abs=1e-9)


@pytest.mark.parametrize("seed", range(10))
def test_solution_is_consistent(seed):
    rng = np.random.default_rng(seed)
    C = cloud(rng.uniform(0, 1, size=(5, 2)))
    raw = smt_linf(C, contract=False)
    sol = smt_linf(C)
    assert sol.length == raw.length == pytest.approx(sol.tree.length)
    assert raw.max_edge_mismatch() < 1e-12
    assert sol.max_edge_mismatch() < 1e-12
    X = C.to_space()
    assert mf(X).length - 1e-7 <= sol.length <= mst(X).length + 1e-7


def test_limits():
    with pytest.raises(TooManyTerminals):
        smt_linf(cloud(np.eye(7)))
    with pytest.raises(InvalidInput):
        smt_linf(cloud([[0.0]]))
    with pytest.raises(InvalidInput):
        smt_linf(cloud([[0.0], [0.0]]))
