import numpy as np
import pytest

from ghsteiner.errors import TooManyPoints
from ghsteiner.filling import FillingSolution, filling_space, mf, mf_topology, verify_filling_characterization
from ghsteiner.metric import kuratowski, make_space, random_generic, scale_space, simplex_space
from ghsteiner.steiner import smt_linf
from ghsteiner.trees import TreeTopology, WeightedTree, mst, star_topology


def test_star_over_simplex(delta3):
    sol = mf_topology(star_topology(delta3.labels), delta3)
    assert sol.length == pytest.approx(1.5, abs=1e-12)
    assert np.allclose(sol.tree.edge_lengths, 0.5)


def test_single_edge_topology():
    X = make_space("ab", [[0, 7], [7, 0]])
    assert mf_topology(TreeTopology("ab", 0, ((0, 1),)), X).length == 7
    assert mf(X).length == 7


def test_star_over_345(space345):
    # spokes solve w_a + w_b = 3, w_a + w_c = 4, w_b + w_c = 5
    oracle = np.linalg.solve(np.array([[1, 1, 0], [1, 0, 1], [0, 1, 1]]), [3, 4, 5])
    sol = mf_topology(star_topology(space345.labels), space345)
    assert np.allclose(sol.tree.edge_lengths, oracle)
    assert mf(space345).length == pytest.approx(oracle.sum()) == pytest.approx(6)


@pytest.mark.parametrize("n", range(2, 7))
def test_mf_simplex(n):
    assert mf(simplex_space(n)).length == pytest.approx(n / 2, abs=1e-9)


def test_too_many_points():
    with pytest.raises(TooManyPoints):
        mf(simplex_space(7))


@pytest.mark.parametrize("seed", range(20))
def test_bounds_and_feasibility(seed):
    n = 2 + seed % 4
    X = random_generic(n, seed, scale=1 + seed % 3)
    sol = mf(X)
    m = mst(X).length
    assert m / 2 - 1e-9 <= sol.length <= m + 1e-9
    pm = sol.tree.path_metric()[:n, :n]
    assert np.all(pm >= X.dist - 1e-9)
    assert len(sol.tight_pairs) >= 1
    assert all(w >= 0 for w in sol.tree.edge_lengths)
    assert sol.length == pytest.approx(sol.tree.length)


@pytest.mark.parametrize("seed", range(6))
def test_scaling(seed):
    X = random_generic(4, seed)
    assert mf(scale_space(X, 2.75)).length == pytest.approx(2.75 * mf(X).length, abs=1e-9)


@pytest.mark.parametrize("seed", range(12))
def test_matches_kuratowski_steiner(seed):
    n = 3 + seed % 2
    X = random_generic(n, seed, scale=0.5 + seed)
    assert mf(X).length == pytest.approx(smt_linf(kuratowski(X)).length, abs=1e-7)


def test_characterization_examples(delta3):
    assert verify_filling_characterization(mf(delta3), delta3)
    two = make_space("ab", [[0, 7], [7, 0]])
    assert verify_filling_characterization(mf(two), two)
    sol = mf(delta3)
    inflated = WeightedTree(sol.tree.topology, sol.tree.edge_lengths + 1)
    verdict = verify_filling_characterization(FillingSolution(inflated, inflated.length, 0), delta3)
    assert not verdict
    assert "mf" in verdict.detail


@pytest.mark.parametrize("seed", range(10))
def test_characterization_random(seed):
    X = random_generic(3 + seed % 3, seed)
    assert verify_filling_characterization(mf(X), X).ok


def test_filling_space_extends_x(space345):
    V = filling_space(mf(space345), space345)
    assert np.allclose(V.dist[:3, :3], space345.dist)
    assert V.n == 4
