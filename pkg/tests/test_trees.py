import itertools
import json

import numpy as np
import pytest

from ghsteiner.errors import InvalidInput
from ghsteiner.metric import make_space, random_generic, scale_space, simplex_space
from ghsteiner.trees import (
    TreeTopology,
    WeightedTree,
    contract_zero_edges,
    double_factorial,
    enumerate_topologies,
    mst,
    star_topology,
    tree_from_dict,
    tree_length,
)


def brute_mst_length(X):
    """Minimum over every (n-1)-edge subset that connects all points."""
    n = X.n
    if n == 1:
        return 0.0
    cand = list(itertools.combinations(range(n), 2))
    best = np.inf
    for subset in itertools.combinations(cand, n - 1):
        parent = list(range(n))

        def find(a):
            while parent[a] != a:
                a = parent[a]
            return a

        ok = True
        for u, v in subset:
            ru, rv = find(u), find(v)
            if ru == rv:
                ok = False
                break
            parent[ru] = rv
        if ok:
            best = min(best, sum(X.dist[u, v] for u, v in subset))
    return best


def test_mst_simplex():
    assert mst(simplex_space(4)).length == 3


def test_mst_collinear():
    X = make_space("abc", [[0, 1, 3], [1, 0, 2], [3, 2, 0]])
    T = mst(X)
    assert T.length == 3 == brute_mst_length(X)
    assert {frozenset(e[:2]) for e in T.edge_list()} == {frozenset("ab"), frozenset("bc")}


def test_mst_single_point():
    T = mst(make_space(["a"], [[0]]))
    assert T.length == 0 and T.topology.edges == ()


@pytest.mark.parametrize("seed", range(15))
def test_mst_matches_brute_force(seed):
    n = 2 + seed % 5
    X = random_generic(n, seed)
    assert mst(X).length == pytest.approx(brute_mst_length(X), abs=1e-12)


def test_mst_scaling_and_relabeling(space345):
    assert mst(scale_space(space345, 2.5)).length == pytest.approx(2.5 * mst(space345).length)
    perm = [2, 0, 1]
    Y = make_space("xyz", space345.dist[np.ix_(perm, perm)])
    assert mst(Y).length == mst(space345).length


@pytest.mark.parametrize("seed", range(10))
def test_mst_at_least_diameter(seed):
    X = random_generic(5, seed)
    assert mst(X).length >= X.diameter()


def test_tree_length_examples():
    star = WeightedTree(star_topology("abc"), [0.5, 0.5, 0.5])
    assert tree_length(star) == 1.5
    assert tree_length(WeightedTree(TreeTopology(("a",), 0, ()), [])) == 0
    path = WeightedTree(TreeTopology("abc", 0, ((0, 1), (1, 2))), [1.25, 0.75])
    assert tree_length(path) == 2.0


@pytest.mark.parametrize("n", range(2, 8))
def test_topology_count_and_uniqueness(n):
    tops = list(enumerate_topologies(n, n - 2))
    assert len(tops) == max(1, double_factorial(2 * n - 5))
    assert len({t.splits() for t in tops}) == len(tops)
    for t in tops:
        deg = np.zeros(t.n_vertices, dtype=int)
        for u, v in t.edges:
            deg[u] += 1
            deg[v] += 1
        assert np.all(deg[:n] == 1) or n == 2
        assert np.all(deg[n:] == 3)


def test_topology_examples():
    assert len(list(enumerate_topologies(3, 1))) == 1
    assert len(list(enumerate_topologies(4, 2))) == 3
    assert len(list(enumerate_topologies(5, 3))) == 15
    assert [t.edges for t in enumerate_topologies(2, 0)] == [((0, 1),)]


def test_topology_fewer_internals_yields_nothing():
    assert list(enumerate_topologies(5, 2)) == []
    with pytest.raises(InvalidInput):
        list(enumerate_topologies(4, 3))


def test_topology_validation():
    with pytest.raises(InvalidInput):
        TreeTopology("abc", 1, ((0, 3), (1, 3)))  # too few edges
    with pytest.raises(InvalidInput):
        TreeTopology("ab", 1, ((0, 2), (1, 2)))  # internal vertex of degree 2
    with pytest.raises(InvalidInput):
        TreeTopology("abcd", 0, ((0, 1), (1, 0), (2, 3)))  # disconnected


def test_path_metric():
    T = WeightedTree(TreeTopology("abc", 1, ((0, 3), (1, 3), (2, 3))), [1, 2, 3])
    pm = T.path_metric()
    assert pm[0, 1] == 3 and pm[1, 2] == 5 and pm[0, 3] == 1


def test_contraction_keeps_length():
    topo = next(iter(enumerate_topologies(5)))
    lengths = [1.0, 0.0, 2.0, 0.0, 0.5, 3.0, 1.5]
    T = WeightedTree(topo, lengths, np.arange(6.0).reshape(3, 2))
    C = contract_zero_edges(T)
    assert C.length == T.length
    assert all(w > 0 for w in C.edge_lengths)
    assert C.topology.n_vertices < T.topology.n_vertices
    assert C.internal_coords.shape[1] == 2


def test_contraction_merges_into_terminal():
    T = WeightedTree(star_topology("abc"), [0.0, 1.0, 2.0], [[0.0]])
    C = contract_zero_edges(T)
    assert C.topology.internal_count == 0
    assert {(frozenset((u, v)), w) for u, v, w in C.edge_list()} == {
        (frozenset("ab"), 1.0),
        (frozenset("ac"), 2.0),
    }


def test_contraction_refuses_to_merge_terminals():
    T = WeightedTree(star_topology("abc"), [0.0, 0.0, 2.0])
    with pytest.raises(InvalidInput):
        contract_zero_edges(T)


def test_json_round_trip():
    T = WeightedTree(star_topology("abc"), [0.5, 1.0, 1.5], [[1.0, 2.0]])
    data = json.loads(json.dumps(T.to_dict()))
    back = tree_from_dict(data)
    assert back.topology == T.topology
    assert np.array_equal(back.edge_lengths, T.edge_lengths)
    assert np.array_equal(back.internal_coords, T.internal_coords)
