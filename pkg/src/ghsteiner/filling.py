"""Minimal fillings of finite metric spaces by weighted-tree LPs."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._accel import parallel_map
from .errors import InvalidInput, TooManyPoints
from .lp import PIVOT_TOL, solve_min_ge
from .metric import FiniteMetricSpace
from .trees import (
    ZERO_EDGE_TOL,
    TreeTopology,
    WeightedTree,
    contract_zero_edges,
    enumerate_topologies,
    mst,
    with_labels,
)

MAX_POINTS = 6
CHECK_TOL = 1e-7


@dataclass(frozen=True)
class FillingSolution:
    tree: WeightedTree
    length: float
    topology_index: int
    tight_pairs: tuple = field(default=())

    def to_dict(self) -> dict:
        out = self.tree.to_dict()
        out["topology_index"] = self.topology_index
        out["tight_pairs"] = [list(p) for p in self.tight_pairs]
        return out


def _tight_pairs(tree: WeightedTree, X: FiniteMetricSpace, tol: float = CHECK_TOL):
    pm = tree.path_metric()
    labels = X.labels
    return tuple(
        (labels[p], labels[q]) for p, q in X.pairs() if pm[p, q] - X.dist[p, q] <= tol * max(1.0, X.dist[p, q])
    )


def mf_topology(
    topology: TreeTopology, X: FiniteMetricSpace, tol: float = PIVOT_TOL, topology_index: int = 0
) -> FillingSolution:
    """Least total weight on a fixed topology whose path metric dominates X."""
    if topology.terminal_labels != X.labels:
        if topology.n_terminals != X.n:
            raise InvalidInput("topology and space differ in size")
        topology = with_labels(topology, X.labels)
    pairs, inc = topology.terminal_path_matrix()
    b = np.array([X.dist[p, q] for p, q in pairs])
    c = np.ones(len(topology.edges))
    res = solve_min_ge(c, inc, b, tol=tol)
    tree = WeightedTree(topology, res.x)
    return FillingSolution(tree, tree.length, topology_index, _tight_pairs(tree, X))


def mf(X: FiniteMetricSpace, tol: float = PIVOT_TOL, contract: bool = True) -> FillingSolution:
    """Minimal filling: best weighted binary topology, zero edges contracted."""
    n = X.n
    if n < 2:
        raise InvalidInput("minimal filling needs at least 2 points")
    if n > MAX_POINTS:
        raise TooManyPoints(f"{n} points; exact search supports at most {MAX_POINTS}")
    topologies = list(enumerate(enumerate_topologies(n)))
    sols = parallel_map(lambda item: mf_topology(item[1], X, tol, item[0]), topologies)
    best = min(sols, key=lambda s: (s.length, s.topology_index))
    if contract:
        tree = contract_zero_edges(best.tree, ZERO_EDGE_TOL)
        best = FillingSolution(tree, best.length, best.topology_index, _tight_pairs(tree, X))
    return best


def mf_length(X: FiniteMetricSpace) -> float:
    return mf(X).length


def filling_space(sol: FillingSolution, X: FiniteMetricSpace) -> FiniteMetricSpace:
    """Metric space on all vertices of the filling that extends X.

    Distances are shortest paths in the tree plus the complete graph on the
    terminals weighted by X. The pure tree-path metric would overstate the
    distance of any terminal pair whose constraint is slack.
    """
    t = sol.tree.topology
    if t.terminal_labels != X.labels:
        raise InvalidInput("filling terminals do not match the space")
    nv = t.n_vertices
    D = np.full((nv, nv), np.inf)
    np.fill_diagonal(D, 0.0)
    for (u, v), w in zip(t.edges, sol.tree.edge_lengths):
        D[u, v] = D[v, u] = min(D[u, v], w)
    n = X.n
    D[:n, :n] = np.minimum(D[:n, :n], X.dist)
    # Floyd-Warshall, repeated until float rounding settles
    for _ in range(4):
        prev = D.copy()
        for k in range(nv):
            D = np.minimum(D, D[:, k : k + 1] + D[k : k + 1, :])
        if np.array_equal(prev, D):
            break
    D = np.minimum(D, D.T)
    return FiniteMetricSpace(tuple(t.vertex_labels()), D)


@dataclass(frozen=True)
class CharacterizationVerdict:
    ok: bool
    filling_length: float
    mst_of_vertices: float
    mf_value: float
    detail: str

    def __bool__(self):
        return self.ok


def verify_filling_characterization(
    sol: FillingSolution, X: FiniteMetricSpace, mf_value: float | None = None, tol: float = CHECK_TOL
) -> CharacterizationVerdict:
    """Check |G| = mst(V) = mf(X) where V carries the filling metric.

    Also checks that V restricted to the terminals is X and that every tree
    edge has its weight as the distance in V.
    """
    if mf_value is None:
        mf_value = mf(X).length
    tree = contract_zero_edges(sol.tree)
    try:
        V = filling_space(FillingSolution(tree, tree.length, sol.topology_index), X)
    except Exception as exc:  # invalid metric means the tree is not a filling
        return CharacterizationVerdict(False, tree.length, float("nan"), mf_value, f"no metric on V: {exc}")
    n = X.n
    if not np.allclose(V.dist[:n, :n], X.dist, rtol=0.0, atol=tol):
        i, j = np.unravel_index(np.argmax(np.abs(V.dist[:n, :n] - X.dist)), (n, n))
        return CharacterizationVerdict(
            False, tree.length, float("nan"), mf_value, f"V does not extend X at ({X.labels[i]}, {X.labels[j]})"
        )
    for (u, v), w in zip(tree.topology.edges, tree.edge_lengths):
        if abs(V.dist[u, v] - w) > tol:
            return CharacterizationVerdict(
                False, tree.length, float("nan"), mf_value, f"edge ({u}, {v}) is shortcut in V"
            )
    m = mst(V).length
    G = tree.length
    ok = abs(G - m) <= tol and abs(G - mf_value) <= tol
    detail = "ok" if ok else f"|G| = {G!r}, mst(V) = {m!r}, mf = {mf_value!r}"
    return CharacterizationVerdict(ok, G, m, mf_value, detail)
