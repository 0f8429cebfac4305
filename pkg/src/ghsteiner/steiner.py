"""Exact Steiner minimal trees in R^k with the max norm."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._accel import parallel_map
from .errors import InvalidInput, TooManyTerminals
from .lp import PIVOT_TOL, solve_min_ge
from .metric import PointCloudLinf, linf
from .trees import TreeTopology, WeightedTree, contract_zero_edges, enumerate_topologies, with_labels

MAX_TERMINALS = 6


@dataclass(frozen=True)
class SteinerSolution:
    tree: WeightedTree
    length: float
    topology_index: int
    terminals: PointCloudLinf

    def vertex_coords(self) -> np.ndarray:
        """Terminal coordinates followed by internal-vertex coordinates."""
        parts = [self.terminals.coords]
        if self.tree.internal_coords is not None and len(self.tree.internal_coords):
            parts.append(self.tree.internal_coords)
        return np.vstack(parts)

    def max_edge_mismatch(self) -> float:
        """Largest |edge length - l_inf distance of its endpoints|."""
        pts = self.vertex_coords()
        gaps = [
            abs(w - linf(pts[u], pts[v])) for (u, v), w in zip(self.tree.topology.edges, self.tree.edge_lengths)
        ]
        return max(gaps, default=0.0)

    def to_dict(self) -> dict:
        out = self.tree.to_dict(terminal_coords=self.terminals.coords)
        out["topology_index"] = self.topology_index
        return out


def solve_topology(
    topology: TreeTopology, terminals: PointCloudLinf, tol: float = PIVOT_TOL, topology_index: int = 0
) -> SteinerSolution:
    """Optimal placement of internal vertices for a fixed topology.

    Variables are the internal coordinates and one bound t_e per edge with
    t_e >= +-(u_i - v_i). Terminals are shifted so their bounding box starts
    at the origin; clamping any tree into that box is 1-Lipschitz per
    coordinate, so nonnegative coordinates lose no optimum.
    """
    if topology.terminal_labels != terminals.labels:
        if topology.n_terminals != len(terminals):
            raise InvalidInput("topology and terminal set differ in size")
        topology = with_labels(topology, terminals.labels)
    n, k, I = topology.n_terminals, terminals.dim, topology.internal_count
    E = len(topology.edges)
    lo = terminals.coords.min(axis=0)
    P = terminals.coords - lo

    nvar = I * k + E
    rows, rhs = [], []
    for e, (u, v) in enumerate(topology.edges):
        for i in range(k):
            for sgn in (1.0, -1.0):
                # t_e - sgn*(u_i - v_i) >= 0, terminal coordinates move to the rhs
                row = np.zeros(nvar)
                row[I * k + e] = 1.0
                b = 0.0
                for vert, s in ((u, -sgn), (v, sgn)):
                    if vert < n:
                        b -= s * P[vert, i]
                    else:
                        row[(vert - n) * k + i] += s
                rows.append(row)
                rhs.append(b)
    c = np.zeros(nvar)
    c[I * k :] = 1.0
    res = solve_min_ge(c, np.array(rows), np.array(rhs), tol=tol)
    coords = res.x[: I * k].reshape(I, k) + lo
    pts = np.vstack([terminals.coords, coords]) if I else terminals.coords
    lengths = [linf(pts[u], pts[v]) for u, v in topology.edges]
    tree = WeightedTree(topology, lengths, coords if I else None)
    return SteinerSolution(tree, tree.length, topology_index, terminals)


def smt_linf(terminals: PointCloudLinf, tol: float = PIVOT_TOL, contract: bool = True) -> SteinerSolution:
    """Shortest tree over all full binary topologies; ties go to the lower index."""
    n = len(terminals)
    if n < 2:
        raise InvalidInput("need at least 2 terminals")
    if n > MAX_TERMINALS:
        raise TooManyTerminals(f"{n} terminals; exact search supports at most {MAX_TERMINALS}")
    if len({tuple(row) for row in terminals.coords.tolist()}) != n:
        raise InvalidInput("terminals must be distinct points")
    topologies = list(enumerate(enumerate_topologies(n)))
    sols = parallel_map(lambda item: solve_topology(item[1], terminals, tol, item[0]), topologies)
    best = min(sols, key=lambda s: (s.length, s.topology_index))
    if contract:
        best = SteinerSolution(contract_zero_edges(best.tree), best.length, best.topology_index, terminals)
    return best
