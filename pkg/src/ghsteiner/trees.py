"""Tree topologies, weighted trees, and minimal spanning trees."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .errors import InvalidInput
from .metric import FiniteMetricSpace

ZERO_EDGE_TOL = 1e-9


@dataclass(frozen=True)
class TreeTopology:
    """Tree on terminals ``0..n-1`` and anonymous internal vertices ``n..n+I-1``."""

    terminal_labels: tuple[str, ...]
    internal_count: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "terminal_labels", tuple(str(x) for x in self.terminal_labels))
        object.__setattr__(self, "edges", tuple((int(u), int(v)) for u, v in self.edges))
        nv = self.n_vertices
        if len(self.edges) != nv - 1:
            raise InvalidInput(f"a tree on {nv} vertices needs {nv - 1} edges, got {len(self.edges)}")
        deg = [0] * nv
        for u, v in self.edges:
            if not (0 <= u < nv and 0 <= v < nv) or u == v:
                raise InvalidInput(f"bad edge ({u}, {v})")
            deg[u] += 1
            deg[v] += 1
        if nv > 1 and not _connected(nv, self.edges):
            raise InvalidInput("topology is not connected")
        for v in range(self.n_terminals, nv):
            if deg[v] < 3:
                raise InvalidInput(f"internal vertex {v} has degree {deg[v]} < 3")

    @property
    def n_terminals(self) -> int:
        return len(self.terminal_labels)

    @property
    def n_vertices(self) -> int:
        return self.n_terminals + self.internal_count

    def vertex_label(self, v: int) -> str:
        if v < self.n_terminals:
            return self.terminal_labels[v]
        return f"s{v - self.n_terminals}"

    def vertex_labels(self) -> list[str]:
        return [self.vertex_label(v) for v in range(self.n_vertices)]

    def adjacency(self) -> list[list[tuple[int, int]]]:
        """Per vertex: list of (neighbor, edge index)."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n_vertices)]
        for e, (u, v) in enumerate(self.edges):
            adj[u].append((v, e))
            adj[v].append((u, e))
        return adj

    def path_edges(self, a: int, b: int) -> list[int]:
        return _path_edges(self.adjacency(), a, b)

    def terminal_path_matrix(self) -> tuple[list[tuple[int, int]], np.ndarray]:
        """Incidence of edges on terminal-pair paths: rows are pairs (p, q), p < q."""
        adj = self.adjacency()
        n = self.n_terminals
        pairs = [(p, q) for p in range(n) for q in range(p + 1, n)]
        inc = np.zeros((len(pairs), len(self.edges)))
        for r, (p, q) in enumerate(pairs):
            inc[r, _path_edges(adj, p, q)] = 1.0
        return pairs, inc

    def splits(self) -> frozenset:
        """Terminal bipartitions induced by edges; identifies the topology up to isomorphism."""
        adj = self.adjacency()
        n = self.n_terminals
        out = set()
        for u, v in self.edges:
            side = _component_terminals(adj, u, blocked=v, n_terminals=n)
            other = frozenset(range(n)) - side
            out.add(frozenset((side, other)))
        return frozenset(out)


def _connected(nv, edges) -> bool:
    adj = [[] for _ in range(nv)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == nv


def _path_edges(adj, a, b) -> list[int]:
    prev = {a: (None, None)}
    q = deque([a])
    while q:
        u = q.popleft()
        if u == b:
            break
        for w, e in adj[u]:
            if w not in prev:
                prev[w] = (u, e)
                q.append(w)
    out = []
    u = b
    while prev[u][0] is not None:
        u, e = prev[u]
        out.append(e)
    return out[::-1]


def _component_terminals(adj, start, blocked, n_terminals) -> frozenset:
    seen = {start, blocked}
    stack = [start]
    terms = set()
    while stack:
        u = stack.pop()
        if u < n_terminals:
            terms.add(u)
        for w, _ in adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return frozenset(terms)


@dataclass(frozen=True, eq=False)
class WeightedTree:
    """A topology with edge lengths and optional internal-vertex coordinates."""

    topology: TreeTopology
    edge_lengths: np.ndarray = field(repr=False)
    internal_coords: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        lengths = np.array(self.edge_lengths, dtype=np.float64, copy=True).reshape(-1)
        if lengths.shape[0] != len(self.topology.edges):
            raise InvalidInput("need one length per edge")
        if np.any(lengths < 0) or not np.all(np.isfinite(lengths)):
            raise InvalidInput("edge lengths must be finite and nonnegative")
        lengths.setflags(write=False)
        object.__setattr__(self, "edge_lengths", lengths)
        if self.internal_coords is not None:
            coords = np.array(self.internal_coords, dtype=np.float64, copy=True)
            if not (coords.ndim == 2 and coords.shape[0] == self.topology.internal_count):
                coords = coords.reshape(self.topology.internal_count, -1)
            coords.setflags(write=False)
            object.__setattr__(self, "internal_coords", coords)

    @property
    def length(self) -> float:
        return tree_length(self)

    def edge_list(self) -> list[tuple[str, str, float]]:
        t = self.topology
        return [(t.vertex_label(u), t.vertex_label(v), float(w)) for (u, v), w in zip(t.edges, self.edge_lengths)]

    def path_metric(self) -> np.ndarray:
        """Tree-path distances between all vertices."""
        t = self.topology
        nv = t.n_vertices
        adj = t.adjacency()
        out = np.zeros((nv, nv))
        for s in range(nv):
            seen = {s}
            stack = [(s, 0.0)]
            while stack:
                u, acc = stack.pop()
                out[s, u] = acc
                for w, e in adj[u]:
                    if w not in seen:
                        seen.add(w)
                        stack.append((w, acc + self.edge_lengths[e]))
        return out

    def to_dict(self, terminal_coords=None) -> dict:
        t = self.topology
        out = {
            "vertices": t.vertex_labels(),
            "terminals": list(t.terminal_labels),
            "edges": [{"u": u, "v": v, "length": w} for u, v, w in self.edge_list()],
            "length": self.length,
        }
        if self.internal_coords is not None:
            coords = {t.vertex_label(t.n_terminals + i): row.tolist() for i, row in enumerate(self.internal_coords)}
            if terminal_coords is not None:
                coords = {**{lab: list(map(float, c)) for lab, c in zip(t.terminal_labels, terminal_coords)}, **coords}
            out["coordinates"] = coords
        return out


def tree_from_dict(data: dict) -> WeightedTree:
    """Inverse of ``WeightedTree.to_dict``."""
    terminals = list(data["terminals"])
    vertices = list(data["vertices"])
    index = {lab: i for i, lab in enumerate(vertices)}
    if vertices[: len(terminals)] != terminals:
        raise InvalidInput("terminals must come first in the vertex list")
    edges = [(index[e["u"]], index[e["v"]]) for e in data["edges"]]
    lengths = [float(e["length"]) for e in data["edges"]]
    topo = TreeTopology(tuple(terminals), len(vertices) - len(terminals), tuple(edges))
    coords = None
    if "coordinates" in data and topo.internal_count:
        coords = np.array([data["coordinates"][vertices[v]] for v in range(len(terminals), len(vertices))])
    return WeightedTree(topo, lengths, coords)


def tree_to_json(tree: WeightedTree) -> str:
    return json.dumps(tree.to_dict())


def tree_length(T: WeightedTree) -> float:
    return float(np.sum(T.edge_lengths))


def mst(X: FiniteMetricSpace) -> WeightedTree:
    """Kruskal with ties broken by (length, i, j)."""
    n = X.n
    cand = sorted((float(X.dist[i, j]), i, j) for i in range(n) for j in range(i + 1, n))
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    edges, lengths = [], []
    for w, i, j in cand:
        ri, rj = find(i), find(j)
        if ri == rj:
            continue
        parent[max(ri, rj)] = min(ri, rj)
        edges.append((i, j))
        lengths.append(w)
        if len(edges) == n - 1:
            break
    return WeightedTree(TreeTopology(X.labels, 0, tuple(edges)), lengths)


def mst_length(X: FiniteMetricSpace) -> float:
    return mst(X).length


def enumerate_topologies(n_terminals: int, max_internal: int | None = None) -> Iterator[TreeTopology]:
    """All full binary topologies on labeled terminals, each exactly once.

    Leaves are added one at a time by subdividing every edge of the previous
    tree, which yields each topology once; there are (2n-5)!! of them.
    Full binary trees always have ``n - 2`` internal vertices, so a smaller
    ``max_internal`` yields nothing.
    """
    n = n_terminals
    if n < 2:
        raise InvalidInput("need at least 2 terminals")
    if max_internal is None:
        max_internal = n - 2
    if max_internal > n - 2 or max_internal < 0:
        raise InvalidInput(f"max_internal must lie in [0, {n - 2}]")
    labels = tuple(str(i) for i in range(n))
    if max_internal < n - 2:
        return
    if n == 2:
        yield TreeTopology(labels, 0, ((0, 1),))
        return
    # internal vertices are numbered n, n+1, ... in order of creation
    for edges in _insert_leaves([(0, n), (1, n), (2, n)], 3, n, n + 1):
        yield TreeTopology(labels, n - 2, tuple(edges))


def _insert_leaves(edges, leaf, n, next_internal):
    if leaf == n:
        yield edges
        return
    for k, (u, v) in enumerate(edges):
        s = next_internal
        new = edges[:k] + [(u, s), (s, v), (leaf, s)] + edges[k + 1 :]
        yield from _insert_leaves(new, leaf + 1, n, next_internal + 1)


def with_labels(topology: TreeTopology, labels: Sequence[str]) -> TreeTopology:
    return TreeTopology(tuple(labels), topology.internal_count, topology.edges)


def star_topology(labels: Sequence[str]) -> TreeTopology:
    n = len(labels)
    return TreeTopology(tuple(labels), 1, tuple((i, n) for i in range(n)))


def double_factorial(k: int) -> int:
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


def contract_zero_edges(tree: WeightedTree, tol: float = ZERO_EDGE_TOL) -> WeightedTree:
    """Merge the endpoints of every edge shorter than ``tol``.

    A terminal absorbs internal vertices merged into it; surviving internal
    vertices are renumbered in their original order.
    """
    t = tree.topology
    n, nv = t.n_terminals, t.n_vertices
    parent = list(range(nv))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for (u, v), w in zip(t.edges, tree.edge_lengths):
        if w < tol:
            ru, rv = find(u), find(v)
            if ru == rv:
                continue
            if ru < n and rv < n:
                raise InvalidInput("zero-length edge between two terminals")
            # terminals (lower ids) win as representatives
            parent[max(ru, rv)] = min(ru, rv)

    reps = sorted({find(v) for v in range(n, nv)} - set(range(n)))
    remap = {v: v for v in range(n)}
    for k, r in enumerate(reps):
        remap[r] = n + k
    edges, lengths = [], []
    for (u, v), w in zip(t.edges, tree.edge_lengths):
        ru, rv = find(u), find(v)
        if ru == rv:
            continue
        edges.append((remap[ru], remap[rv]))
        lengths.append(w)
    coords = None
    if tree.internal_coords is not None:
        k = tree.internal_coords.shape[1]
        coords = np.array([tree.internal_coords[r - n] for r in reps]).reshape(len(reps), k)
    topo = TreeTopology(t.terminal_labels, len(reps), tuple(edges))
    return WeightedTree(topo, lengths, coords)

