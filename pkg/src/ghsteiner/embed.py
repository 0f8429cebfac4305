"""Isometric embeddings of finite metric spaces into Gromov-Hausdorff space.

Near a generic k-point space the sorted-half-distance map is an isometry
onto an l-infinity ball, so points of that ball can be pulled back to
k-point spaces. Composing Kuratowski, zero padding and recentering gives an
isometric embedding of any finite space into the k-point spaces.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import NotGeneric, OutsideBall, TooFewPoints
from .filling import FillingSolution, filling_space, mf
from .gh import DEFAULT_BUDGET, gh_distance
from .metric import (
    FiniteMetricSpace,
    PointCloudLinf,
    delta,
    kuratowski,
    linf,
    nu,
    random_generic,
    scale_space,
)
from .trees import TreeTopology, WeightedTree


@dataclass(frozen=True)
class GenericAnchor:
    space: FiniteMetricSpace
    pair_order: tuple[tuple[int, int], ...]
    delta: float
    ball_radius: float

    @property
    def center(self) -> np.ndarray:
        return nu(self.space)[0]

    @property
    def k(self) -> int:
        return self.space.n

    def to_dict(self) -> dict:
        return {
            "space": self.space.to_dict(),
            "pair_order": [list(p) for p in self.pair_order],
            "delta": self.delta,
            "ball_radius": self.ball_radius,
        }


def anchor_from_space(X: FiniteMetricSpace) -> GenericAnchor:
    rep = delta(X)
    if X.n < 3 or not rep.is_generic:
        raise NotGeneric(f"anchor must be a generic space with at least 3 points (delta = {rep.delta})")
    _, order = nu(X)
    return GenericAnchor(X, order, rep.delta, rep.delta / 6.0)


def make_anchor(k: int, target_radius: float, seed) -> GenericAnchor:
    """Seeded generic k-point space rescaled so its ball radius is at least ``target_radius``."""
    if k < 3:
        raise TooFewPoints("anchors need at least 3 points")
    base = random_generic(k, seed)
    # slight overshoot keeps ball_radius >= target_radius despite rounding
    c = 6.0 * target_radius / delta(base).delta * (1.0 + 1e-12)
    return anchor_from_space(scale_space(base, c))


def nu_inverse(anchor: GenericAnchor, w, labels=None) -> FiniteMetricSpace:
    """The k-point space whose sorted half-distances are ``w``."""
    w = np.asarray(w, dtype=np.float64)
    center = anchor.center
    if w.shape != center.shape:
        raise OutsideBall(f"vector has dimension {w.shape}, anchor needs {center.shape}")
    off = linf(w, center)
    if not off < anchor.ball_radius:
        raise OutsideBall(f"offset {off} not below ball radius {anchor.ball_radius}")
    k = anchor.k
    D = np.zeros((k, k))
    for m, (i, j) in enumerate(anchor.pair_order):
        D[i, j] = D[j, i] = 2.0 * w[m]
    return FiniteMetricSpace(labels or anchor.space.labels, D)


def min_k_for(n: int) -> int:
    """Least k with n <= k(k-1)/2."""
    k = 2
    while k * (k - 1) // 2 < n:
        k += 1
    return max(k, 3)


@dataclass(frozen=True)
class EmbeddingRecord:
    anchor: GenericAnchor
    source: FiniteMetricSpace
    images: dict
    spaces: dict
    scale_used: float = 1.0

    def image_cloud(self) -> PointCloudLinf:
        labels = self.source.labels
        return PointCloudLinf(labels, np.array([self.images[lab] for lab in labels]))

    def to_dict(self) -> dict:
        return {
            "anchor": self.anchor.to_dict(),
            "source": self.source.to_dict(),
            "images": {lab: np.asarray(v).tolist() for lab, v in self.images.items()},
            "spaces": {lab: s.to_dict() for lab, s in self.spaces.items()},
            "scale_used": self.scale_used,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def embed_into_gh(X: FiniteMetricSpace, seed) -> EmbeddingRecord:
    """Isometric embedding of X into the k-point spaces, k minimal.

    Kuratowski into R^n, zero padding to R^N with N = k(k-1)/2, then the
    cloud's box midpoint is moved onto the anchor center and each point is
    pulled back by ``nu_inverse``.
    """
    n = X.n
    if n < 2:
        raise TooFewPoints("embedding needs at least 2 points")
    k = min_k_for(n)
    N = k * (k - 1) // 2
    cloud = kuratowski(X).coords
    padded = np.zeros((n, N))
    padded[:, :n] = cloud
    anchor = make_anchor(k, 2.0 * X.diameter(), seed)
    mid = 0.5 * (padded.min(axis=0) + padded.max(axis=0))
    images = padded - mid + anchor.center
    inner_labels = tuple(f"p{i}" for i in range(k))
    spaces = {lab: nu_inverse(anchor, images[i], inner_labels) for i, lab in enumerate(X.labels)}
    return EmbeddingRecord(anchor, X, {lab: images[i] for i, lab in enumerate(X.labels)}, spaces)


def embedding_distortion(rec: EmbeddingRecord, budget: int = DEFAULT_BUDGET) -> float:
    """Largest |d_GH(image_a, image_b) - d(a, b)| by exhaustive GH search."""
    X = rec.source
    worst = 0.0
    for i, j in X.pairs():
        g = gh_distance(rec.spaces[X.labels[i]], rec.spaces[X.labels[j]], budget)
        worst = max(worst, abs(g - X.dist[i, j]))
    return worst


@dataclass(frozen=True)
class Realization:
    filling: FillingSolution
    vertex_space: FiniteMetricSpace
    record: EmbeddingRecord
    tree: WeightedTree
    gh_edge_lengths: tuple

    @property
    def length(self) -> float:
        return self.tree.length

    def to_dict(self) -> dict:
        return {
            "mf": self.filling.length,
            "filling": self.filling.to_dict(),
            "vertex_space": self.vertex_space.to_dict(),
            "embedding": self.record.to_dict(),
            "gh_tree": self.tree.to_dict(),
        }


def realize_filling(X: FiniteMetricSpace, seed, budget: int = DEFAULT_BUDGET, verify: bool = True) -> Realization:
    """Carry a minimal filling of X into GH space as a tree of k-point spaces.

    Edge lengths of the returned tree are exhaustive GH distances between
    adjacent image spaces when ``verify`` is set, else the l-infinity
    distances of their images (equal by the local isometry).
    """
    sol = mf(X)
    V = filling_space(sol, X)
    rec = embed_into_gh(V, seed)
    topo = sol.tree.topology
    lengths = []
    for u, v in topo.edges:
        a, b = V.labels[u], V.labels[v]
        if verify:
            lengths.append(gh_distance(rec.spaces[a], rec.spaces[b], budget))
        else:
            lengths.append(linf(rec.images[a], rec.images[b]))
    image_topo = TreeTopology(topo.terminal_labels, topo.internal_count, topo.edges)
    tree = WeightedTree(image_topo, lengths)
    return Realization(sol, V, rec, tree, tuple(lengths))


def theorem1_radius(X: FiniteMetricSpace, boundary_size: int) -> float:
    """Radius around X within which any ``boundary_size`` spaces have smt = mf."""
    if boundary_size < 2:
        raise ValueError("boundary size must be at least 2")
    rep = delta(X)
    if not rep.is_generic:
        raise NotGeneric(f"space is not generic (delta = {rep.delta})")
    return rep.delta / 6.0 / (1 + 2 * (boundary_size - 1))
