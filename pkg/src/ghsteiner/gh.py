"""Hausdorff and Gromov-Hausdorff distances for small finite spaces."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import BudgetExceeded, DimensionMismatch, EmptySet, InvalidCorrespondence
from .metric import FiniteMetricSpace, PointCloudLinf

DEFAULT_BUDGET = 10**8


@dataclass(frozen=True)
class Correspondence:
    """Relation between point indices of X and Y."""

    pairs: frozenset

    def __init__(self, pairs):
        object.__setattr__(self, "pairs", frozenset((int(a), int(b)) for a, b in pairs))

    def check(self, nx: int, ny: int) -> None:
        for a, b in self.pairs:
            if not (0 <= a < nx and 0 <= b < ny):
                raise InvalidCorrespondence(f"pair ({a}, {b}) out of range")
        if {a for a, _ in self.pairs} != set(range(nx)):
            raise InvalidCorrespondence("correspondence does not cover X")
        if {b for _, b in self.pairs} != set(range(ny)):
            raise InvalidCorrespondence("correspondence does not cover Y")

    @classmethod
    def from_maps(cls, f, g) -> "Correspondence":
        """graph(f) U graph(g) for f: X -> Y and g: Y -> X given as index lists."""
        return cls([(x, y) for x, y in enumerate(f)] + [(x, y) for y, x in enumerate(g)])


def hausdorff_linf(A: PointCloudLinf, B: PointCloudLinf) -> float:
    if len(A) == 0 or len(B) == 0:
        raise EmptySet("Hausdorff distance needs nonempty sets")
    if A.dim != B.dim:
        raise DimensionMismatch(f"dimensions differ: {A.dim} vs {B.dim}")
    cross = np.abs(A.coords[:, None, :] - B.coords[None, :, :]).max(axis=2)
    return float(max(cross.min(axis=1).max(), cross.min(axis=0).max()))


def distortion(R: Correspondence, X: FiniteMetricSpace, Y: FiniteMetricSpace) -> float:
    R.check(X.n, Y.n)
    pairs = np.array(sorted(R.pairs), dtype=np.int64)
    xs, ys = pairs[:, 0], pairs[:, 1]
    diff = X.dist[np.ix_(xs, xs)] - Y.dist[np.ix_(ys, ys)]
    return float(np.abs(diff).max())


def search_size(nx: int, ny: int) -> int:
    return ny**nx * nx**ny


def gh_distance(X: FiniteMetricSpace, Y: FiniteMetricSpace, budget: int = DEFAULT_BUDGET, use_numba=None) -> float:
    """Exact d_GH as half the least distortion over graph(f) U graph(g).

    Every correspondence contains such a union and distortion only grows
    with the relation, so the minimum over unions is the minimum over all
    correspondences.
    """
    if X.n == 0 or Y.n == 0:
        raise EmptySet("GH distance needs nonempty spaces")
    required = search_size(X.n, Y.n)
    if required > budget:
        raise BudgetExceeded(required, budget)
    return 0.5 * kernels.min_distortion(X.dist, Y.dist, use_numba=use_numba)


def gh_distance_exhaustive(X: FiniteMetricSpace, Y: FiniteMetricSpace) -> float:
    """Half the least distortion over every bi-surjective relation (2^(nm) subsets)."""
    cells = [(a, b) for a in range(X.n) for b in range(Y.n)]
    if len(cells) > 20:
        raise BudgetExceeded(2 ** len(cells), 2**20)
    best = np.inf
    for mask in range(1, 1 << len(cells)):
        chosen = [cells[k] for k in range(len(cells)) if mask >> k & 1]
        if {a for a, _ in chosen} != set(range(X.n)) or {b for _, b in chosen} != set(range(Y.n)):
            continue
        best = min(best, distortion(Correspondence(chosen), X, Y))
    return 0.5 * best


def gh_lower_bound(X: FiniteMetricSpace, Y: FiniteMetricSpace) -> float:
    return 0.5 * abs(X.diameter() - Y.diameter())


def gh_distance_matrix(spaces, budget: int = DEFAULT_BUDGET) -> np.ndarray:
    k = len(spaces)
    out = np.zeros((k, k))
    for i, j in itertools.combinations(range(k), 2):
        out[i, j] = out[j, i] = gh_distance(spaces[i], spaces[j], budget)
    return out
