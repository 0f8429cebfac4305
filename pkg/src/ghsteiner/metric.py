"""Finite metric spaces, l-infinity point clouds and the maps between them."""

from __future__ import annotations

import csv
import io
import itertools
import json
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    GeneratorExhausted,
    InvalidInput,
    NegativeOrZeroOffDiagonal,
    NonpositiveScale,
    NonzeroDiagonal,
    NotSymmetric,
    TooFewPoints,
    TriangleViolation,
)

DEFAULT_TOL = 1e-9


def _frozen(arr) -> np.ndarray:
    out = np.array(arr, dtype=np.float64, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class FiniteMetricSpace:
    """Labeled points with a validated distance matrix.

    Validation is exact (no epsilon): inputs are literal numbers.
    """

    labels: tuple[str, ...]
    dist: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(str(x) for x in self.labels))
        object.__setattr__(self, "dist", _frozen(self.dist))
        _validate(self.labels, self.dist)

    def __len__(self):
        return len(self.labels)

    @property
    def n(self) -> int:
        return len(self.labels)

    def d(self, a, b) -> float:
        i = self.index(a) if isinstance(a, str) else a
        j = self.index(b) if isinstance(b, str) else b
        return float(self.dist[i, j])

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def diameter(self) -> float:
        return float(self.dist.max()) if self.n else 0.0

    def pairs(self):
        return itertools.combinations(range(self.n), 2)

    def relabel(self, labels: Sequence[str]) -> "FiniteMetricSpace":
        return FiniteMetricSpace(tuple(labels), self.dist)

    def __eq__(self, other):
        if not isinstance(other, FiniteMetricSpace):
            return NotImplemented
        return self.labels == other.labels and np.array_equal(self.dist, other.dist)

    def __hash__(self):
        return hash((self.labels, self.dist.tobytes()))

    def to_dict(self) -> dict:
        return {"points": list(self.labels), "distances": self.dist.tolist()}


def _validate(labels, dist):
    n = len(labels)
    if dist.ndim != 2 or dist.shape != (n, n):
        raise InvalidInput(f"distance matrix shape {dist.shape} does not match {n} labels")
    if len(set(labels)) != n:
        raise InvalidInput("point labels must be distinct")
    if not np.all(np.isfinite(dist)):
        raise InvalidInput("distances must be finite")
    for i in range(n):
        if dist[i, i] != 0.0:
            raise NonzeroDiagonal(f"dist[{labels[i]}][{labels[i]}] = {dist[i, i]} != 0", (i,))
    for i, j in itertools.combinations(range(n), 2):
        if dist[i, j] != dist[j, i]:
            raise NotSymmetric(
                f"dist[{labels[i]}][{labels[j]}] = {dist[i, j]} but "
                f"dist[{labels[j]}][{labels[i]}] = {dist[j, i]}",
                (i, j),
            )
        if not dist[i, j] > 0.0:
            raise NegativeOrZeroOffDiagonal(
                f"dist[{labels[i]}][{labels[j]}] = {dist[i, j]} must be positive", (i, j)
            )
    if n < 3:
        return
    # slack[i, j, k] = d(i,j) + d(j,k) - d(i,k)
    slack = dist[:, :, None] + dist[None, :, :] - dist[:, None, :]
    bad = np.argwhere(slack < 0.0)
    if len(bad):
        i, j, k = (int(v) for v in bad[0])
        raise TriangleViolation(
            f"d({labels[i]},{labels[k]}) = {dist[i, k]} > "
            f"d({labels[i]},{labels[j]}) + d({labels[j]},{labels[k]}) = {dist[i, j] + dist[j, k]}",
            (i, j, k),
        )


def make_space(labels: Sequence, matrix) -> FiniteMetricSpace:
    """Build and validate a finite metric space."""
    return FiniteMetricSpace(tuple(labels), np.asarray(matrix, dtype=np.float64))


def default_labels(n: int) -> tuple[str, ...]:
    if n <= 26:
        return tuple(chr(ord("a") + i) for i in range(n))
    return tuple(f"x{i}" for i in range(n))


@dataclass(frozen=True, eq=False)
class PointCloudLinf:
    """Finite labeled point set in R^k with the max norm."""

    labels: tuple[str, ...]
    coords: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(str(x) for x in self.labels))
        coords = _frozen(self.coords)
        if coords.ndim == 1:
            coords = _frozen(coords.reshape(len(self.labels), -1))
        object.__setattr__(self, "coords", coords)
        if coords.ndim != 2 or coords.shape[0] != len(self.labels):
            raise InvalidInput("need one coordinate vector per label")
        if coords.shape[1] < 1:
            raise InvalidInput("dimension must be positive")
        if len(set(self.labels)) != len(self.labels):
            raise InvalidInput("point labels must be distinct")
        if not np.all(np.isfinite(coords)):
            raise InvalidInput("coordinates must be finite")

    def __len__(self):
        return len(self.labels)

    @property
    def dim(self) -> int:
        return int(self.coords.shape[1])

    def distance_matrix(self) -> np.ndarray:
        return linf_distance_matrix(self.coords)

    def to_space(self) -> FiniteMetricSpace:
        """Induced metric; raises if two points coincide."""
        return FiniteMetricSpace(self.labels, self.distance_matrix())

    def to_dict(self) -> dict:
        return {"dim": self.dim, "points": {lab: row.tolist() for lab, row in zip(self.labels, self.coords)}}


def linf(u, v) -> float:
    return float(np.max(np.abs(np.asarray(u, dtype=np.float64) - np.asarray(v, dtype=np.float64))))


def linf_distance_matrix(coords: np.ndarray) -> np.ndarray:
    coords = np.asarray(coords, dtype=np.float64)
    return np.abs(coords[:, None, :] - coords[None, :, :]).max(axis=2)


@dataclass(frozen=True)
class GenericityReport:
    is_generic: bool
    delta: float
    witness: tuple


def delta(X: FiniteMetricSpace) -> GenericityReport:
    """Genericity margin: min triangle slack and min gap between distinct pair distances.

    The witness is ``(i, j, k)`` for a triangle slack or ``((i, j), (p, q))``
    for a distance gap.
    """
    n = X.n
    if n < 2:
        raise TooFewPoints("delta needs at least 2 points")
    d = X.dist
    if n == 2:
        return GenericityReport(True, float(d[0, 1]), ((0, 1),))

    slack = d[:, :, None] + d[None, :, :] - d[:, None, :]
    idx = np.arange(n)
    distinct = (idx[:, None, None] != idx[None, :, None]) & (idx[None, :, None] != idx[None, None, :]) & (
        idx[:, None, None] != idx[None, None, :]
    )
    slack = np.where(distinct, slack, np.inf)
    flat = int(np.argmin(slack))
    tri_value = float(slack.flat[flat])
    tri_witness = tuple(int(v) for v in np.unravel_index(flat, slack.shape))

    pairs = list(itertools.combinations(range(n), 2))
    vals = np.array([d[i, j] for i, j in pairs])
    gaps = np.abs(vals[:, None] - vals[None, :])
    gaps[np.tril_indices(len(pairs))] = np.inf
    flat = int(np.argmin(gaps))
    a, b = np.unravel_index(flat, gaps.shape)
    gap_value = float(gaps[a, b])

    if gap_value < tri_value:
        value, witness = gap_value, (pairs[a], pairs[b])
    else:
        value, witness = tri_value, tri_witness
    return GenericityReport(value > 0.0, value, witness)


def is_generic(X: FiniteMetricSpace) -> bool:
    return delta(X).is_generic


def nu(X: FiniteMetricSpace) -> tuple[np.ndarray, tuple[tuple[int, int], ...]]:
    """Sorted half-distances of X and the pair ordering that produced them.

    ``pair_order[m]`` is the unordered pair ``(i, j)``, i < j, whose distance
    lands at position m. Ties keep lexicographic pair order.
    """
    if X.n < 2:
        raise TooFewPoints("nu needs at least 2 points")
    pairs = list(X.pairs())
    vals = np.array([X.dist[i, j] for i, j in pairs])
    order = np.argsort(vals, kind="stable")
    return vals[order] / 2.0, tuple(pairs[m] for m in order)


def kuratowski(X: FiniteMetricSpace) -> PointCloudLinf:
    """x_i -> (d(x_1, x_i), ..., d(x_n, x_i)) in R^n with the max norm."""
    return PointCloudLinf(X.labels, X.dist.T.copy())


def simplex_space(n: int, d: float = 1.0) -> FiniteMetricSpace:
    """n points at mutual distance d."""
    if n < 2:
        raise TooFewPoints("simplex space needs at least 2 points")
    if not d > 0:
        raise NonpositiveScale("distance must be positive")
    m = np.full((n, n), float(d))
    np.fill_diagonal(m, 0.0)
    return FiniteMetricSpace(default_labels(n), m)


def random_generic(n: int, seed, scale: float = 1.0, max_attempts: int = 1000) -> FiniteMetricSpace:
    """Deterministic generic space with distances in [scale, 4/3 scale).

    Any two distances sum to at least 2*scale, which exceeds every third
    distance, so triangles are strict by construction. ``seed`` feeds
    ``numpy.random.default_rng`` (PCG64).
    """
    if n < 2:
        raise TooFewPoints("random_generic needs at least 2 points")
    if not scale > 0:
        raise NonpositiveScale("scale must be positive")
    rng = np.random.default_rng(seed)
    npairs = n * (n - 1) // 2
    for _ in range(max_attempts):
        vals = rng.uniform(scale, scale * 4.0 / 3.0, size=npairs)
        m = np.zeros((n, n))
        iu = np.triu_indices(n, 1)
        m[iu] = vals
        m = m + m.T
        try:
            X = FiniteMetricSpace(default_labels(n), m)
        except TriangleViolation:
            continue
        if n == 2 or delta(X).is_generic:
            return X
    raise GeneratorExhausted(f"no generic {n}-point space after {max_attempts} attempts")


def scale_space(X: FiniteMetricSpace, c: float) -> FiniteMetricSpace:
    if not c > 0:
        raise NonpositiveScale(f"scale factor must be positive, got {c}")
    return FiniteMetricSpace(X.labels, X.dist * c)


# --- serialization ---------------------------------------------------------


def space_from_dict(data: dict) -> FiniteMetricSpace:
    try:
        labels = data["points"]
        matrix = data["distances"]
    except (KeyError, TypeError) as exc:
        raise InvalidInput("space JSON needs 'points' and 'distances'") from exc
    try:
        arr = np.asarray(matrix, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise InvalidInput("distances must be a numeric matrix") from exc
    return make_space(labels, arr)


def space_from_json(text: str) -> FiniteMetricSpace:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"bad JSON: {exc}") from exc
    return space_from_dict(data)


def space_to_json(X: FiniteMetricSpace) -> str:
    return json.dumps(X.to_dict())


def space_from_csv(text: str) -> FiniteMetricSpace:
    """Square matrix; first row and first column hold the labels."""
    rows = [r for r in csv.reader(io.StringIO(text)) if any(cell.strip() for cell in r)]
    if not rows:
        raise InvalidInput("empty CSV")
    header = [c.strip() for c in rows[0][1:]]
    labels, matrix = [], []
    for r in rows[1:]:
        labels.append(r[0].strip())
        try:
            matrix.append([float(c) for c in r[1:]])
        except ValueError as exc:
            raise InvalidInput(f"non-numeric CSV entry: {exc}") from exc
    if labels != header:
        raise InvalidInput("CSV row labels must match column labels")
    if any(len(r) != len(labels) for r in matrix):
        raise InvalidInput("CSV matrix is not square")
    return make_space(labels, matrix)


def space_to_csv(X: FiniteMetricSpace) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([""] + list(X.labels))
    for lab, row in zip(X.labels, X.dist):
        w.writerow([lab] + [repr(float(v)) for v in row])
    return buf.getvalue()


def cloud_from_dict(data: dict) -> PointCloudLinf:
    try:
        dim = int(data["dim"])
        points = data["points"]
        labels = list(points.keys())
        coords = [points[k] for k in labels]
    except (KeyError, TypeError, AttributeError, ValueError) as exc:
        raise InvalidInput("cloud JSON needs 'dim' and a 'points' mapping") from exc
    if any(len(c) != dim for c in coords):
        raise DimensionMismatch(f"every point must have {dim} coordinates")
    return PointCloudLinf(tuple(labels), np.asarray(coords, dtype=np.float64).reshape(len(labels), dim))


def cloud_from_json(text: str) -> PointCloudLinf:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"bad JSON: {exc}") from exc
    return cloud_from_dict(data)
