import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ghsteiner.errors import BudgetExceeded, DimensionMismatch, EmptySet, InvalidCorrespondence
from ghsteiner.gh import (
    Correspondence,
    distortion,
    gh_distance,
    gh_distance_exhaustive,
    gh_lower_bound,
    hausdorff_linf,
)
from ghsteiner.metric import PointCloudLinf, make_space, random_generic, simplex_space

POINT = make_space(["p"], [[0]])


def cloud(*rows):
    return PointCloudLinf(tuple(f"x{i}" for i in range(len(rows))), np.array(rows, dtype=float))


def test_hausdorff_examples():
    assert hausdorff_linf(cloud([0]), cloud([0], [3])) == 3
    A = cloud([0, 1], [2, 5])
    assert hausdorff_linf(A, A) == 0
    assert hausdorff_linf(cloud([0, 0]), cloud([1, 2])) == 2


def test_hausdorff_errors():
    with pytest.raises(DimensionMismatch):
        hausdorff_linf(cloud([0]), cloud([0, 1]))
    with pytest.raises(EmptySet):
        hausdorff_linf(PointCloudLinf((), np.zeros((0, 1))), cloud([0]))


def test_distortion_examples(space345):
    ident = Correspondence([(i, i) for i in range(3)])
    assert distortion(ident, space345, space345) == 0
    two = simplex_space(2, 2)
    assert distortion(Correspondence([(0, 0), (1, 0)]), two, POINT) == 2
    a, b = make_space("ab", [[0, 3], [3, 0]]), make_space("ab", [[0, 5], [5, 0]])
    assert distortion(Correspondence([(0, 0), (1, 1)]), a, b) == 2


def test_distortion_rejects_non_surjective(space345):
    with pytest.raises(InvalidCorrespondence):
        distortion(Correspondence([(0, 0), (1, 1)]), space345, space345)


def test_gh_examples(space345):
    assert gh_distance(space345, space345) == 0
    assert gh_distance(simplex_space(2, 2), POINT) == 1
    Y = make_space("abc", [[0, 3.05, 4], [3.05, 0, 5], [4, 5, 0]])
    assert gh_distance(space345, Y) == pytest.approx(0.025, abs=1e-12)
    assert gh_distance(space345, Y) == gh_distance_exhaustive(space345, Y)


def test_gh_point_is_half_diameter():
    for seed in range(5):
        X = random_generic(4, seed)
        assert gh_distance(X, POINT) == X.diameter() / 2


def test_lower_bound_examples(space345):
    assert gh_lower_bound(simplex_space(2, 2), POINT) == 1
    assert gh_lower_bound(space345, space345) == 0
    assert gh_lower_bound(simplex_space(2, 5), simplex_space(3, 3)) == 1


def test_budget_guard():
    X, Y = random_generic(5, 0), random_generic(5, 1)
    with pytest.raises(BudgetExceeded) as info:
        gh_distance(X, Y, budget=1000)
    assert info.value.required == 5**5 * 5**5


def test_from_maps_builds_correspondence():
    R = Correspondence.from_maps([0, 0], [1])
    assert R.pairs == {(0, 0), (1, 0)}


@pytest.mark.parametrize("seed", range(12))
def test_map_pairs_match_all_correspondences(seed):
    rng = np.random.default_rng(seed)
    sizes = rng.integers(1, 4, size=2)
    X = random_generic(int(sizes[0]), seed) if sizes[0] > 1 else POINT
    Y = random_generic(int(sizes[1]), seed + 50, scale=1.5) if sizes[1] > 1 else POINT
    assert gh_distance(X, Y) == gh_distance_exhaustive(X, Y)


def small_space(draw_seed, n):
    return random_generic(n, draw_seed) if n > 1 else POINT


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.integers(1, 4), st.integers(0, 10**6))
def test_gh_symmetric_and_triangle(a, b, c, seed):
    X, Y, Z = small_space(seed, a), small_space(seed + 1, b), small_space(seed + 2, c)
    assert gh_distance(X, Y) == gh_distance(Y, X)
    assert gh_distance(X, Z) <= gh_distance(X, Y) + gh_distance(Y, Z) + 1e-9
    assert gh_lower_bound(X, Y) <= gh_distance(X, Y)


def test_gh_relabeling_invariant(space345):
    perm = [1, 2, 0]
    Y = make_space("xyz", space345.dist[np.ix_(perm, perm)])
    assert gh_distance(space345, Y) == 0
