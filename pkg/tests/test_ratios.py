from fractions import Fraction

import numpy as np
import pytest

from ghsteiner.errors import NotGeneric
from ghsteiner.metric import PointCloudLinf, kuratowski, random_generic, simplex_space
from ghsteiner.ratios import (
    RatioReport,
    gap_law_holds,
    ratios_linf,
    sample_boundary,
    simplex_experiment,
    verify_theorem1,
)
from ghsteiner.embed import anchor_from_space, theorem1_radius
from ghsteiner.metric import linf


def test_ratios_corners():
    rep = ratios_linf(PointCloudLinf("abc", [[0, 0], [2, 0], [0, 2]]))
    assert rep.sr == pytest.approx(0.75)
    assert rep.sgr == pytest.approx(0.75)
    assert rep.ssr == pytest.approx(1.0)


def test_ratios_two_points():
    rep = ratios_linf(PointCloudLinf("ab", [[0, 1], [4, 2]]))
    assert rep.sr == rep.sgr == rep.ssr == 1


def test_ratios_kuratowski_simplex():
    rep = ratios_linf(kuratowski(simplex_space(3)))
    assert rep.ssr == pytest.approx(1, abs=1e-9)
    assert rep.smt_len == pytest.approx(1.5, abs=1e-9)


def test_report_identities():
    rep = RatioReport.from_lengths(3.0, 4.0, 2.5, "test")
    assert rep.sr == 3 / 4 and rep.sgr == 2.5 / 4 and rep.ssr == 2.5 / 3


@pytest.mark.parametrize("seed", range(8))
def test_ratio_ordering(seed):
    rng = np.random.default_rng(seed)
    rep = ratios_linf(PointCloudLinf("abcd", rng.uniform(size=(4, 3))))
    assert 0 < rep.sgr <= rep.sr + 1e-9 <= 1 + 1e-9
    assert rep.ssr <= 1 + 1e-9


def test_simplex_experiment_rows():
    rows = {r.n: r for r in simplex_experiment(12)}
    assert (rows[3].mf, rows[3].mst, rows[3].ratio) == pytest.approx((1.5, 2, 0.75))
    assert (rows[5].mf, rows[5].mst, rows[5].ratio) == pytest.approx((2.5, 4, 0.625))
    assert rows[12].exact_ratio == Fraction(6, 11)
    assert rows[12].ratio == pytest.approx(0.5455, abs=1e-4)
    assert [r.source for r in rows.values()].count("lp") == 5


def test_gap_law():
    rows = simplex_experiment(12)
    assert gap_law_holds(rows)
    for r in rows:
        assert r.exact_ratio - Fraction(1, 2) == Fraction(1, 2 * (r.n - 1))
        assert r.ratio - 0.5 == pytest.approx(1 / (2 * (r.n - 1)), abs=1e-12)


def test_simplex_experiment_bounds():
    with pytest.raises(ValueError):
        simplex_experiment(13)


def test_theorem1_345(space345):
    trial = verify_theorem1(space345, 3, 0)
    assert trial.passed, trial.detail
    assert trial.max_steiner_offset < trial.ball_radius


def test_theorem1_two_point_boundary(space345):
    trial = verify_theorem1(space345, 2, 3)
    assert trial.passed
    assert trial.smt == pytest.approx(trial.mf) == pytest.approx(trial.mst)


def test_theorem1_rejects_non_generic(delta3):
    with pytest.raises(NotGeneric):
        verify_theorem1(delta3, 3, 0)


def test_samples_stay_in_radius(space345):
    spaces, W = sample_boundary(space345, 4, 9)
    r = theorem1_radius(space345, 4)
    center = anchor_from_space(space345).center
    assert all(linf(w, center) < r for w in W)
    assert len(spaces) == 4


@pytest.mark.parametrize("seed", range(5))
def test_theorem1_four_points(seed):
    assert verify_theorem1(random_generic(4, seed), 3, seed).passed
