"""Tests of the closed-form ensemble variances against frozen references."""

import math

import pytest

from speckle_squeeze import analytic

# references evaluated once from the formulas and frozen
SINGLE_WFS_X = 0.5676676416183064  # 1 - (1 - e^{-2})/2
SINGLE_WFS_P = 4.194528049465325  # 1 + (e^{2} - 1)/2
SINGLE_OFF = 2.3810978455418157  # 1 + (cosh 2 - 1)/2
TWO_WFS_X = 0.8125636955321157
TWO_WFS_P = 1.9980918717922589
TWO_OFF = 1.4053277836621874
THRESHOLD = 1.0593061708232432


def test_single_wfs_reference_point():
    th = analytic.single_wfs(64, 64, 2.0, 1.0)
    assert th.var_x == pytest.approx(SINGLE_WFS_X, abs=1e-12)
    assert th.var_p == pytest.approx(SINGLE_WFS_P, abs=1e-12)
    assert th.family == "single" and th.wfs


def test_single_no_wfs_reference_point():
    th = analytic.single_no_wfs(64, 64, 2.0, 1.0)
    assert th.var_x == pytest.approx(SINGLE_OFF, abs=1e-12)
    assert th.var_p == th.var_x


def test_partial_illumination_scales_linearly():
    full = analytic.single_wfs(64, 64, 2.0, 1.0)
    half = analytic.single_wfs(32, 64, 2.0, 1.0)
    assert 1.0 - half.var_x == pytest.approx(0.5 * (1.0 - full.var_x), rel=1e-12)
    one = analytic.single_no_wfs(1, 64, 2.0, 1.0)
    assert one.var_x == pytest.approx(1.0 + (math.cosh(2.0) - 1.0) / 128.0, abs=1e-14)


def test_two_mode_reference_points():
    th = analytic.two_wfs(64, 64, 2.0, 0.6)
    assert th.var_x == pytest.approx(TWO_WFS_X, abs=1e-12)
    assert th.var_p == pytest.approx(TWO_WFS_P, abs=1e-12)
    off = analytic.two_no_wfs(64, 64, 2.0, 0.6)
    assert off.var_x == pytest.approx(TWO_OFF, abs=1e-12)
    assert off.var_p == off.var_x


def test_zero_squeezing_is_shot_noise():
    for fn in (analytic.single_wfs, analytic.single_no_wfs, analytic.two_wfs, analytic.two_no_wfs):
        th = fn(64, 64, 2.0, 0.0)
        assert th.var_x == 1.0 and th.var_p == 1.0


def test_threshold_value():
    assert analytic.threshold_g() == pytest.approx(THRESHOLD, abs=1e-12)
    assert round(analytic.threshold_g(), 2) == 1.06


def test_threshold_is_squeezing_boundary():
    g = analytic.threshold_g()
    assert abs(analytic.two_wfs(64, 64, 2.0, g).var_x - 1.0) < 1e-12
    assert analytic.two_wfs(64, 64, 2.0, g - 0.01).var_x < 1.0
    assert analytic.two_wfs(64, 64, 2.0, g + 0.01).var_x > 1.0
    # independent of the channel configuration
    assert abs(analytic.two_wfs(8, 32, 4.0, g).var_x - 1.0) < 1e-12


def test_rayleigh_ratio_against_quadrature_oracle():
    # independent route: moments of the Rayleigh amplitude density
    # f(a) = 2 a exp(-a^2), so ratio = E[a]^2 / E[a^2]
    quad = pytest.importorskip("scipy.integrate").quad
    e1 = quad(lambda a: a * 2 * a * math.exp(-(a**2)), 0, math.inf)[0]
    e2 = quad(lambda a: a**2 * 2 * a * math.exp(-(a**2)), 0, math.inf)[0]
    assert analytic.rayleigh_cross_moment_ratio() == pytest.approx(e1**2 / e2, abs=1e-10)


def test_shaping_always_helps_x():
    for s in (1.0, 1.5, 2.0, 4.0, 10.0):
        for p in (0.1, 0.5, 1.0, 2.0):
            assert analytic.difference_no_wfs_minus_wfs("single", 64, 64, s, p) > 0.0
            assert analytic.difference_no_wfs_minus_wfs("two", 64, 64, s, p) > 0.0
    assert analytic.difference_no_wfs_minus_wfs("single", 64, 64, 2.0, 0.0) == 0.0
    # reference gaps at the headline configuration
    assert analytic.difference_no_wfs_minus_wfs("single", 64, 64, 2.0, 1.0) == pytest.approx(
        SINGLE_OFF - SINGLE_WFS_X, abs=1e-12
    )
    assert analytic.difference_no_wfs_minus_wfs("two", 64, 64, 2.0, 0.6) == pytest.approx(
        TWO_OFF - TWO_WFS_X, abs=1e-12
    )
    with pytest.raises(ValueError):
        analytic.difference_no_wfs_minus_wfs("other", 64, 64, 2.0, 1.0)


def test_monotonic_in_s():
    # more reflection -> less of the input survives -> everything closer to 1
    rs = [analytic.single_wfs(64, 64, s, 1.0).var_x for s in (1.0, 2.0, 4.0, 8.0)]
    assert all(a < b < 1.0 for a, b in zip(rs, rs[1:]))
    offs = [analytic.single_no_wfs(64, 64, s, 1.0).var_x for s in (1.0, 2.0, 4.0, 8.0)]
    assert all(a > b > 1.0 for a, b in zip(offs, offs[1:]))


def test_single_wfs_uncertainty_product():
    for s in (1.0, 2.0, 4.0):
        for r in (0.1, 0.7, 1.5):
            th = analytic.single_wfs(64, 64, s, r)
            assert th.var_x * th.var_p >= 1.0 - 1e-12
            assert th.var_x > 0.0
    # equality exactly when all light is transmitted (K/(Ns) = 1) or r = 0
    full = analytic.single_wfs(64, 64, 1.0, 1.3)
    assert full.var_x * full.var_p == pytest.approx(1.0, abs=1e-12)
    idle = analytic.single_wfs(32, 64, 2.0, 0.0)
    assert idle.var_x * idle.var_p == 1.0
    partial = analytic.single_wfs(32, 64, 2.0, 1.3)
    assert partial.var_x * partial.var_p > 1.0 + 1e-6


def test_threshold_splits_g_axis():
    g_star = analytic.threshold_g()
    for k, n, s in ((64, 64, 2.0), (8, 32, 1.5)):
        for g in (0.2, 0.6, 1.0, 1.05, 1.07, 1.5, 2.0):
            below = analytic.two_wfs(k, n, s, g).var_x < 1.0
            assert below == (g < g_star)


def test_two_wfs_p_always_antisqueezed():
    for g in (0.1, 0.6, 1.06, 2.0):
        assert analytic.two_wfs(64, 64, 2.0, g).var_p > 1.0


def test_channel_validation():
    with pytest.raises(ValueError):
        analytic.single_wfs(65, 64, 2.0, 1.0)
    with pytest.raises(ValueError):
        analytic.single_wfs(0, 64, 2.0, 1.0)
    with pytest.raises(ValueError):
        analytic.single_wfs(64, 64, 0.8, 1.0)
    with pytest.raises(ValueError):
        analytic.two_wfs(63, 64, 2.0, 0.6)
