"""Tests of scattering-row sampling, normalization and wavefront shaping."""

import math

import numpy as np
import pytest

from speckle_squeeze.gaussian import variance_of_form
from speckle_squeeze.medium import (
    MediumConfig,
    ScatterRow,
    apply_wfs,
    coefficient_scales,
    quadrature_forms,
    sample_row,
)
from speckle_squeeze.montecarlo import ExperimentSpec, build_input_state


def test_config_validation():
    with pytest.raises(ValueError):
        MediumConfig(N=0, s=2.0)
    with pytest.raises(ValueError):
        MediumConfig(N=8, s=0.5)
    cfg = MediumConfig(N=64, s=2.0)
    assert cfg.mean_transmission == pytest.approx(1 / 128)
    assert cfg.mean_reflection == pytest.approx(1 / 128)


def test_row_norm_enforced():
    t = np.array([0.6 + 0.0j, 0.8j])
    with pytest.raises(ValueError):
        ScatterRow(t, np.array([0.1 + 0.0j, 0.0j]))  # norm 1.01
    row = ScatterRow(t, np.zeros(2, dtype=complex))
    assert row.total_transmission == pytest.approx(1.0, abs=1e-15)


def test_row_shape_mismatch():
    with pytest.raises(ValueError):
        ScatterRow(np.ones(3, dtype=complex) / math.sqrt(3), np.zeros(2, dtype=complex))


def test_sampled_rows_are_normalized():
    cfg = MediumConfig(N=32, s=2.0)
    rng = np.random.default_rng(11)
    for _ in range(200):
        row = sample_row(cfg, rng)
        norm = np.sum(np.abs(row.t) ** 2) + np.sum(np.abs(row.refl) ** 2)
        assert abs(norm - 1.0) <= 1e-12


def test_sample_row_consumes_fixed_draws():
    # identical generator state -> identical row, and exactly 4N draws used
    cfg = MediumConfig(N=16, s=3.0)
    r1 = sample_row(cfg, np.random.default_rng(5))
    rng = np.random.default_rng(5)
    r2 = sample_row(cfg, rng)
    np.testing.assert_array_equal(r1.t, r2.t)
    follow = rng.standard_normal()
    rng_ref = np.random.default_rng(5)
    rng_ref.standard_normal(4 * 16)
    assert follow == rng_ref.standard_normal()


def test_mean_transmission_matches_ensemble():
    cfg = MediumConfig(N=64, s=2.0)
    rng = np.random.default_rng(1234)
    rows = 20000
    means = np.empty(rows)
    for i in range(rows):
        means[i] = sample_row(cfg, rng).total_transmission / cfg.N
    se = means.std(ddof=1) / math.sqrt(rows)
    assert abs(means.mean() - cfg.mean_transmission) <= 3 * se


def test_phases_are_uniform():
    cfg = MediumConfig(N=64, s=2.0)
    rng = np.random.default_rng(99)
    phases = np.concatenate([np.angle(sample_row(cfg, rng).t) for _ in range(400)])
    n = phases.size
    # first circular moment of a uniform phase is 0 with se 1/sqrt(2n)
    se = 1.0 / math.sqrt(2 * n)
    assert abs(np.mean(np.cos(phases))) <= 4 * se
    assert abs(np.mean(np.sin(phases))) <= 4 * se


def test_cross_moment_ratio_near_rayleigh_value():
    cfg = MediumConfig(N=64, s=2.0)
    rng = np.random.default_rng(77)
    pair_vals = []
    t_vals = []
    for _ in range(5000):
        T = np.abs(sample_row(cfg, rng).t) ** 2
        pair_vals.append(np.sqrt(T[:32] * T[32:]))
        t_vals.append(T)
    ratio = np.mean(pair_vals) / np.mean(t_vals)
    assert abs(ratio - math.pi / 4) < 0.01


def test_fully_transmitting_medium_has_no_reflection():
    cfg = MediumConfig(N=8, s=1.0)
    rng = np.random.default_rng(3)
    row = sample_row(cfg, rng)
    assert np.all(row.refl == 0.0)
    assert row.total_transmission == pytest.approx(1.0, abs=1e-15)


def test_apply_wfs_strips_phases():
    t = np.array([0.3 * np.exp(1j * math.pi / 3), 0.4 * np.exp(-1j * math.pi / 5)])
    refl = np.zeros(2, dtype=complex)
    refl[0] = math.sqrt(1 - 0.25)
    row = ScatterRow(t, refl)
    shaped = apply_wfs(row)
    np.testing.assert_allclose(shaped.t, [0.3, 0.4], atol=1e-15)
    np.testing.assert_array_equal(shaped.refl, row.refl)
    # idempotent, norm preserved
    again = apply_wfs(shaped)
    np.testing.assert_array_equal(again.t, shaped.t)
    assert shaped.total_transmission == pytest.approx(row.total_transmission, abs=1e-15)


def test_quadrature_forms_mapping():
    # real coefficient couples x to x; imaginary coefficient swaps in p
    row = ScatterRow(np.array([1.0 + 0.0j]), np.array([0.0j]))
    fx, fp = quadrature_forms(row, 2)
    np.testing.assert_array_equal(fx.coeffs, [1.0, 0.0, 0.0, 0.0])
    np.testing.assert_array_equal(fp.coeffs, [0.0, 1.0, 0.0, 0.0])
    row_i = ScatterRow(np.array([1.0j]), np.array([0.0j]))
    fx, fp = quadrature_forms(row_i, 2)
    np.testing.assert_array_equal(fx.coeffs, [0.0, -1.0, 0.0, 0.0])
    np.testing.assert_array_equal(fp.coeffs, [1.0, 0.0, 0.0, 0.0])
    with pytest.raises(ValueError):
        quadrature_forms(row, 3)


def test_output_of_vacuum_is_shot_noise():
    # unit-norm row on vacuum inputs must give variance exactly 1
    cfg = MediumConfig(N=6, s=2.0)
    rng = np.random.default_rng(21)
    vac = build_input_state(ExperimentSpec(family="single", r=0.0, medium=cfg))
    for _ in range(20):
        row = sample_row(cfg, rng)
        fx, fp = quadrature_forms(row, 12)
        assert variance_of_form(vac, fx) == pytest.approx(1.0, abs=1e-12)
        assert variance_of_form(vac, fp) == pytest.approx(1.0, abs=1e-12)


def test_perfect_channel_passes_squeezing():
    # artificial row t = (1, 0, ...): the output is the first input mode
    cfg = MediumConfig(N=4, s=2.0)
    t = np.zeros(4, dtype=complex)
    t[0] = 1.0
    row = ScatterRow(t, np.zeros(4, dtype=complex))
    state = build_input_state(ExperimentSpec(family="single", r=1.0, medium=cfg))
    fx, fp = quadrature_forms(apply_wfs(row), 8)
    assert variance_of_form(state, fx) == pytest.approx(math.exp(-2.0), abs=1e-12)
    assert variance_of_form(state, fp) == pytest.approx(math.exp(2.0), abs=1e-12)


def test_wfs_dominance_per_row():
    # with all-channel single-mode squeezed input, shaping can only help x
    # and only hurt p, realization by realization (strictly, for generic
    # phases and r > 0)
    cfg = MediumConfig(N=16, s=2.0)
    rng = np.random.default_rng(8)
    state = build_input_state(ExperimentSpec(family="single", r=1.0, medium=cfg))
    for _ in range(50):
        row = sample_row(cfg, rng)
        shaped = apply_wfs(row)
        fx, fp = quadrature_forms(row, 32)
        gx, gp = quadrature_forms(shaped, 32)
        assert variance_of_form(state, gx) < variance_of_form(state, fx)
        assert variance_of_form(state, gp) > variance_of_form(state, fp)


def test_heisenberg_bound_per_row():
    # (1 - T(1-e^{-2r})) (1 + T(e^{2r}-1)) >= 1 for T in [0, 1]
    cfg = MediumConfig(N=16, s=2.0)
    rng = np.random.default_rng(13)
    r = 1.0
    for _ in range(100):
        T = sample_row(cfg, rng).total_transmission
        lo = 1.0 - T * (1.0 - math.exp(-2 * r))
        hi = 1.0 + T * (math.exp(2 * r) - 1.0)
        assert lo * hi >= 1.0 - 1e-12


def test_coefficient_scales():
    sigma_t, sigma_r = coefficient_scales(MediumConfig(N=64, s=2.0))
    assert 2 * sigma_t**2 == pytest.approx(1 / 128)
    assert 2 * sigma_r**2 == pytest.approx(1 / 128)
    sigma_t1, sigma_r1 = coefficient_scales(MediumConfig(N=64, s=1.0))
    assert sigma_r1 == 0.0
