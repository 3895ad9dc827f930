"""Noise layer: the closed-form dephasing variance beta(tau, H), its
double-integral quadrature cross-check, Gaussian phase sampling, and the
Cholesky-based fractional Brownian motion path sampler."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fgnsim import (
    BetaValue,
    CholeskyFailure,
    DomainError,
    NoiseParams,
    beta_fgn,
    beta_quadrature,
    fbm_covariance,
    integrated_phase,
    sample_fbm_path,
    sample_phase,
)


def naive_double_trapezoid(tau: float, hurst: float, n: int) -> float:
    """Independent O(n^2) route: trapezoid rule applied literally to the
    double integral of the fBm covariance kernel over [0, tau]^2."""
    t = np.linspace(0.0, tau, n + 1)
    ti = t[:, None]
    tj = t[None, :]
    k = 0.5 * (ti ** (2 * hurst) + tj ** (2 * hurst) - np.abs(ti - tj) ** (2 * hurst))
    w = np.full(n + 1, tau / n)
    w[0] = w[-1] = tau / (2 * n)
    return float(w @ k @ w)


class TestBetaClosedForm:
    def test_reference_values(self):
        assert beta_fgn(1.0, 0.5).value == pytest.approx(1.0 / 3.0, abs=1e-15)
        assert beta_fgn(0.0, 0.3).value == 0.0
        assert beta_fgn(2.0, 0.5).value == pytest.approx(8.0 / 3.0, abs=1e-14)

    def test_rejects_bad_domain(self):
        with pytest.raises(DomainError):
            beta_fgn(-0.1, 0.5)
        with pytest.raises(DomainError):
            beta_fgn(1.0, 0.0)
        with pytest.raises(DomainError):
            beta_fgn(1.0, 1.0)

    @given(st.floats(0.0, 3.0), st.floats(0.01, 0.99))
    @settings(max_examples=60, deadline=None)
    def test_value_matches_power_law(self, tau, hurst):
        b = beta_fgn(tau, hurst)
        expect = tau ** (2 * hurst + 2) / (2 * hurst + 2)
        assert b.value == pytest.approx(expect, rel=1e-12, abs=1e-300)
        assert b.tau == tau and b.hurst == hurst

    def test_increasing_in_tau(self):
        taus = np.linspace(0.0, 3.0, 40)
        vals = [beta_fgn(t, 0.7).value for t in taus]
        assert np.all(np.diff(vals) >= 0.0)


class TestBetaValue:
    def test_identity_invariant_enforced(self):
        with pytest.raises(DomainError):
            BetaValue(value=1.0, tau=1.0, hurst=0.5)

    def test_from_value_round_trip(self):
        b = beta_fgn(1.7, 0.42)
        again = BetaValue.from_value(b.value, hurst=0.42)
        assert again.tau == pytest.approx(1.7, rel=1e-12)

    def test_noise_params_pins_constants(self):
        params = NoiseParams(hurst=0.3)
        assert params.omega == 1.0
        assert params.energy_split == 0.0
        with pytest.raises(DomainError):
            NoiseParams(hurst=1.5)


class TestBetaQuadrature:
    def test_zero_tau_is_zero_for_any_grid(self):
        for n in (4, 64, 1024):
            assert beta_quadrature(0.0, 0.5, n) == 0.0

    def test_rejects_small_grid_for_positive_tau(self):
        with pytest.raises(DomainError):
            beta_quadrature(1.0, 0.5, 32)

    def test_matches_naive_double_trapezoid(self):
        # Dual-route check: the O(n) evaluation must agree with the literal
        # O(n^2) double trapezoid to round-off.
        for tau, hurst, n in ((0.5, 0.3, 64), (1.0, 0.5, 128), (2.0, 0.9, 96), (1.3, 0.01, 64)):
            fast = beta_quadrature(tau, hurst, n)
            slow = naive_double_trapezoid(tau, hurst, n)
            assert fast == pytest.approx(slow, rel=1e-12, abs=1e-14)

    def test_converges_to_closed_form(self):
        worst = 0.0
        for tau in (0.5, 1.0, 2.0):
            for hurst in (0.01, 0.3, 0.5, 0.7, 0.9):
                exact = beta_fgn(tau, hurst).value
                approx = beta_quadrature(tau, hurst, 1024)
                worst = max(worst, abs(approx - exact) / exact)
        assert worst < 1e-3, f"worst relative quadrature error {worst:.3e}"

    def test_refinement_improves(self):
        exact = beta_fgn(1.0, 0.3).value
        coarse = abs(beta_quadrature(1.0, 0.3, 128) - exact)
        fine = abs(beta_quadrature(1.0, 0.3, 2048) - exact)
        assert fine < coarse

    @given(st.floats(0.05, 0.45), st.floats(0.5, 0.95))
    @settings(max_examples=30, deadline=None)
    def test_decreasing_in_hurst_below_unit_tau(self, tau, h_hi):
        # For tau < 1 the variance decays as H grows; the quadrature must
        # reproduce that ordering.
        lo = beta_quadrature(tau, 0.05, 256)
        hi = beta_quadrature(tau, h_hi, 256)
        assert hi <= lo + 1e-12


class TestSamplePhase:
    def test_zero_beta_gives_zero(self, rng):
        assert sample_phase(0.0, rng) == 0.0

    def test_deterministic_given_seed(self):
        a = sample_phase(0.7, np.random.default_rng(5))
        b = sample_phase(0.7, np.random.default_rng(5))
        assert a == b

    def test_accepts_beta_value_wrapper(self, rng):
        draw = sample_phase(beta_fgn(1.0, 0.5), rng)
        assert np.isfinite(draw)

    def test_moments(self):
        rng = np.random.default_rng(99)
        beta = 0.8
        draws = np.array([sample_phase(beta, rng) for _ in range(40_000)])
        assert abs(draws.mean()) < 4.0 * np.sqrt(beta / draws.size)
        assert abs(draws.var() - beta) < 0.05 * beta

    def test_rejects_negative_variance(self, rng):
        with pytest.raises(DomainError):
            sample_phase(-1.0, rng)


class TestFbmSampler:
    def test_covariance_shape_and_diagonal(self):
        tau, hurst, n = 1.0, 0.3, 8
        k = fbm_covariance(tau, hurst, n)
        t = np.arange(1, n + 1) * tau / n
        assert k.shape == (n, n)
        assert np.allclose(np.diag(k), t ** (2 * hurst), atol=1e-14)
        assert np.array_equal(k, k.T)

    def test_half_hurst_is_brownian_min_kernel(self):
        tau, n = 2.0, 6
        k = fbm_covariance(tau, 0.5, n)
        t = np.arange(1, n + 1) * tau / n
        assert np.allclose(k, np.minimum(t[:, None], t[None, :]), atol=1e-14)

    def test_path_shape_and_determinism(self):
        a = sample_fbm_path(1.0, 0.7, 64, np.random.default_rng(3))
        b = sample_fbm_path(1.0, 0.7, 64, np.random.default_rng(3))
        assert a.shape == (64,)
        assert np.array_equal(a, b)

    def test_rejects_bad_arguments(self, rng):
        with pytest.raises(DomainError):
            sample_fbm_path(0.0, 0.5, 64, rng)
        with pytest.raises(DomainError):
            sample_fbm_path(1.0, 0.5, 1, rng)
        with pytest.raises(DomainError):
            sample_fbm_path(1.0, 0.5, 4096, rng)

    def test_endpoint_variance(self):
        # Var[B(tau)] = tau^(2H); estimated over 20000 paths at H = 0.7.
        rng = np.random.default_rng(12)
        n, paths = 64, 20_000
        ends = np.array([sample_fbm_path(1.0, 0.7, n, rng)[-1] for _ in range(paths)])
        assert abs(ends.var() - 1.0) < 0.05

    def test_brownian_increments_uncorrelated(self):
        rng = np.random.default_rng(8)
        n, paths = 32, 20_000
        acc = 0.0
        for _ in range(paths):
            path = sample_fbm_path(1.0, 0.5, n, rng)
            inc = np.diff(np.concatenate(([0.0], path)))
            acc += inc[3] * inc[17]
        assert abs(acc / paths) < 4.0 / (n * np.sqrt(paths))


class TestIntegratedPhase:
    def test_constant_path_exact(self):
        path = np.full(50, 2.5)
        assert integrated_phase(path, 3.0) == pytest.approx(7.5, abs=1e-15)

    def test_zero_path(self):
        assert integrated_phase(np.zeros(10), 1.0) == 0.0

    def test_linear_path_exact(self):
        # The trapezoid rule integrates a linear ramp exactly.
        tau = 2.0
        t = np.linspace(0.0, tau, 33)
        assert integrated_phase(t, tau) == pytest.approx(tau**2 / 2.0, rel=1e-14)

    def test_rejects_short_path(self):
        with pytest.raises(DomainError):
            integrated_phase(np.array([1.0]), 1.0)

    def test_variance_matches_beta(self):
        # Sample variance of the integrated phase reproduces beta(tau, H).
        tau, hurst = 1.0, 0.5
        rng = np.random.default_rng(77)
        n, paths = 256, 6000
        vals = np.array(
            [integrated_phase(sample_fbm_path(tau, hurst, n, rng), tau) for _ in range(paths)]
        )
        expect = beta_fgn(tau, hurst).value
        assert abs(vals.var() - expect) < 0.06 * expect


class TestCholeskyFailure:
    def test_error_type_exists(self):
        assert issubclass(CholeskyFailure, Exception)
