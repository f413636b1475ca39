"""Helmholtz filter, CH/Burgers right-hand sides, filter-multiplier bounds."""

import numpy as np
import pytest

from chlimit import (
    RealField,
    burgers_rhs,
    ch_rhs,
    derivative,
    dyadic_block,
    e0_approximant,
    field_mean,
    helmholtz_inv,
    l2_norm,
    multiplier_bound_check,
    transform,
    validate_alpha,
)
from conftest import band_limited


class TestHelmholtzInv:
    def test_alpha_zero_is_identity(self, grid_2k):
        f = band_limited(grid_2k, 300, seed=1)
        out = helmholtz_inv(f, 0.0)
        np.testing.assert_allclose(out.samples, f.samples, atol=1e-14)

    def test_single_mode(self, grid_small):
        g = grid_small
        f = RealField(g, np.cos(g.x))
        out = helmholtz_inv(f, 1.0)
        np.testing.assert_allclose(out.samples, np.cos(g.x) / 2.0, atol=1e-13)

    def test_forward_round_trip(self, grid_2k):
        from chlimit import apply_multiplier, inverse_transform

        alpha = 0.37
        f = band_limited(grid_2k, 400, seed=2)
        smoothed = helmholtz_inv(f, alpha)
        back = inverse_transform(
            apply_multiplier(
                transform(smoothed), lambda xi: 1.0 + alpha**2 * xi**2
            )
        )
        assert np.abs(back.samples - f.samples).max() <= 1e-10

    def test_contraction(self, grid_2k):
        f = band_limited(grid_2k, 400, seed=3)
        for alpha in (0.1, 0.5, 1.0):
            assert l2_norm(helmholtz_inv(f, alpha)) <= l2_norm(f) * (1 + 1e-13)

    def test_commutes_with_derivative_and_blocks(self, grid_2k):
        f = band_limited(grid_2k, 300, seed=4)
        alpha = 0.7
        a = derivative(helmholtz_inv(f, alpha))
        b = helmholtz_inv(derivative(f), alpha)
        scale = np.abs(a.samples).max()
        assert np.abs(a.samples - b.samples).max() <= 1e-12 * scale
        c = dyadic_block(helmholtz_inv(f, alpha), 3)
        d = helmholtz_inv(dyadic_block(f, 3), alpha)
        scale = max(1e-300, np.abs(c.samples).max())
        assert np.abs(c.samples - d.samples).max() <= 1e-12 * scale

    def test_alpha_validation(self):
        with pytest.raises(ValueError, match="alpha"):
            validate_alpha(1.5)
        with pytest.raises(ValueError, match="alpha"):
            validate_alpha(-0.1)


class TestChRhs:
    def test_zero_and_constant_are_equilibria(self, grid_small):
        g = grid_small
        for c in (0.0, 2.0):
            f = RealField(g, np.full(g.n_points, c))
            out = ch_rhs(f, 1.0)
            assert np.abs(out.samples).max() <= 1e-13

    def test_hand_computed_single_mode(self, grid_small):
        # u = cos x, alpha = 1:
        #   -u ux = sin(2x)/2
        #   u^2 + ux^2/2 = 3/4 + cos(2x)/4;  dx filter: (1/4)(-2 sin 2x)/5
        #   rhs = sin(2x)/2 + sin(2x)/10 = 0.6 sin(2x)
        g = grid_small
        out = ch_rhs(RealField(g, np.cos(g.x)), 1.0)
        np.testing.assert_allclose(out.samples, 0.6 * np.sin(2.0 * g.x), atol=1e-10)

    def test_matches_equivalent_formulation(self, grid_2k):
        # the rhs written via the E0 grouping is the same operator
        f = band_limited(grid_2k, 300, seed=5, scale=0.5)
        for alpha in (0.25, 1.0):
            a = ch_rhs(f, alpha)
            b = e0_approximant(f, alpha)
            scale = np.abs(a.samples).max()
            assert np.abs(a.samples - b.samples).max() <= 1e-10 * scale

    def test_mean_free(self, grid_2k):
        f = band_limited(grid_2k, 300, seed=6, scale=0.8)
        assert abs(field_mean(ch_rhs(f, 0.6))) <= 1e-12


class TestBurgersRhs:
    def test_zero_and_constant(self, grid_small):
        g = grid_small
        for c in (0.0, -1.5):
            out = burgers_rhs(RealField(g, np.full(g.n_points, c)))
            assert np.abs(out.samples).max() <= 1e-13

    def test_single_mode(self, grid_small):
        g = grid_small
        out = burgers_rhs(RealField(g, np.cos(g.x)))
        np.testing.assert_allclose(out.samples, 1.5 * np.sin(2.0 * g.x), atol=1e-10)

    def test_equals_ch_at_alpha_zero(self, grid_2k):
        f = band_limited(grid_2k, 400, seed=7, scale=0.5)
        a = ch_rhs(f, 0.0)
        b = burgers_rhs(f)
        scale = np.abs(a.samples).max()
        assert np.abs(a.samples - b.samples).max() <= 1e-10 * scale

    def test_mean_free(self, grid_2k):
        f = band_limited(grid_2k, 300, seed=8)
        assert abs(field_mean(burgers_rhs(f))) <= 1e-12


class TestMultiplierBounds:
    def test_symbol_bounds_by_dense_sampling(self):
        xi = np.linspace(-2000.0, 2000.0, 400_001)
        for alpha in (1.0, 0.5, 0.1, 0.01):
            denom = 1.0 + alpha**2 * xi**2
            assert (alpha**2 * xi**2 / denom).max() < 1.0
            r2 = np.abs(alpha * xi) / denom
            assert r2.max() <= 0.5 + 1e-12
            # the maximum sits at |xi| = 1/alpha when resolved
            if 1.0 / alpha <= xi.max():
                assert r2.max() == pytest.approx(0.5, abs=1e-4)
            r3 = alpha**2 * np.abs(xi) * np.sqrt(1.0 + xi**2) / denom
            assert r3.max() < 1.0

    def test_field_ratios(self, grid_2k):
        for alpha in (1.0, 0.5, 0.1, 0.01):
            for seed in (0, 1):
                u = band_limited(grid_2k, 150, seed=700 + seed)
                r1, r2, r3 = multiplier_bound_check(alpha, 2.0, u)
                assert r1 <= 1.0 + 1e-9
                assert r2 <= 0.5 + 1e-9
                assert r3 <= 1.0

    def test_zero_field_rejected(self, grid_small):
        z = RealField(grid_small, np.zeros(grid_small.n_points))
        with pytest.raises(ValueError, match="zero-norm"):
            multiplier_bound_check(0.5, 2.0, z)

    def test_alpha_zero_rejected(self, grid_small):
        f = RealField(grid_small, np.cos(grid_small.x))
        with pytest.raises(ValueError, match="0, 1"):
            multiplier_bound_check(0.0, 2.0, f)
