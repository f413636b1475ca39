"""The lacunary wave-packet datum and its localization diagnostics."""

import numpy as np
import pytest
from scipy.integrate import quad

from chlimit import (
    CounterexampleDatum,
    RealField,
    besov_norm,
    block_identity_error,
    block_product_lower_bound,
    bump_hat,
    derivative,
    dyadic_block,
    e0_approximant,
    edge_tail,
    l2_norm,
    make_grid,
    make_u0,
    max_packet_index,
    packet_field,
    phi_profile,
    pointwise_floor,
    transform,
)

# Honest regression ceilings, measured at the frozen configurations:
# the bump profile decays only like exp(-c sqrt|x|) (smoothstep glue is
# Gevrey-2), so its tail on the 32*pi box is ~7.4e-4.
PHI_TAIL_MAX = 1e-3
DATUM_BESOV_MAX = 0.3  # measured 0.2366
PRODUCT_FLOOR_MIN = 0.02  # measured >= 0.0244


class TestBumpHat:
    def test_plateau_and_support(self):
        assert bump_hat(0.2) == 1.0
        assert bump_hat(0.6) == 0.0
        assert bump_hat(-0.2) == 1.0

    def test_midpoint_symmetry(self):
        # the smoothstep is antisymmetric about 1/2, so the midpoint of the
        # transition band evaluates to exactly 1/2
        assert bump_hat(3.0 / 8.0) == pytest.approx(0.5, abs=1e-15)

    def test_range(self):
        xi = np.linspace(-1.0, 1.0, 4001)
        vals = bump_hat(xi)
        assert vals.min() >= 0.0 and vals.max() <= 1.0
        np.testing.assert_array_equal(vals, bump_hat(-xi))


class TestPhiProfile:
    def test_center_value_against_quadrature(self, grid_box):
        phi = phi_profile(grid_box)
        center = phi.samples[grid_box.n_points // 2]
        integral, _ = quad(lambda x: bump_hat(np.array(x)).item(), -0.5, 0.5, limit=200)
        assert center == pytest.approx(integral / (2.0 * np.pi), rel=1e-6)
        # plateau width vs full support width bracket the integral
        assert 1.0 / (4.0 * np.pi) <= center <= 1.0 / (2.0 * np.pi)

    def test_round_trip_recovers_bump(self, grid_box):
        phi = phi_profile(grid_box)
        recovered = transform(phi).coeffs * grid_box.dx
        target = bump_hat(grid_box.frequencies)
        assert np.abs(recovered - target).max() <= 1e-10

    def test_even(self, grid_box):
        phi = phi_profile(grid_box).samples
        np.testing.assert_allclose(phi[1:], phi[1:][::-1], atol=1e-15)

    def test_tail_regression(self, grid_box):
        assert edge_tail(phi_profile(grid_box)) <= PHI_TAIL_MAX

    def test_coarse_grid_rejected(self):
        g = make_grid(256, 16.0 * np.pi)  # frequency spacing 1/8
        with pytest.raises(ValueError, match="too coarse"):
            phi_profile(g)


class TestMakeU0:
    def test_center_geometric_sum(self, grid_box, datum5):
        phi0 = phi_profile(grid_box).samples[grid_box.n_points // 2]
        ratio = datum5.field.samples[grid_box.n_points // 2] / phi0
        expected = (1.0 - 2.0 ** (-2.0 * 6)) / (1.0 - 2.0**-2.0)
        assert ratio == pytest.approx(expected, rel=1e-9)

    def test_center_approaches_geometric_limit(self, grid_box):
        # the infinite-sum limit for s = 2 is 4/3
        ratio = []
        phi0 = phi_profile(grid_box).samples[grid_box.n_points // 2]
        for n_terms in (1, 3, 5):
            d = make_u0(grid_box, 2.0, n_terms)
            ratio.append(d.field.samples[grid_box.n_points // 2] / phi0)
        assert abs(ratio[-1] - 4.0 / 3.0) < abs(ratio[0] - 4.0 / 3.0)
        assert ratio[-1] == pytest.approx(4.0 / 3.0, rel=1e-3)

    def test_single_term(self, grid_box):
        d = make_u0(grid_box, 2.0, 0)
        ref = packet_field(grid_box, 0, 2.0)
        np.testing.assert_array_equal(d.field.samples, ref.samples)

    def test_resolution_cap_message(self, grid_box):
        cap = max_packet_index(grid_box)
        assert cap == 5
        with pytest.raises(ValueError, match="up to n = 5"):
            make_u0(grid_box, 2.0, cap + 1)

    def test_regularity_validation(self, grid_box):
        with pytest.raises(ValueError, match="3/2"):
            make_u0(grid_box, 1.5, 2)

    def test_tail(self, datum5):
        assert edge_tail(datum5.field) <= PHI_TAIL_MAX

    def test_besov_bound(self, datum5):
        assert besov_norm(datum5.field, 2.0) <= DATUM_BESOV_MAX


class TestBlockIdentity:
    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_packet_blocks_exact(self, datum5, n):
        assert block_identity_error(datum5, n) <= 1e-10

    def test_cross_block_leak_vanishes(self, grid_box):
        from chlimit import grid_max_block

        j_top = grid_max_block(grid_box)
        for n in (3, 4, 5):
            packet = packet_field(grid_box, n, 2.0)
            ref = l2_norm(packet)
            for j in (n - 1, n + 1):
                if j < 3 or j > j_top:
                    continue
                leak = dyadic_block(packet, j)
                assert l2_norm(leak) <= 1e-12 * ref

    def test_index_range_enforced(self, datum5):
        with pytest.raises(ValueError, match="must lie in"):
            block_identity_error(datum5, 2)
        with pytest.raises(ValueError, match="must lie in"):
            block_identity_error(datum5, datum5.n_terms + 1)


class TestE0Approximant:
    def test_alpha_zero_reduction(self, grid_box, datum5):
        u0 = datum5.field
        from chlimit import dealias, inverse_transform

        e0 = e0_approximant(u0, 0.0)
        prod = RealField(grid_box, u0.samples * derivative(u0).samples)
        expected = inverse_transform(dealias(transform(prod)))
        np.testing.assert_allclose(
            e0.samples, -3.0 * expected.samples, atol=1e-13
        )

    def test_zero_input(self, grid_small):
        z = RealField(grid_small, np.zeros(grid_small.n_points))
        out = e0_approximant(z, 1.0)
        assert np.abs(out.samples).max() == 0.0

    def test_hand_computed_single_mode(self, grid_small):
        # v0 = cos x, alpha = 1:
        #   -3 v0 v0x = 1.5 sin 2x
        #   -dx^3 F(v0^2) = -(8/10) sin 2x
        #   -(1/2) dx F(v0x^2) = -(1/10) sin 2x
        g = grid_small
        out = e0_approximant(RealField(g, np.cos(g.x)), 1.0)
        np.testing.assert_allclose(out.samples, 0.6 * np.sin(2.0 * g.x), atol=1e-10)


class TestBlockProduct:
    def test_uniform_floor(self, datum5):
        for n in range(3, datum5.n_terms + 1):
            assert block_product_lower_bound(datum5, n) >= PRODUCT_FLOOR_MIN

    def test_quadratic_scaling(self, datum5):
        a = 0.5
        scaled = CounterexampleDatum(
            s=datum5.s,
            n_terms=datum5.n_terms,
            field=RealField(datum5.grid, a * datum5.field.samples),
        )
        for n in (3, 5):
            assert block_product_lower_bound(scaled, n) == pytest.approx(
                a**2 * block_product_lower_bound(datum5, n), rel=1e-12
            )

    def test_index_range(self, datum5):
        with pytest.raises(ValueError, match="must lie in"):
            block_product_lower_bound(datum5, datum5.n_terms + 1)


class TestPointwiseFloor:
    def test_positive_interval(self, datum5):
        delta, floor = pointwise_floor(datum5)
        assert delta > 0.0
        center = abs(datum5.field.samples[datum5.grid.n_points // 2])
        assert floor >= 0.5 * center

    def test_matches_direct_scan(self, datum5):
        delta, _ = pointwise_floor(datum5)
        g = datum5.grid
        u = datum5.field.samples
        half = 0.5 * abs(u[g.n_points // 2])
        inside = np.abs(g.x) <= delta + 1e-15
        assert np.all(np.abs(u[inside]) >= half)


class TestNormStability:
    def test_besov_insensitive_to_truncation_order(self, default_grid):
        # the sup-norm is carried by every packet equally, so lengthening
        # the lacunary sum leaves it essentially unchanged
        b6 = besov_norm(make_u0(default_grid, 2.0, 6).field, 2.0)
        b8 = besov_norm(make_u0(default_grid, 2.0, 8).field, 2.0)
        assert abs(b8 - b6) / b8 < 0.01

    def test_block_profile_flat_across_packets(self, datum5):
        vals = [
            2.0 ** (2.0 * n)
            * l2_norm(dyadic_block(datum5.field, n))
            for n in range(3, datum5.n_terms + 1)
        ]
        assert max(vals) / min(vals) < 1.01
