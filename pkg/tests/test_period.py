"""Period engine: integrands, quadrature, limits, bounds, monotonicity."""

import numpy as np
import pytest

from horoperiod import (
    ConvergenceFailure,
    DomainError,
    ProblemParams,
    QuadratureConfig,
    ShapeCoords,
    boundary_limit_r_to_one,
    boundary_period,
    critical_point,
    integrand_F,
    integrand_G,
    limit_energy_to_min,
    limit_r_to_infinity,
    limit_r_to_one,
    limit_steep_potential,
    period_energy,
    period_shape,
)

PI = np.pi


def theta_or_best(fn, *args, **kwargs):
    """Value even when the target tolerance is noise-limited."""
    try:
        return fn(*args, **kwargs).value
    except ConvergenceFailure as exc:
        assert exc.best is not None
        return exc.best.value


class TestIntegrandF:
    def test_vanishes_at_left_endpoint(self):
        assert integrand_F(-1, 1, 1.0, 0.5, 2.0) == pytest.approx(0.0, abs=1e-15)

    def test_vanishes_at_right_endpoint(self):
        assert integrand_F(-1, 1, 2.0, 0.5, 2.0) == pytest.approx(0.0, abs=1e-14)

    def test_rational_interior_value(self):
        assert integrand_F(-1, 1, 1.5, 0.5, 2.0) == pytest.approx(35.0 / 36.0, rel=1e-14)

    def test_positive_between_endpoints(self, rng):
        for _ in range(20):
            r = rng.uniform(1.2, 20.0)
            alpha = rng.uniform(0.05, 0.95)
            p = -rng.uniform(1.0, 15.0)
            q = rng.choice([1.0, rng.uniform(1.0, 8.0)])
            s = rng.uniform(1.0 + 1e-6, r - 1e-6 * r)
            assert integrand_F(p, q, s, alpha, r) > 0.0

    def test_domain_box(self):
        with pytest.raises(DomainError):
            integrand_F(-1, 1, 2.5, 0.5, 2.0)
        with pytest.raises(DomainError):
            integrand_F(-1, 1, 1.5, 1.5, 2.0)

    def test_region(self):
        with pytest.raises(Exception):
            integrand_F(0.5, 1, 1.5, 0.5, 2.0)

    def test_chart_consistency_with_turning_integrand(self, rng):
        # F(s, alpha, r) = G(s u_minus, u_minus, u_plus) / u_minus^2
        for _ in range(25):
            u_minus = rng.uniform(0.4, 1.5)
            u_plus = u_minus * rng.uniform(1.2, 6.0)
            if u_minus * u_plus <= 1.0:
                u_plus = 1.2 / u_minus
            p = -rng.uniform(1.0, 10.0)
            alpha = 1.0 / (u_minus * u_plus)
            r = u_plus / u_minus
            s = rng.uniform(1.0, r)
            f = integrand_F(p, 1.0, s, alpha, r)
            g = integrand_G(p, s * u_minus, u_minus, u_plus)
            assert f == pytest.approx(g / u_minus**2, rel=1e-9, abs=1e-12)


class TestPeriodShape:
    def test_exactness_at_p_minus_one(self, rng):
        for _ in range(10):
            sh = ShapeCoords(alpha=rng.uniform(0.05, 0.95), r=rng.uniform(1.1, 40.0))
            pv = period_shape(-1.0, 1.0, sh)
            assert pv.value == pytest.approx(PI / 2.0, abs=1e-10)

    def test_small_r_matches_limit(self):
        sh = ShapeCoords(alpha=0.5, r=1.0001)
        pv = period_shape(-5.0, 1.0, sh)
        assert pv.value == pytest.approx(PI / np.sqrt(10.0), rel=1e-3)

    def test_weighted_small_r_matches_limit(self):
        sh = ShapeCoords(alpha=0.5, r=1.0001)
        val = theta_or_best(period_shape, -3.0, 2.0, sh)
        assert val == pytest.approx(limit_r_to_one(-3.0, 2.0, 0.5), rel=1e-3)

    def test_large_r_approaches_half_pi(self):
        val = theta_or_best(period_shape, -3.0, 1.0, ShapeCoords(alpha=0.5, r=1e6))
        assert val == pytest.approx(PI / 2.0, rel=1e-2)

    def test_degenerate_guard_returns_limit(self):
        sh = ShapeCoords(alpha=0.5, r=1.0 + 1e-9)
        pv = period_shape(-5.0, 1.0, sh)
        assert pv.nodes_used == 0
        assert pv.value == pytest.approx(limit_r_to_one(-5.0, 1.0, 0.5), rel=1e-12)
        assert pv.error_estimate == pytest.approx(1e-9, rel=1e-3)

    def test_convergence_failure_carries_best(self):
        cfg = QuadratureConfig(target_tol=1e-14, initial_nodes=8, max_nodes=16)
        with pytest.raises(ConvergenceFailure) as info:
            period_shape(-3.0, 1.0, ShapeCoords(alpha=0.5, r=5.0), cfg)
        assert info.value.best is not None
        assert 0.0 < info.value.best.value < PI / 2.0

    def test_error_estimate_is_refinement_difference(self):
        pv = period_shape(-3.0, 1.0, ShapeCoords(alpha=0.5, r=3.0))
        assert pv.error_estimate < 1e-10
        assert pv.nodes_used >= 16

    def test_alpha_near_one_approaches_half_pi(self):
        # the alpha = 1 chart edge (gamma -> 0) carries the constant value pi/2
        val = period_shape(-3.0, 1.0, ShapeCoords(alpha=1.0 - 1e-6, r=2.0)).value
        assert val == pytest.approx(PI / 2.0, abs=1e-4)


class TestPeriodEnergy:
    def test_p_minus_one_energy_chart(self):
        pv = period_energy(ProblemParams(p=-1, gamma=1.5), 5.0)
        assert pv.value == pytest.approx(PI / 2.0, abs=1e-8)

    def test_near_minimum_matches_limit(self):
        params = ProblemParams(p=-3, gamma=1.0)
        cd = critical_point(params)
        pv = period_energy(params, cd.e_star + 1e-6)
        assert pv.value == pytest.approx(PI / np.sqrt(6.0), rel=1e-3)
        assert limit_energy_to_min(params, cd) == pytest.approx(PI / np.sqrt(6.0), rel=1e-12)

    def test_below_minimum_propagates(self):
        from horoperiod import BelowMinimum

        params = ProblemParams(p=-3, gamma=1.0)
        cd = critical_point(params)
        with pytest.raises(BelowMinimum):
            period_energy(params, cd.e_star - 1.0)

    def test_agrees_with_direct_integral(self, rng, oracle_period):
        # the charts are exact reparameterizations of the raw u integral
        for _ in range(8):
            params = ProblemParams(
                p=-rng.uniform(1.0, 8.0),
                gamma=rng.uniform(0.2, 5.0),
                q=rng.choice([1.0, 2.0, 3.5]),
            )
            cd = critical_point(params)
            E = cd.e_star * (1.0 + rng.uniform(0.05, 2.0))
            assert period_energy(params, E, critical=cd).value == pytest.approx(
                oracle_period(params, E), abs=2e-7
            )


class TestBoundaryPeriod:
    def test_small_r_limit(self):
        val = theta_or_best(boundary_period, -3.0, 1.0, 1.0001)
        assert val == pytest.approx(PI / np.sqrt(8.0), rel=1e-3)

    def test_weighted_small_r_limit(self):
        val = theta_or_best(boundary_period, -3.0, 2.0, 1.0001)
        assert val == pytest.approx(PI / np.sqrt(10.0), rel=1e-3)
        assert boundary_limit_r_to_one(-3.0, 2.0) == pytest.approx(PI / np.sqrt(10.0))

    def test_large_r(self):
        cfg = QuadratureConfig(target_tol=1e-7, max_nodes=2**18)
        val = theta_or_best(boundary_period, -3.0, 1.0, 1e6, cfg)
        assert val == pytest.approx(PI / 2.0, rel=1e-2)

    def test_monotone_in_r(self, rng):
        for _ in range(10):
            p = -rng.uniform(1.05, 10.0)
            q = rng.choice([1.0, rng.uniform(1.0, 5.0)])
            r1 = rng.uniform(1.05, 20.0)
            r2 = r1 * rng.uniform(1.05, 3.0)
            v1 = theta_or_best(boundary_period, p, q, r1)
            v2 = theta_or_best(boundary_period, p, q, r2)
            assert v2 > v1 - 1e-9

    def test_interior_exceeds_boundary(self, rng):
        for _ in range(10):
            p = -rng.uniform(1.05, 10.0)
            q = rng.choice([1.0, rng.uniform(1.0, 5.0)])
            r = rng.uniform(1.1, 20.0)
            alpha = rng.uniform(0.05, 0.95)
            inner = period_shape(p, q, ShapeCoords(alpha=alpha, r=r)).value
            outer = theta_or_best(boundary_period, p, q, r)
            assert inner > outer - 1e-9


class TestLimits:
    def test_steep_potential_point(self):
        assert limit_steep_potential(0.5, 2.0) == pytest.approx(
            np.arccos(np.sqrt(0.2)), rel=1e-14
        )

    def test_weighted_r_limit_reduces_at_q_one(self, rng):
        for _ in range(10):
            p = -rng.uniform(1.0, 20.0)
            a = rng.uniform(0.0, 1.0)
            assert limit_r_to_one(p, 1.0, a) == pytest.approx(
                PI / np.sqrt((2 - 2 * p) + (2 + 2 * p) * a * a), rel=1e-14
            )

    def test_energy_min_limit_example(self):
        assert limit_energy_to_min(ProblemParams(p=-3, gamma=1.0)) == pytest.approx(
            PI / np.sqrt(6.0), rel=1e-12
        )

    def test_steep_exponent_quadrature(self):
        val = period_shape(-200.0, 1.0, ShapeCoords(alpha=0.2, r=10.0)).value
        assert val == pytest.approx(limit_steep_potential(0.2, 10.0), rel=1e-3)

    def test_steep_weight_quadrature(self):
        val = theta_or_best(period_shape, -1.0, 200.0, ShapeCoords(alpha=0.2, r=10.0))
        assert val == pytest.approx(limit_steep_potential(0.2, 10.0), rel=1e-3)

    def test_half_pi_constant(self):
        assert limit_r_to_infinity() == pytest.approx(PI / 2.0)


class TestOrderAndBounds:
    def test_two_sided_bounds(self, rng):
        # pi/sqrt(2q - 2p) < theta < pi/2 strictly for p < -1
        for _ in range(20):
            p = -rng.uniform(1.05, 20.0)
            q = rng.choice([1.0, rng.uniform(1.0, 8.0)])
            sh = ShapeCoords(alpha=rng.uniform(0.05, 0.95), r=rng.uniform(1.05, 30.0))
            val = period_shape(p, q, sh).value
            assert PI / np.sqrt(2.0 * q - 2.0 * p) < val < PI / 2.0

    def test_monotone_in_p(self, rng):
        for _ in range(15):
            p1 = -rng.uniform(1.0, 20.0)
            p2 = p1 + rng.uniform(0.1, 5.0)
            if p2 > -1.0:
                p2 = -1.0
            q = rng.choice([1.0, rng.uniform(1.0, 5.0)])
            sh = ShapeCoords(alpha=rng.uniform(0.05, 0.95), r=rng.uniform(1.1, 20.0))
            assert period_shape(p2, q, sh).value > period_shape(p1, q, sh).value - 1e-9

    def test_monotone_in_alpha(self, rng):
        for _ in range(15):
            p = -rng.uniform(1.05, 15.0)
            q = rng.choice([1.0, rng.uniform(1.0, 5.0)])
            a1 = rng.uniform(0.05, 0.9)
            a2 = a1 + rng.uniform(0.01, 0.95 - a1)
            r = rng.uniform(1.1, 20.0)
            v1 = period_shape(p, q, ShapeCoords(alpha=a1, r=r)).value
            v2 = period_shape(p, q, ShapeCoords(alpha=a2, r=r)).value
            assert v2 > v1 - 1e-9

    def test_monotone_decreasing_in_q(self, rng):
        for _ in range(15):
            p = -rng.uniform(1.0, 10.0)
            q1 = rng.uniform(1.0, 6.0)
            q2 = q1 + rng.uniform(0.1, 3.0)
            sh = ShapeCoords(alpha=rng.uniform(0.05, 0.95), r=rng.uniform(1.1, 20.0))
            v1 = period_shape(p, q1, sh).value
            v2 = period_shape(p, q2, sh).value
            assert v2 < v1 + 1e-9
