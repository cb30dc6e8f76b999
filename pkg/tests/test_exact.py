"""Reference solvers: cycloid, restricted bounds, parametric profile, fluxes."""

import math

import numpy as np
import pytest

from varmin.errors import DomainError
from varmin.exact import (
    THERMAL_RESISTANCE_H2,
    U_MINUS0,
    U_STAR,
    cycloid_sampler,
    newton_exact_resistance,
    newton_sampler,
    ramm_conjectured_curve,
    ramm_reference,
    solve_cycloid,
    solve_newton_profile,
    thermal_reference,
)


class TestCycloid:
    def test_reference_instance(self):
        sol = solve_cycloid((0.0, 10.0), (10.0, 0.0), 9.8)
        # tabulated triple for this instance
        assert sol.radius == pytest.approx(5.72917, abs=1e-3)
        assert sol.theta_end == pytest.approx(2.41201, abs=1e-3)
        assert sol.time == pytest.approx(1.84421, abs=1e-3)
        # frozen high-precision regression values
        assert sol.radius == pytest.approx(5.729170375318167, rel=1e-10)
        assert sol.theta_end == pytest.approx(2.4120111439132224, rel=1e-10)
        assert sol.time == pytest.approx(1.8442175091625692, rel=1e-10)

    def test_landing_at_lowest_point(self):
        # B at the cycloid's lowest point: theta_1 = pi, R = drop/2,
        # T = pi * sqrt(R / g)
        sol = solve_cycloid((0.0, 1.0), (math.pi / 2.0, 0.0), 9.8)
        assert sol.radius == pytest.approx(0.5, abs=1e-9)
        assert sol.theta_end == pytest.approx(math.pi, abs=1e-9)
        assert sol.time == pytest.approx(math.pi * math.sqrt(0.5 / 9.8), rel=1e-10)

    def test_time_scales_with_sqrt_g(self):
        fast = solve_cycloid((0.0, 10.0), (10.0, 0.0), 4.0 * 9.8)
        slow = solve_cycloid((0.0, 10.0), (10.0, 0.0), 9.8)
        assert fast.time == pytest.approx(slow.time / 2.0, rel=1e-10)
        assert fast.radius == pytest.approx(slow.radius, rel=1e-10)

    def test_sampler_hits_endpoints(self):
        sol = solve_cycloid((0.0, 10.0), (10.0, 0.0), 9.8)
        curve = cycloid_sampler(sol)
        assert curve(0.0) == pytest.approx(10.0, abs=1e-8)
        assert curve(10.0) == pytest.approx(0.0, abs=1e-8)

    def test_sampler_monotone_here(self):
        # theta_1 < pi for this instance, so the arc is strictly decreasing
        sol = solve_cycloid((0.0, 10.0), (10.0, 0.0), 9.8)
        curve = cycloid_sampler(sol)
        xs = np.linspace(0.0, 10.0, 200)
        ys = np.array([curve(float(x)) for x in xs])
        assert np.all(np.diff(ys) < 0.0)

    def test_sampler_rejects_outside(self):
        sol = solve_cycloid((0.0, 10.0), (10.0, 0.0), 9.8)
        curve = cycloid_sampler(sol)
        with pytest.raises(DomainError):
            curve(10.5)


class TestRammReference:
    def test_values_at_b2(self):
        ref = ramm_reference(2.0)
        assert ref.T0 == pytest.approx(2.0 * math.sqrt(5.0), abs=1e-9)
        assert ref.TP == pytest.approx(4.0, abs=1e-9)
        assert ref.TPbr == pytest.approx(
            math.sqrt(4.0 + math.pi**2) + 2.0 - math.pi / 2.0, abs=1e-9
        )
        assert ref.case_id == 3

    def test_case_classification(self):
        assert ramm_reference(1.0).case_id == 1
        assert ramm_reference(1.5).case_id == 2
        assert ramm_reference(2.0).case_id == 3

    def test_case3_bounds_ordered(self):
        # in case 3 the composite curve bounds admissible times from below
        ref = ramm_reference(2.0)
        assert ref.TPbr < ref.T0

    def test_invalid_b(self):
        with pytest.raises(ValueError):
            ramm_reference(0.0)

    def test_conjectured_curve(self):
        curve, t = ramm_conjectured_curve(2.0, 9.8)
        # frozen regression value; functional value of the composite curve
        # is pi/2 + b (cycloid arc contributes pi, the level run b - pi/2)
        assert t == pytest.approx(0.8065606752310577, rel=1e-10)
        assert t == pytest.approx(
            (math.pi / 2.0 + 2.0) / math.sqrt(2.0 * 9.8), rel=1e-10
        )
        assert curve(0.0) == pytest.approx(1.0, abs=1e-8)
        assert curve(1.8) == 0.0  # level run past the cycloid landing
        assert curve(2.0) == 0.0

    def test_conjectured_curve_needs_long_base(self):
        with pytest.raises(DomainError):
            ramm_conjectured_curve(1.0, 9.8)


class TestNewtonProfile:
    def test_reference_instance(self):
        p = solve_newton_profile(1.0, 2.0)
        assert p.lambda_n == pytest.approx(0.060427252232605956, rel=1e-9)
        assert p.u_max == pytest.approx(2.9918207962836387, rel=1e-9)
        resistance = newton_exact_resistance(p)
        assert resistance == pytest.approx(0.0802, abs=5e-4)
        assert resistance == pytest.approx(0.08021275115020712, rel=1e-9)

    def test_solver_residuals(self):
        p = solve_newton_profile(1.0, 2.0)
        lam, u = p.lambda_n, p.u_max
        x = 0.5 * lam * (1.0 / u + 2.0 * u + u**3)
        y = 0.5 * lam * (-math.log(u) + u * u + 0.75 * u**4) - 7.0 * lam / 8.0
        assert abs(x - 1.0) <= 1e-9
        assert abs(y - 2.0) <= 1e-9

    def test_scaling_homogeneity(self):
        p1 = solve_newton_profile(1.0, 2.0)
        p2 = solve_newton_profile(2.0, 4.0)
        assert p2.u_max == pytest.approx(p1.u_max, rel=1e-9)
        assert p2.lambda_n == pytest.approx(2.0 * p1.lambda_n, rel=1e-9)
        assert newton_exact_resistance(p2) == pytest.approx(
            4.0 * newton_exact_resistance(p1), rel=1e-8
        )

    def test_sampler_endpoints_and_monotonicity(self):
        p = solve_newton_profile(1.0, 2.0)
        curve = newton_sampler(p)
        assert curve(0.0) == pytest.approx(0.0, abs=1e-9)
        assert curve(1.0) == pytest.approx(2.0, abs=1e-8)
        xs = np.linspace(0.0, 1.0, 100)
        ys = np.array([curve(float(x)) for x in xs])
        assert np.all(np.diff(ys) >= 0.0)
        # flat nose out to x = lambda
        assert curve(p.lambda_n * 0.99) == pytest.approx(0.0, abs=1e-9)

    def test_invalid_arguments(self):
        with pytest.raises(ValueError):
            solve_newton_profile(0.0, 2.0)
        with pytest.raises(ValueError):
            solve_newton_profile(1.0, -1.0)


class TestThermalReference:
    def test_reference_instance(self):
        ref = thermal_reference(2.0)
        assert ref.u_star == U_STAR
        assert ref.u_minus0 == U_MINUS0
        assert ref.resistance == THERMAL_RESISTANCE_H2
        assert ref.case_id == 3
        # height split: front climbs u_star, rear climbs the rest
        assert ref.u_star + (ref.h - ref.u_star) == pytest.approx(2.0)

    def test_unsupported_height(self):
        with pytest.raises(DomainError):
            thermal_reference(5.0)
