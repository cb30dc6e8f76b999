"""Piecewise-linear primitives: grids, interpolation, repairs."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from varmin.errors import DomainError, SamplerDomainError
from varmin.plfunc import (
    Grid,
    PLFunction,
    clamp_box,
    convex_repair,
    eval_at,
    max_abs_deviation,
    monotone_repair,
    pin_endpoints,
    sample_onto_grid,
    slopes,
)

UNIT5 = Grid(0.0, 1.0, 5)


def pl(y, grid=UNIT5):
    return PLFunction(grid, np.asarray(y, dtype=float))


y_vectors = st.lists(
    st.floats(min_value=-10.0, max_value=10.0, allow_nan=False),
    min_size=2,
    max_size=30,
).map(np.asarray)


class TestGrid:
    def test_dx_and_nodes(self):
        g = Grid(0.0, 2.0, 5)
        assert g.dx == 0.5
        np.testing.assert_allclose(g.nodes, [0.0, 0.5, 1.0, 1.5, 2.0])

    def test_invalid_order(self):
        with pytest.raises(ValueError):
            Grid(1.0, 0.0, 5)

    def test_too_few_points(self):
        with pytest.raises(ValueError):
            Grid(0.0, 1.0, 1)


class TestPLFunction:
    def test_wrong_length(self):
        with pytest.raises(ValueError):
            PLFunction(UNIT5, np.zeros(4))

    def test_non_finite(self):
        with pytest.raises(ValueError):
            PLFunction(UNIT5, np.array([0.0, 1.0, np.nan, 0.0, 0.0]))

    def test_y_is_immutable(self):
        f = pl([0, 1, 2, 3, 4])
        with pytest.raises(ValueError):
            f.y[0] = 5.0


class TestEvalAt:
    def test_exact_at_nodes(self):
        f = pl([1.0, 0.6, 0.2, 0.1, 0.0])
        for x, y in zip(UNIT5.nodes, f.y):
            assert eval_at(f, float(x)) == pytest.approx(y, abs=1e-15)

    def test_midpoint_interpolation(self):
        f = pl([1.0, 0.6, 0.2, 0.1, 0.0])
        assert eval_at(f, 0.375) == pytest.approx(0.4, abs=1e-15)

    def test_outside_domain(self):
        f = pl([0.0, 0.0, 0.0, 0.0, 0.0])
        with pytest.raises(DomainError):
            eval_at(f, 1.5)

    def test_slopes(self):
        f = pl([0.0, 1.0, 1.0, 0.5, 0.5])
        np.testing.assert_allclose(slopes(f), [4.0, 0.0, -2.0, 0.0])


class TestSampling:
    def test_sample_linear_curve(self):
        f = sample_onto_grid(lambda x: 2.0 * x + 1.0, UNIT5)
        np.testing.assert_allclose(f.y, 2.0 * UNIT5.nodes + 1.0)

    def test_sampler_exception_wrapped(self):
        def bad(x):
            raise ArithmeticError("no value here")

        with pytest.raises(SamplerDomainError):
            sample_onto_grid(bad, UNIT5)

    def test_sampler_non_finite(self):
        with pytest.raises(SamplerDomainError):
            sample_onto_grid(lambda x: float("inf"), UNIT5)

    def test_max_abs_deviation(self):
        f = pl([0.0, 0.25, 0.6, 0.75, 1.0])
        assert max_abs_deviation(f, lambda x: x) == pytest.approx(0.1, abs=1e-15)


class TestRepairs:
    def test_pin_endpoints(self):
        f = pin_endpoints(pl([0.3, 0.5, 0.5, 0.5, 0.9]), 1.0, 0.0)
        assert f.y[0] == 1.0 and f.y[-1] == 0.0
        np.testing.assert_allclose(f.y[1:-1], [0.5, 0.5, 0.5])

    def test_clamp_scalar_bounds(self):
        f = clamp_box(pl([-1.0, 0.5, 2.0, 0.5, -0.2]), 0.0, 1.0)
        np.testing.assert_allclose(f.y, [0.0, 0.5, 1.0, 0.5, 0.0])

    def test_clamp_array_bounds(self):
        hi = np.array([1.0, 0.4, 0.4, 0.4, 1.0])
        f = clamp_box(pl([0.5, 0.5, 0.5, 0.5, 0.5]), 0.0, hi)
        np.testing.assert_allclose(f.y, [0.5, 0.4, 0.4, 0.4, 0.5])

    def test_clamp_inverted_bounds(self):
        with pytest.raises(ValueError):
            clamp_box(pl([0.0] * 5), 1.0, 0.0)

    def test_monotone_repair_is_running_max(self):
        f = monotone_repair(pl([0.0, 0.5, 0.3, 0.8, 0.1]))
        np.testing.assert_allclose(f.y, [0.0, 0.5, 0.5, 0.8, 0.8])

    def test_convex_repair_example(self):
        f = convex_repair(pl([1.0, 0.75, 0.2, 0.25, 0.0]))
        np.testing.assert_allclose(f.y, [1.0, 0.6, 0.2, 0.1, 0.0], atol=1e-15)

    def test_convex_repair_keeps_convex_input(self):
        y = np.array([1.0, 0.5, 0.25, 0.1, 0.0])
        f = convex_repair(pl(y))
        np.testing.assert_allclose(f.y, y, atol=1e-15)

    @given(y_vectors)
    @settings(max_examples=200, deadline=None)
    def test_monotone_repair_properties(self, y):
        grid = Grid(0.0, 1.0, y.size)
        out = monotone_repair(PLFunction(grid, y)).y
        assert np.all(np.diff(out) >= 0.0)
        assert np.all(out >= y)
        again = monotone_repair(PLFunction(grid, out)).y
        np.testing.assert_array_equal(again, out)

    @given(y_vectors)
    @settings(max_examples=200, deadline=None)
    def test_convex_repair_properties(self, y):
        grid = Grid(0.0, 1.0, y.size)
        out = convex_repair(PLFunction(grid, y)).y
        # minorant: never above the input, endpoints fixed
        assert np.all(out <= y + 1e-12)
        assert out[0] == y[0] and out[-1] == y[-1]
        if y.size >= 3:
            sl = np.diff(out) * (y.size - 1)
            assert np.all(np.diff(sl) >= -1e-9 * (1.0 + np.max(np.abs(y))))
        again = convex_repair(PLFunction(grid, out)).y
        np.testing.assert_allclose(again, out, atol=1e-12)

    @given(y_vectors)
    @settings(max_examples=100, deadline=None)
    def test_clamp_idempotent(self, y):
        grid = Grid(0.0, 1.0, y.size)
        out = clamp_box(PLFunction(grid, y), -1.0, 1.0)
        again = clamp_box(out, -1.0, 1.0)
        np.testing.assert_array_equal(again.y, out.y)
