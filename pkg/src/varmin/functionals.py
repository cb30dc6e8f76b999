"""Objective functionals on piecewise-linear candidates.

Each functional is evaluated exactly (closed form per linear segment);
``adaptive_quadrature`` is the independent numerical oracle the tests use
to cross-check the closed forms.
"""

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import QuadratureError, StallError
from .kernels import get_kernels
from .plfunc import PLFunction

G_DEFAULT = 9.8


@dataclass(frozen=True)
class PhysicalConstants:
    g: float = G_DEFAULT

    def __post_init__(self):
        if not self.g > 0:
            raise ValueError("g must be positive")


@dataclass(frozen=True)
class FluxPair:
    """Front/rear pressure fluxes as functions of the profile slope."""

    p_plus: Callable[[float], float]
    p_minus: Callable[[float], float]


def default_flux_pair() -> FluxPair:
    k = get_kernels()
    return FluxPair(p_plus=k.flux_front, p_minus=k.flux_rear)


def segment_descent_time(x1, y1, x2, y2, v_in, g=G_DEFAULT):
    """Exact traversal time of one linear segment under gravity.

    The tangential acceleration is constant along a linear segment, so
    time and exit speed follow from constant-acceleration kinematics;
    energy conservation gives v_out^2 - v_in^2 = 2 g (y1 - y2). Raises
    StallError when the particle cannot reach the far end.
    """
    if v_in < 0:
        raise ValueError("v_in must be nonnegative")
    if x1 == x2 and y1 == y2:
        raise ValueError("segment endpoints coincide")
    seg = math.hypot(x2 - x1, y2 - y1)
    a_t = g * (y1 - y2) / seg
    if a_t == 0.0:
        if v_in == 0.0:
            raise StallError("stall: zero speed on a level segment")
        return seg / v_in, v_in
    v2sq = v_in * v_in + 2.0 * a_t * seg
    if v2sq < 0.0:
        raise StallError("stall: insufficient energy to finish segment")
    v_out = math.sqrt(v2sq)
    return (v_out - v_in) / a_t, v_out


def descent_time(f: PLFunction, g=G_DEFAULT, release_height=None) -> float:
    """Total descent time along a polyline, released at rest.

    The release height defaults to the first node; any stall yields the
    +inf infeasibility sentinel, never an exception.
    """
    if release_height is None:
        release_height = float(f.y[0])
    return float(get_kernels().eval_descent(f.y, f.grid.dx, g, release_height))


def ramm_functional(f: PLFunction) -> float:
    """Dimensionless restricted-brachistochrone cost (release height 1)."""
    return float(get_kernels().eval_ramm_functional(f.y, f.grid.dx))


def ramm_time(f: PLFunction, g=G_DEFAULT) -> float:
    """Physical descent time of a restricted-brachistochrone candidate."""
    return float(get_kernels().eval_descent(f.y, f.grid.dx, g, 1.0))


def newton_resistance(f: PLFunction) -> float:
    """Aerodynamic resistance of a radial profile, x/(1+y'^2) integrated."""
    return float(get_kernels().eval_newton(f.y, f.grid.dx))


def thermal_resistance(front: PLFunction, rear: PLFunction, flux: FluxPair = None) -> float:
    """Two-sided flux resistance: front slopes resist, rear slopes accelerate."""
    if flux is None:
        flux = default_flux_pair()
    total = 0.0
    for f, p in ((front, flux.p_plus), (rear, flux.p_minus)):
        dt = f.grid.dx
        y = f.y
        for i in range(y.size - 1):
            total += p((y[i + 1] - y[i]) / dt) * dt
    return float(total)


def _adaptive_simpson(fn, a, b, fa, fm, fb, whole, tol, depth):
    m = 0.5 * (a + b)
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm = fn(lm)
    frm = fn(rm)
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    if depth <= 0:
        raise QuadratureError("adaptive quadrature: depth limit reached")
    if abs(left + right - whole) <= 15.0 * tol:
        return left + right + (left + right - whole) / 15.0
    return _adaptive_simpson(fn, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) + (
        _adaptive_simpson(fn, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    )


def _simpson_panel(fn, a, b, tol):
    fa = fn(a)
    fb = fn(b)
    m = 0.5 * (a + b)
    fm = fn(m)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    return _adaptive_simpson(fn, a, b, fa, fm, fb, whole, tol, 60)


def adaptive_quadrature(integrand, a, b, tol=1e-10) -> float:
    """Adaptive Simpson integral of ``integrand`` over [a, b].

    Integrable endpoint singularities are handled by summing dyadically
    shrinking panels toward the singular endpoint until their contribution
    falls below the tolerance.
    """
    if not a < b:
        raise ValueError("require a < b")

    def finite_at(x):
        try:
            return math.isfinite(integrand(x))
        except (ZeroDivisionError, ValueError, OverflowError):
            return False

    sing_left = not finite_at(a)
    sing_right = not finite_at(b)
    lo, hi = a, b
    total = 0.0
    if sing_left and sing_right:
        mid = 0.5 * (a + b)
        return adaptive_quadrature(integrand, a, mid, 0.5 * tol) + adaptive_quadrature(
            integrand, mid, hi, 0.5 * tol
        )
    width = b - a
    if sing_left:
        hi_k = b
        for k in range(1, 2000):
            lo_k = a + width * 0.5**k
            panel = _simpson_panel(integrand, lo_k, hi_k, tol * 0.25)
            total += panel
            hi_k = lo_k
            # dropped tail is a geometric remainder of the panel series
            if abs(panel) < tol * 1e-2 and k > 8:
                return total
        raise QuadratureError("adaptive quadrature: left singularity did not decay")
    if sing_right:
        lo_k = a
        for k in range(1, 2000):
            hi_k = b - width * 0.5**k
            panel = _simpson_panel(integrand, lo_k, hi_k, tol * 0.25)
            total += panel
            lo_k = hi_k
            if abs(panel) < tol * 1e-2 and k > 8:
                return total
        raise QuadratureError("adaptive quadrature: right singularity did not decay")
    return _simpson_panel(integrand, lo, hi, tol)
