"""Closed-form and parametric reference solutions.

Cycloid solver for the unconstrained descent problem, Ramm's bounds and
conjectured composite curve for the restricted problem, Newton's
parametric minimal-resistance profile, and the transcribed constants for
the two-sided-flux (thermal) instance at h = 2.

Note on the cycloid parameter: with x = x0 + R(theta - sin theta),
y = y0 - R(1 - cos theta) and T = sqrt(R/g) * theta_end, the endpoints
(0,10)->(10,0) give R ~ 5.729, theta_end ~ 2.41201, T ~ 1.84421 at
g = 9.8 -- a mutually consistent triple. R is the rolling-circle radius.
"""

import math
from dataclasses import dataclass

from .errors import DomainError
from .functionals import G_DEFAULT, adaptive_quadrature


def _bisect(fn, lo, hi, tol=1e-12, max_iter=300):
    flo = fn(lo)
    fhi = fn(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise ValueError("bisection bracket does not straddle a root")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        fm = fn(mid)
        if fm == 0.0 or hi - lo < tol:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


# ------------------------------------------------------------------ cycloid


@dataclass(frozen=True)
class CycloidSolution:
    radius: float
    theta_end: float
    origin: tuple
    time: float
    g: float = G_DEFAULT


def solve_cycloid(a_point, b_point, g=G_DEFAULT) -> CycloidSolution:
    """Cycloid arc through two points, released at rest at the first.

    Solves (1 - cos t)/(t - sin t) = drop/span for the end parameter by
    bisection, then reads off radius and descent time.
    """
    x0, y0 = a_point
    x1, y1 = b_point
    drop = y0 - y1
    span = x1 - x0
    if drop <= 0 or span <= 0:
        raise DomainError("no cycloid arc: end point must lie below and right")
    ratio = drop / span

    def resid(t):
        d = t - math.sin(t)
        if d <= 0.0:  # underflow near t=0, where the ratio diverges to +inf
            return math.inf
        return (1.0 - math.cos(t)) / d - ratio

    theta = _bisect(resid, 1e-9, 2.0 * math.pi - 1e-12)
    radius = drop / (1.0 - math.cos(theta))
    time = math.sqrt(radius / g) * theta
    return CycloidSolution(radius=radius, theta_end=theta, origin=(x0, y0), time=time, g=g)


def cycloid_sampler(sol: CycloidSolution):
    """y as a function of x along the cycloid arc (monotone inversion)."""
    x0, y0 = sol.origin
    r = sol.radius
    x_end = x0 + r * (sol.theta_end - math.sin(sol.theta_end))
    edge = 1e-9 * (1.0 + abs(x_end - x0))  # bisection slack at the arc ends

    def curve(x):
        if not (x0 - edge <= x <= x_end + edge):
            raise DomainError(f"x={x!r} outside cycloid arc [{x0}, {x_end}]")
        x = min(max(x, x0), x_end)
        theta = _bisect(
            lambda t: x0 + r * (t - math.sin(t)) - x, 0.0, sol.theta_end
        )
        return y0 - r * (1.0 - math.cos(theta))

    return curve


# --------------------------------------------------------------------- Ramm


@dataclass(frozen=True)
class RammReference:
    b: float
    T0: float
    TP: float
    TPbr: float
    case_id: int


def ramm_reference(b: float) -> RammReference:
    """Bound values and case classification for the restricted problem."""
    if not b > 0:
        raise ValueError("b must be positive")
    T0 = 2.0 * math.sqrt(1.0 + b * b)
    TP = 2.0 + b
    TPbr = math.sqrt(4.0 + math.pi**2) + b - math.pi / 2.0
    if b < 4.0 / 3.0:
        case_id = 1
    elif b <= math.pi / 2.0:
        case_id = 2
    else:
        case_id = 3
    return RammReference(b=b, T0=T0, TP=TP, TPbr=TPbr, case_id=case_id)


def ramm_conjectured_curve(b: float, g=G_DEFAULT):
    """Composite curve: cycloid (0,1)->(pi/2,0), then level run to (b,0).

    Returns (sampler, descent time). Only meaningful past the cycloid's
    natural landing point b > pi/2.
    """
    half_pi = math.pi / 2.0
    if not b > half_pi:
        raise DomainError("composite curve requires b > pi/2")
    sol = solve_cycloid((0.0, 1.0), (half_pi, 0.0), g)
    arc = cycloid_sampler(sol)

    def curve(x):
        if not (-1e-12 <= x <= b + 1e-12):
            raise DomainError(f"x={x!r} outside [0, {b}]")
        if x <= half_pi:
            return arc(min(x, half_pi))
        return 0.0

    t_total = math.pi * math.sqrt(0.5 / g) + (b - half_pi) / math.sqrt(2.0 * g)
    return curve, t_total


# ------------------------------------------------------------------- Newton


@dataclass(frozen=True)
class NewtonProfile:
    lambda_n: float
    u_max: float
    r: float
    H: float


def _newton_x_unit(u):
    return 0.5 * (1.0 / u + 2.0 * u + u**3)


def _newton_y_unit(u):
    return 0.5 * (-math.log(u) + u * u + 0.75 * u**4) - 7.0 / 8.0


def solve_newton_profile(r: float, H: float) -> NewtonProfile:
    """Fit the parametric minimal-resistance profile to y(u_max)=H, x(u_max)=r.

    The ratio y(u)/x(u) is scale-free, so u_max is found by bisection and
    the scale parameter follows from x(u_max) = r.
    """
    if not (r > 0 and H > 0):
        raise ValueError("r and H must be positive")
    target = H / r

    def resid(u):
        return _newton_y_unit(u) / _newton_x_unit(u) - target

    u_hi = 2.0
    while resid(u_hi) < 0.0:
        u_hi *= 2.0
        if u_hi > 1e9:
            raise DomainError("H/r outside the admissible range of the profile")
    u_max = _bisect(resid, 1.0 + 1e-13, u_hi)
    lam = r / _newton_x_unit(u_max)
    return NewtonProfile(lambda_n=lam, u_max=u_max, r=r, H=H)


def newton_exact_resistance(p: NewtonProfile) -> float:
    """Resistance of the exact profile: flat-nose disk plus curved annulus.

    Along the curved part the parameter u equals the profile slope, so the
    integrand is x(u)/(1 + u^2) with dx = x'(u) du.
    """
    lam = p.lambda_n

    def integrand(u):
        xp = 0.5 * lam * (-1.0 / (u * u) + 2.0 + 3.0 * u * u)
        return lam * _newton_x_unit(u) / (1.0 + u * u) * xp

    curved = adaptive_quadrature(integrand, 1.0, p.u_max, tol=1e-12)
    return 2.0 * lam * lam + curved


def newton_sampler(p: NewtonProfile):
    """y as a function of x: flat nose for x <= 2*lambda, else inverted arc."""
    lam = p.lambda_n

    def curve(x):
        if not (-1e-12 <= x <= p.r + 1e-12):
            raise DomainError(f"x={x!r} outside [0, {p.r}]")
        x = min(max(x, 0.0), p.r)
        if x <= 2.0 * lam:
            return 0.0
        u = _bisect(lambda v: lam * _newton_x_unit(v) - x, 1.0, p.u_max)
        return lam * _newton_y_unit(u)

    return curve


# ------------------------------------------------------------------ thermal

U_STAR = 1.60847
U_MINUS0 = 1.0
THERMAL_RESISTANCE_H2 = 0.681


@dataclass(frozen=True)
class ThermalReference:
    h: float
    u_star: float
    u_minus0: float
    case_id: int
    resistance: float


def thermal_reference(h: float) -> ThermalReference:
    """Reference constants for the two-sided-flux instance; only h=2."""
    if abs(h - 2.0) > 1e-12:
        raise DomainError("unsupported instance: only h = 2 is tabulated")
    return ThermalReference(
        h=2.0,
        u_star=U_STAR,
        u_minus0=U_MINUS0,
        case_id=3,
        resistance=THERMAL_RESISTANCE_H2,
    )
