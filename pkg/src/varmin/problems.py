"""Problem registry: grid, encoding, repair pipeline, objective, references.

Each factory returns a ProblemSpec whose candidate is a flat float64
vector. For the three curve problems the vector is the node ordinates;
for the thermal problem it is (front interior heights, rear interior
heights, front-height gene h_plus).
"""

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import exact
from .functionals import G_DEFAULT, descent_time, newton_resistance, ramm_time, thermal_resistance
from .kernels import BRACH, NEWTON, RAMM, THERMAL, get_kernels
from .plfunc import Grid, PLFunction, sample_onto_grid

_FEAS_TOL = 1e-9


@dataclass(frozen=True)
class ProblemSpec:
    name: str
    kernel_id: int
    n_genes: int
    chord: np.ndarray = field(repr=False)
    mask: np.ndarray = field(repr=False)
    params: np.ndarray = field(repr=False)
    upper: np.ndarray = field(repr=False)
    grid: Grid
    n_segments: int
    default_sigma: float
    reference_objective: float
    interpolant_objective: float
    reference: object
    objective: Callable = field(repr=False)
    repair: Callable = field(repr=False)
    feasible: Callable = field(repr=False)
    decode: Callable = field(repr=False)
    deviation: Callable = field(repr=False)
    reference_sampler: Optional[Callable] = field(default=None, repr=False)


def _make_kernel_callables(kernel_id, params, upper, n):
    k = get_kernels()
    fwork = np.empty(2 * n + 8)
    iwork = np.empty(n + 2, np.int64)

    def repair(vec):
        out = np.array(vec, dtype=np.float64, copy=True)
        k.repair_candidate(kernel_id, out, params, upper, iwork, fwork)
        return out

    def objective(vec):
        return float(k.objective_value(kernel_id, np.asarray(vec, dtype=np.float64), params, fwork))

    return repair, objective


def _endpoint_mask(n):
    mask = np.ones(n, np.uint8)
    mask[0] = mask[-1] = 0
    return mask


def make_brachistochrone(n_segments=20, a_point=(0.0, 10.0), b_point=(10.0, 0.0), g=G_DEFAULT):
    if n_segments < 2:
        raise ValueError("need at least 2 segments")
    x0, y0 = a_point
    x1, y1 = b_point
    grid = Grid(x0, x1, n_segments + 1)
    chord = np.linspace(y0, y1, n_segments + 1)
    params = np.array([grid.dx, g, y0, y1, y0])
    upper = np.empty(0)
    repair, objective = _make_kernel_callables(BRACH, params, upper, chord.size)
    sol = exact.solve_cycloid(a_point, b_point, g)
    sampler = exact.cycloid_sampler(sol)
    interp = sample_onto_grid(sampler, grid)

    def feasible(vec):
        return abs(vec[0] - y0) <= _FEAS_TOL and abs(vec[-1] - y1) <= _FEAS_TOL

    def decode(vec):
        return PLFunction(grid, vec)

    def deviation(vec):
        return float(np.max(np.abs(np.asarray(vec) - interp.y)))

    return ProblemSpec(
        name="brachistochrone",
        kernel_id=BRACH,
        n_genes=chord.size,
        chord=chord,
        mask=_endpoint_mask(chord.size),
        params=params,
        upper=upper,
        grid=grid,
        n_segments=n_segments,
        default_sigma=0.01,
        reference_objective=sol.time,
        interpolant_objective=descent_time(interp, g, y0),
        reference=sol,
        objective=objective,
        repair=repair,
        feasible=feasible,
        decode=decode,
        deviation=deviation,
        reference_sampler=sampler,
    )


def make_ramm(b=2.0, n_segments=20, g=G_DEFAULT):
    if not b > 0:
        raise ValueError("b must be positive")
    grid = Grid(0.0, b, n_segments + 1)
    chord = np.linspace(1.0, 0.0, n_segments + 1)
    params = np.array([grid.dx, g, 1.0, 0.0, 1.0])
    upper = chord.copy()  # box constraint: 0 <= y <= chord line
    repair, objective = _make_kernel_callables(RAMM, params, upper, chord.size)
    bounds = exact.ramm_reference(b)
    if b > math.pi / 2.0:
        sampler, t_ref = exact.ramm_conjectured_curve(b, g)
    else:
        sol = exact.solve_cycloid((0.0, 1.0), (b, 0.0), g)
        sampler, t_ref = exact.cycloid_sampler(sol), sol.time
    interp = sample_onto_grid(sampler, grid)

    def feasible(vec):
        v = np.asarray(vec)
        if abs(v[0] - 1.0) > _FEAS_TOL or abs(v[-1]) > _FEAS_TOL:
            return False
        if np.any(v < -_FEAS_TOL) or np.any(v > upper + _FEAS_TOL):
            return False
        sl = np.diff(v) / grid.dx
        return bool(np.all(np.diff(sl) >= -_FEAS_TOL))

    def decode(vec):
        return PLFunction(grid, vec)

    def deviation(vec):
        return float(np.max(np.abs(np.asarray(vec) - interp.y)))

    return ProblemSpec(
        name="ramm",
        kernel_id=RAMM,
        n_genes=chord.size,
        chord=chord,
        mask=_endpoint_mask(chord.size),
        params=params,
        upper=upper,
        grid=grid,
        n_segments=n_segments,
        default_sigma=0.001,
        reference_objective=t_ref,
        interpolant_objective=ramm_time(interp, g),
        reference=bounds,
        objective=objective,
        repair=repair,
        feasible=feasible,
        decode=decode,
        deviation=deviation,
        reference_sampler=sampler,
    )


def make_newton(r=1.0, height=2.0, n_segments=20):
    if not (r > 0 and height > 0):
        raise ValueError("r and height must be positive")
    grid = Grid(0.0, r, n_segments + 1)
    chord = np.linspace(0.0, height, n_segments + 1)
    params = np.array([grid.dx, height, 0.0, 0.0, 0.0])
    upper = np.empty(0)
    repair, objective = _make_kernel_callables(NEWTON, params, upper, chord.size)
    profile = exact.solve_newton_profile(r, height)
    sampler = exact.newton_sampler(profile)
    interp = sample_onto_grid(sampler, grid)

    def feasible(vec):
        v = np.asarray(vec)
        if abs(v[0]) > _FEAS_TOL or abs(v[-1] - height) > _FEAS_TOL:
            return False
        return bool(np.all(np.diff(v) >= -_FEAS_TOL))

    def decode(vec):
        return PLFunction(grid, vec)

    def deviation(vec):
        return float(np.max(np.abs(np.asarray(vec) - interp.y)))

    return ProblemSpec(
        name="newton",
        kernel_id=NEWTON,
        n_genes=chord.size,
        chord=chord,
        mask=_endpoint_mask(chord.size),
        params=params,
        upper=upper,
        grid=grid,
        n_segments=n_segments,
        default_sigma=0.01,
        reference_objective=exact.newton_exact_resistance(profile),
        interpolant_objective=newton_resistance(interp),
        reference=profile,
        objective=objective,
        repair=repair,
        feasible=feasible,
        decode=decode,
        deviation=deviation,
        reference_sampler=sampler,
    )


def _thermal_optimal_curves(h, nf, nr):
    """Minimizer at h=2: front is the triangle of slope u_*, the rear climbs
    h - u_* at unit slope somewhere in [0,1] (placement is free: the cost
    depends only on the slope distribution). Returns the front interpolant
    and the family of rear ramps."""
    u_star = exact.U_STAR
    h_minus = h - u_star
    front_grid = Grid(0.0, 1.0, nf + 1)
    front = PLFunction(front_grid, u_star * front_grid.nodes)
    rear_grid = Grid(0.0, 1.0, nr + 1)

    def rear_ramp(shift):
        t = rear_grid.nodes
        return np.minimum(h_minus, np.maximum(0.0, t - shift))

    return front, rear_grid, rear_ramp, h_minus


def make_thermal(h=2.0, n_segments=31):
    ref = exact.thermal_reference(h)
    nf = (n_segments + 1) // 2
    nr = n_segments // 2
    n_genes = (nf - 1) + (nr - 1) + 1
    # initializer: even height split, straight chords on both faces
    hp0 = h / 2.0
    chord = np.empty(n_genes)
    chord[: nf - 1] = hp0 * np.arange(1, nf) / nf
    chord[nf - 1 : nf + nr - 2] = (h - hp0) * np.arange(1, nr) / nr
    chord[-1] = hp0
    params = np.array([h, float(nf), float(nr), 0.0, 0.0])
    upper = np.empty(0)
    repair, objective = _make_kernel_callables(THERMAL, params, upper, n_genes)
    front_grid = Grid(0.0, 1.0, nf + 1)
    rear_grid = Grid(0.0, 1.0, nr + 1)
    opt_front, _, rear_ramp, h_minus = _thermal_optimal_curves(h, nf, nr)

    def decode(vec):
        v = np.asarray(vec, dtype=np.float64)
        hp = v[-1]
        front = np.concatenate(([0.0], v[: nf - 1], [hp]))
        rear = np.concatenate(([0.0], v[nf - 1 : nf + nr - 2], [h - hp]))
        return PLFunction(front_grid, front), PLFunction(rear_grid, rear)

    def feasible(vec):
        v = np.asarray(vec)
        hp = v[-1]
        if hp < -_FEAS_TOL or hp > h + _FEAS_TOL:
            return False
        front, rear = decode(v)
        return bool(
            np.all(np.diff(front.y) >= -_FEAS_TOL)
            and np.all(np.diff(rear.y) >= -_FEAS_TOL)
            and abs(front.y[-1] - hp) <= _FEAS_TOL
            and abs(rear.y[-1] - (h - hp)) <= _FEAS_TOL
        )

    def deviation(vec):
        # distance to the minimizer set: the rear ramp placement is a flat
        # direction of the objective, so minimize over it
        front, rear = decode(vec)
        dev_front = float(np.max(np.abs(front.y - opt_front.y)))
        shifts = np.linspace(0.0, max(1.0 - h_minus, 0.0), 201)
        dev_rear = min(
            float(np.max(np.abs(rear.y - rear_ramp(s)))) for s in shifts
        )
        return max(dev_front, dev_rear)

    # interpolant of one representative minimizer (ramp at the left edge)
    interp_rear = PLFunction(rear_grid, rear_ramp(0.0))
    interp_obj = thermal_resistance(opt_front, interp_rear)

    return ProblemSpec(
        name="thermal",
        kernel_id=THERMAL,
        n_genes=n_genes,
        chord=chord,
        mask=np.ones(n_genes, np.uint8),
        params=params,
        upper=upper,
        grid=front_grid,
        n_segments=n_segments,
        default_sigma=0.01,
        reference_objective=ref.resistance,
        interpolant_objective=interp_obj,
        reference=ref,
        objective=objective,
        repair=repair,
        feasible=feasible,
        decode=decode,
        deviation=deviation,
        reference_sampler=None,
    )


_FACTORIES = {
    "brachistochrone": make_brachistochrone,
    "ramm": make_ramm,
    "newton": make_newton,
    "thermal": make_thermal,
}

PROBLEM_NAMES = tuple(_FACTORIES)


def make_problem(name: str, **kwargs) -> ProblemSpec:
    try:
        factory = _FACTORIES[name]
    except KeyError:
        raise ValueError(f"unknown problem {name!r}; choose from {PROBLEM_NAMES}")
    return factory(**kwargs)
