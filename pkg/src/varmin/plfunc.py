"""Piecewise-linear functions on uniform grids, and feasibility repairs.

Candidates are vectors of node ordinates on a fixed, equally spaced
x-grid. The repair transforms here (endpoint pinning, box clamping,
monotone repair, greatest convex minorant) are the building blocks of the
per-problem feasibility pipelines; all are idempotent and deterministic.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, SamplerDomainError
from .kernels import get_kernels


@dataclass(frozen=True)
class Grid:
    """Uniform grid of ``n_points`` nodes on [x_start, x_end]."""

    x_start: float
    x_end: float
    n_points: int

    def __post_init__(self):
        if not self.x_end > self.x_start:
            raise ValueError("x_end must exceed x_start")
        if self.n_points < 2:
            raise ValueError("grid needs at least 2 nodes")

    @property
    def dx(self) -> float:
        return (self.x_end - self.x_start) / (self.n_points - 1)

    @property
    def nodes(self) -> np.ndarray:
        return np.linspace(self.x_start, self.x_end, self.n_points)


@dataclass(frozen=True)
class PLFunction:
    """Piecewise-linear function: one ordinate per grid node."""

    grid: Grid
    y: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.asarray(self.y, dtype=np.float64).copy()
        if arr.ndim != 1 or arr.size != self.grid.n_points:
            raise ValueError("y must have one value per grid node")
        if not np.all(np.isfinite(arr)):
            raise ValueError("y values must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "y", arr)

    def with_y(self, y: np.ndarray) -> "PLFunction":
        return PLFunction(self.grid, y)


def sample_onto_grid(curve, grid: Grid) -> PLFunction:
    """Sample a continuous curve at the grid nodes."""
    vals = np.empty(grid.n_points)
    for i, x in enumerate(grid.nodes):
        try:
            vals[i] = curve(x)
        except Exception as exc:
            raise SamplerDomainError(
                f"sampler domain: curve undefined at x={x!r}"
            ) from exc
    if not np.all(np.isfinite(vals)):
        raise SamplerDomainError("sampler domain: non-finite curve value")
    return PLFunction(grid, vals)


def eval_at(f: PLFunction, x: float) -> float:
    """Linear interpolation; exact at the nodes."""
    g = f.grid
    if not (g.x_start <= x <= g.x_end):
        raise DomainError(f"x={x!r} outside [{g.x_start}, {g.x_end}]")
    pos = (x - g.x_start) / g.dx
    i = min(int(pos), g.n_points - 2)
    t = pos - i
    return float(f.y[i] * (1.0 - t) + f.y[i + 1] * t)


def slopes(f: PLFunction) -> np.ndarray:
    return np.diff(f.y) / f.grid.dx


def pin_endpoints(f: PLFunction, y_start: float, y_end: float) -> PLFunction:
    y = f.y.copy()
    get_kernels().pin_ends(y, y_start, y_end)
    return f.with_y(y)


def clamp_box(f: PLFunction, lower, upper) -> PLFunction:
    """Per-node clamp into [lower, upper]; bounds may be scalars or arrays."""
    lo = np.broadcast_to(np.asarray(lower, dtype=np.float64), f.y.shape).copy()
    hi = np.broadcast_to(np.asarray(upper, dtype=np.float64), f.y.shape).copy()
    if np.any(lo > hi):
        raise ValueError("inverted bounds: lower > upper at some node")
    y = f.y.copy()
    get_kernels().clamp_to_arrays(y, lo, hi)
    return f.with_y(y)


def monotone_repair(f: PLFunction) -> PLFunction:
    """Running-maximum pass; output is nondecreasing and dominates input."""
    y = f.y.copy()
    get_kernels().running_max(y)
    return f.with_y(y)


def convex_repair(f: PLFunction) -> PLFunction:
    """Greatest convex minorant of the node set (lower convex hull)."""
    y = f.y.copy()
    n = y.size
    stack = np.empty(n + 1, np.int64)
    buf = np.empty(n)
    get_kernels().convex_minorant(y, stack, buf)
    return f.with_y(y)


def max_abs_deviation(f: PLFunction, reference) -> float:
    """Max over nodes of |y_i - reference(x_i)|."""
    ref = sample_onto_grid(reference, f.grid)
    return float(np.max(np.abs(f.y - ref.y)))
