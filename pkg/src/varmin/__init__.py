"""Derivative-free (1, lambda)-ES over piecewise-linear curves.

Four variational benchmark problems (brachistochrone, restricted
brachistochrone, Newton's minimal resistance, two-sided-flux thermal
resistance) with exact reference solvers and a CLI harness.
"""

from .engine import ESConfig, ESState, RunOutput, RunTrace, run, run_generic, step
from .plfunc import Grid, PLFunction
from .problems import (
    PROBLEM_NAMES,
    ProblemSpec,
    make_brachistochrone,
    make_newton,
    make_problem,
    make_ramm,
    make_thermal,
)
from .rng import GaussianSource, gaussian_vector

__all__ = [
    "ESConfig",
    "ESState",
    "RunOutput",
    "RunTrace",
    "run",
    "run_generic",
    "step",
    "Grid",
    "PLFunction",
    "PROBLEM_NAMES",
    "ProblemSpec",
    "make_brachistochrone",
    "make_newton",
    "make_problem",
    "make_ramm",
    "make_thermal",
    "GaussianSource",
    "gaussian_vector",
]

__version__ = "0.1.0"
