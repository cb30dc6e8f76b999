"""Shared fixtures and helpers for the varmin test suite."""

import numpy as np
import pytest

from varmin.problems import PROBLEM_NAMES, make_problem
from varmin.rng import GaussianSource


@pytest.fixture(scope="session")
def all_problems():
    return {name: make_problem(name) for name in PROBLEM_NAMES}


def random_feasible(problem, rng, scale=0.3):
    """A feasible candidate: chord plus Gaussian noise, repaired."""
    raw = problem.chord + scale * rng.standard_normal(problem.n_genes)
    return problem.repair(raw)


@pytest.fixture()
def np_rng():
    return np.random.default_rng(2024)


@pytest.fixture()
def source():
    return GaussianSource(7)
