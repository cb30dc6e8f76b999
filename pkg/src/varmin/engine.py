"""Simplified (1, lambda) evolution strategy.

Comma selection: each generation draws lambda Gaussian-mutated offspring
of the single progenitor, repairs them, and the best repaired offspring
becomes the next progenitor regardless of its parent's score. A separate
best-ever archive (never re-entering the population) is what gets
reported. Runs are fully determined by (seed, config, problem).

``run`` dispatches to the compiled kernel loop for registered problems;
``run_generic``/``step`` are the Python-level equivalents and also accept
ad-hoc problems. Both paths consume the identical RNG stream: one
full-length noise vector per offspring, drawn in offspring order (fixed
coordinates consume their draws too).
"""

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .kernels import get_kernels
from .rng import GaussianSource


@dataclass(frozen=True)
class ESConfig:
    sigma: float
    lambda_offspring: int = 10
    iterations: int = 100_000
    seed: int = 1

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValueError("sigma must be positive")
        if self.lambda_offspring < 1:
            raise ValueError("lambda_offspring must be >= 1")
        if self.iterations < 1:
            raise ValueError("iterations must be >= 1")


@dataclass(frozen=True)
class RunTrace:
    iterations: np.ndarray = field(repr=False)
    best_objective: np.ndarray = field(repr=False)
    reference: Optional[float] = None

    def gap(self) -> np.ndarray:
        if self.reference is None:
            raise ValueError("trace has no reference objective")
        return self.best_objective - self.reference

    def best_at(self, iteration: int) -> float:
        """Archive value in effect at a given iteration (trace is sparse)."""
        idx = int(np.searchsorted(self.iterations, iteration, side="right")) - 1
        if idx < 0:
            raise ValueError("iteration precedes first trace record")
        return float(self.best_objective[idx])


@dataclass
class ESState:
    progenitor: np.ndarray
    best_ever: np.ndarray
    best_objective: float
    iteration: int
    source: GaussianSource


@dataclass(frozen=True)
class RunOutput:
    best: np.ndarray
    best_objective: float
    trace: RunTrace


def mutate(parent, source: GaussianSource, sigma: float, mask) -> np.ndarray:
    """Gaussian mutation; masked-off coordinates are copied verbatim.

    A noise value is drawn for every coordinate (and discarded on fixed
    ones) so the stream position is independent of the mask.
    """
    parent = np.asarray(parent, dtype=np.float64)
    mask = np.asarray(mask)
    if mask.shape != parent.shape:
        raise ValueError("mask length must match vector length")
    noise = source.normal(parent.size, sigma)
    out = parent.copy()
    sel = mask != 0
    out[sel] += noise[sel]
    return out


def initial_candidate(problem, source: GaussianSource, sigma: float) -> np.ndarray:
    """Boundary chord plus one mutation, then the repair pipeline."""
    return problem.repair(mutate(problem.chord, source, sigma, problem.mask))


def init_state(problem, config: ESConfig) -> ESState:
    source = GaussianSource(config.seed)
    cand = initial_candidate(problem, source, config.sigma)
    obj = problem.objective(cand)
    return ESState(
        progenitor=cand,
        best_ever=cand.copy(),
        best_objective=obj,
        iteration=0,
        source=source,
    )


def step(state: ESState, problem, config: ESConfig) -> ESState:
    """One generation: mutate, repair, evaluate, comma-select."""
    gen_best = None
    gen_best_obj = math.inf
    for c in range(config.lambda_offspring):
        cand = problem.repair(
            mutate(state.progenitor, state.source, config.sigma, problem.mask)
        )
        obj = problem.objective(cand)
        if c == 0 or obj < gen_best_obj:
            gen_best = cand
            gen_best_obj = obj
    state.progenitor = gen_best
    state.iteration += 1
    if gen_best_obj < state.best_objective:
        state.best_objective = gen_best_obj
        state.best_ever = gen_best.copy()
    return state


def run_generic(problem, config: ESConfig, reference: Optional[float] = None) -> RunOutput:
    """Pure-Python run loop; semantically identical to the kernel loop."""
    state = init_state(problem, config)
    trace_it = []
    trace_f = []
    for it in range(1, config.iterations + 1):
        before = state.best_objective
        step(state, problem, config)
        improved = state.best_objective < before
        if it == 1 or improved or it % 100 == 0:
            trace_it.append(it)
            trace_f.append(state.best_objective)
    trace = RunTrace(
        iterations=np.asarray(trace_it, np.int64),
        best_objective=np.asarray(trace_f),
        reference=reference,
    )
    return RunOutput(best=state.best_ever, best_objective=state.best_objective, trace=trace)


def run(problem, config: ESConfig, use_kernel: bool = True) -> RunOutput:
    """Run the ES on a registered problem (kernel loop unless disabled)."""
    reference = getattr(problem, "reference_objective", None)
    if not use_kernel or getattr(problem, "kernel_id", None) is None:
        return run_generic(problem, config, reference)
    k = get_kernels()
    best, best_f, trace_it, trace_f = k.run_loop(
        problem.kernel_id,
        problem.chord,
        problem.mask,
        problem.params,
        problem.upper,
        config.sigma,
        config.lambda_offspring,
        config.iterations,
        np.uint64(config.seed & ((1 << 64) - 1)),
    )
    trace = RunTrace(iterations=trace_it, best_objective=trace_f, reference=reference)
    return RunOutput(best=best, best_objective=float(best_f), trace=trace)
