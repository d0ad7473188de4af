"""The three optimizers as explicit step functions over explicit state.

* `ea_step`: elitist (1+1) EA with shift mutation; the offspring replaces
  the current best whenever its fitness is at least as large.
* `rea_step`: re-optimization EA.  While the re-optimization flag is set,
  parent selection splits between the current best (probability 1/2) and a
  uniformly chosen member of the Hamming-slot memory; slot i keeps the best
  point seen at Hamming distance i from the previous-period best, with one
  overflow slot for anything farther than the radius.  The flag clears as
  soon as the current best matches the fitness achieved before the change,
  after which the step is a plain EA step.
* `smooth_rea_step`: identical to `rea_step` except that the probability of
  picking the current best ramps linearly, min(1, t/(s*n^2)), in the number
  of iterations t since the last change.

`run_algorithm` drives the periodic-change loop.  Two interchangeable
engines produce bit-identical traces: "python" composes the step functions
below (reference path), "compiled" runs the numba kernel (fast path, used
by experiments).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from dynlo.config import ExperimentConfig
from dynlo.core import RandomStream, bit_text, hamming, random_bitstring
from dynlo.mutation import MutationParams, shift_mutation
from dynlo.problem import DynamicLeadingOnes


@dataclass
class EaState:
    """Current best point and its fitness under the current target."""

    best: np.ndarray
    best_fitness: int


@dataclass
class ReaState:
    """EA state plus the re-optimization memory.

    Undefined slots carry fitness -inf; a defined slot i <= gamma always
    holds a point at Hamming distance exactly i from `prev_best`.  Slot
    fitness values are written when the slot is, and never refreshed within
    a period (the landscape is static between changes).
    """

    best: np.ndarray
    best_fitness: int
    gamma: int
    slots: list[Optional[np.ndarray]]
    slot_fitness: list[float]
    prev_best: np.ndarray
    prev_best_fitness: int
    reoptimizing: bool = False
    steps_since_change: int = 0
    steps_total: int = 0


@dataclass(frozen=True)
class SmoothParams:
    s: float

    def __post_init__(self):
        if self.s <= 0:
            raise ValueError(f"smoothness s={self.s} must be positive")


@dataclass(frozen=True)
class RunTrace:
    """Per-evaluation best-fitness series of one run, plus period summaries.

    `best_fitness_per_eval[t]` is the best fitness after evaluation t+1;
    `period_end_best[m]` is the best fitness at the last iteration of the
    (m+1)-th complete period.  Incomplete final periods contribute no
    period value.
    """

    best_fitness_per_eval: np.ndarray
    period_end_best: np.ndarray
    n_perturbations: int
    initial_target: str
    seed: Optional[int] = None
    config_id: Optional[str] = None


def initial_ea_state(x: np.ndarray, problem: DynamicLeadingOnes) -> EaState:
    return EaState(best=x, best_fitness=problem.reevaluate(x))


def initial_rea_state(
    x: np.ndarray, problem: DynamicLeadingOnes, gamma: int
) -> ReaState:
    f = problem.reevaluate(x)
    return ReaState(
        best=x,
        best_fitness=f,
        gamma=gamma,
        slots=[None] * (gamma + 2),
        slot_fitness=[-math.inf] * (gamma + 2),
        prev_best=x,
        prev_best_fitness=f,
    )


def ea_step(
    state: EaState,
    problem: DynamicLeadingOnes,
    params: MutationParams,
    rng: RandomStream,
) -> EaState:
    """One offspring, one counted evaluation, weakly elitist replacement."""
    y = shift_mutation(state.best, params, rng)
    fy = problem.evaluate(y)
    if fy >= state.best_fitness:
        state.best = y
        state.best_fitness = fy
    return state


def select_parent(state: ReaState, p_best: float, rng: RandomStream) -> np.ndarray:
    """Parent for the next offspring while re-optimizing.

    With probability `p_best` the current best; otherwise uniform among the
    defined slots whose bit string differs from the current best.  An empty
    pool falls back to the current best.  Degenerate probabilities (0 or 1)
    consume no randomness for the greedy/pool decision.
    """
    pool = [
        s
        for s in state.slots
        if s is not None and not np.array_equal(s, state.best)
    ]
    if not pool or p_best >= 1.0:
        return state.best
    if p_best > 0.0 and rng.random() < p_best:
        return state.best
    return pool[int(rng.integers(0, len(pool)))]


def _rea_family_step(
    state: ReaState,
    p_best: float,
    problem: DynamicLeadingOnes,
    params: MutationParams,
    rng: RandomStream,
) -> ReaState:
    reopt = state.reoptimizing
    parent = select_parent(state, p_best, rng) if reopt else state.best
    y = shift_mutation(parent, params, rng)
    fy = problem.evaluate(y)
    if fy >= state.best_fitness:
        state.best = y
        state.best_fitness = fy
    if reopt:
        i = min(hamming(y, state.prev_best), state.gamma + 1)
        if fy >= state.slot_fitness[i]:
            state.slots[i] = y
            state.slot_fitness[i] = fy
        if state.best_fitness >= state.prev_best_fitness:
            state.reoptimizing = False
    state.steps_since_change += 1
    state.steps_total += 1
    return state


def rea_step(
    state: ReaState,
    problem: DynamicLeadingOnes,
    params: MutationParams,
    rng: RandomStream,
) -> ReaState:
    return _rea_family_step(state, 0.5, problem, params, rng)


def smooth_p_best(t: int, s: float, n: int) -> float:
    """Probability of greedy parent selection t iterations after a change."""
    return min(1.0, t / (s * n * n))


def smooth_rea_step(
    state: ReaState,
    smooth: SmoothParams,
    problem: DynamicLeadingOnes,
    params: MutationParams,
    rng: RandomStream,
    t_mode: str = "since_change",
) -> ReaState:
    t = state.steps_since_change if t_mode == "since_change" else state.steps_total
    return _rea_family_step(
        state, smooth_p_best(t, smooth.s, problem.n), problem, params, rng
    )


def on_perturbation(
    state: EaState | ReaState, problem: DynamicLeadingOnes, rng: RandomStream
) -> EaState | ReaState:
    """Period boundary: move the target, then refresh the stored fitness.

    Called before the boundary iteration's offspring is generated.  For REA
    states this snapshots the pre-change best (the threshold the flag
    mechanism must reach again), re-arms re-optimization, and resets the
    slot memory to hold only the previous best.  Fitness refreshes are free.
    """
    if isinstance(state, ReaState):
        state.prev_best = state.best
        state.prev_best_fitness = state.best_fitness  # pre-change fitness
        problem.perturb(rng)
        state.reoptimizing = True
        state.steps_since_change = 0
        state.slots = [None] * (state.gamma + 2)
        state.slot_fitness = [-math.inf] * (state.gamma + 2)
        state.slots[0] = state.prev_best
        state.slot_fitness[0] = problem.reevaluate(state.prev_best)
        state.best_fitness = problem.reevaluate(state.best)
    else:
        problem.perturb(rng)
        state.best_fitness = problem.reevaluate(state.best)
    return state


def _run_python(
    config: ExperimentConfig,
    rng: RandomStream,
    target: np.ndarray,
    x0: np.ndarray,
) -> np.ndarray:
    """Reference loop composed from the public step functions."""
    problem = DynamicLeadingOnes(config.n, config.k, config.tau, target)
    params = MutationParams(config.n, config.p)
    kind = config.algorithm
    if kind == "ea":
        state: EaState | ReaState = initial_ea_state(x0, problem)
    else:
        state = initial_rea_state(x0, problem, config.gamma)
    smooth = SmoothParams(config.s) if kind == "smooth_rea" else None

    budget, tau = config.budget, config.tau
    trace = np.empty(budget, dtype=np.int32)
    for t in range(budget):
        if t != 0 and t % tau == 0:
            on_perturbation(state, problem, rng)
        if kind == "ea":
            ea_step(state, problem, params, rng)
        elif kind == "rea":
            rea_step(state, problem, params, rng)
        else:
            smooth_rea_step(
                state, smooth, problem, params, rng, t_mode=config.smooth_t_mode
            )
        trace[t] = state.best_fitness
    return trace


def run_algorithm(
    algorithm_kind: str,
    config: ExperimentConfig,
    rng: RandomStream,
    engine: str = "compiled",
) -> RunTrace:
    """One full run: `budget` counted evaluations with changes every tau.

    The initial target and the initial search point are sampled from `rng`
    (in that order); the initial evaluation is a free refresh, so the trace
    holds exactly `budget` entries, one per counted evaluation.  Both
    engines consume the stream identically and yield bit-identical traces.
    """
    if algorithm_kind not in ("ea", "rea", "smooth_rea"):
        raise ValueError(f"unknown algorithm kind: {algorithm_kind!r}")
    if algorithm_kind != config.algorithm:
        config = ExperimentConfig(**{**config.to_dict(), "algorithm": algorithm_kind})

    target = random_bitstring(config.n, rng)
    x0 = random_bitstring(config.n, rng)
    if engine == "python":
        trace = _run_python(config, rng, target, x0)
    elif engine == "compiled":
        from dynlo import kernels

        trace = kernels.run_dynamic_loop(
            rng,
            x0,
            target,
            config.k,
            config.tau,
            config.gamma,
            config.p,
            config.budget,
            kernels.MODES[config.algorithm],
            config.s,
            config.smooth_t_mode == "global",
        )
    else:
        raise ValueError(f"unknown engine: {engine!r}")

    n_periods = config.budget // config.tau
    ends = [m * config.tau - 1 for m in range(1, n_periods + 1)]
    return RunTrace(
        best_fitness_per_eval=trace,
        period_end_best=trace[ends].astype(np.int32),
        n_perturbations=(config.budget - 1) // config.tau,
        initial_target=bit_text(target),
    )
