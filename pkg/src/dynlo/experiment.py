"""Seeded multi-run execution and the statistics behind the analyses.

Each run draws its own stream from (master_seed, run_index), so a batch of
runs gives the same traces whether executed sequentially or across worker
processes.  Aggregation works on completed traces: mean/std curves over
runs, the multiset of period-end best values, and its upper cumulative
distribution.
"""

from __future__ import annotations

import concurrent.futures
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from dynlo.algorithms import RunTrace, run_algorithm
from dynlo.config import ExperimentConfig, config_id
from dynlo.core import derive_seed, make_stream


def run_one(
    config: ExperimentConfig, run_index: int, engine: str = "compiled"
) -> RunTrace:
    """Run `run_index` of the experiment; deterministic per (config, index)."""
    seed = derive_seed(config.master_seed, run_index)
    rng = make_stream(seed)
    trace = run_algorithm(config.algorithm, config, rng, engine=engine)
    return replace(trace, seed=seed, config_id=config_id(config))


def run_all(
    config: ExperimentConfig, workers: int = 1, engine: str = "compiled"
) -> list[RunTrace]:
    """All runs of the experiment, optionally across worker processes.

    The result is identical for any worker count; runs are independent and
    individually seeded.
    """
    if workers <= 1:
        return [run_one(config, i, engine) for i in range(config.runs)]
    if engine == "compiled":
        # compile (or load the cached kernel) once before forking
        warm = ExperimentConfig(
            algorithm=config.algorithm, n=8, k=1, tau=4, budget=8, runs=1
        )
        run_one(warm, 0, engine="compiled")
    with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [
            pool.submit(run_one, config, i, engine) for i in range(config.runs)
        ]
        return [f.result() for f in futures]


def mean_curve(traces: Sequence[RunTrace]) -> np.ndarray:
    """Pointwise mean over runs of the best-fitness-per-evaluation series."""
    return _stack(traces).mean(axis=0)


def std_curve(traces: Sequence[RunTrace]) -> np.ndarray:
    """Pointwise population standard deviation of the per-evaluation series."""
    return _stack(traces).std(axis=0)


def _stack(traces: Sequence[RunTrace]) -> np.ndarray:
    if not traces:
        raise ValueError("no traces to aggregate")
    length = traces[0].best_fitness_per_eval.size
    for t in traces:
        if t.best_fitness_per_eval.size != length:
            raise ValueError("traces have mismatching lengths")
    return np.stack([t.best_fitness_per_eval for t in traces])


def period_values(traces: Sequence[RunTrace]) -> np.ndarray:
    """All period-end best values across runs, flattened run-major."""
    if not traces:
        raise ValueError("no traces to aggregate")
    return np.concatenate([t.period_end_best for t in traces])


def cumulative_fraction(
    values: Sequence[int] | np.ndarray, max_fitness: int | None = None
) -> list[tuple[int, float]]:
    """Upper cumulative distribution: (v, fraction of values >= v).

    Covers every integer fitness from 0 to `max_fitness` (defaults to the
    largest observed value).  The fraction is 1.0 at 0 and non-increasing.
    """
    arr = np.sort(np.asarray(values))
    if arr.size == 0:
        raise ValueError("no values")
    top = int(arr[-1]) if max_fitness is None else max_fitness
    total = arr.size
    return [
        (v, float(total - np.searchsorted(arr, v, side="left")) / total)
        for v in range(top + 1)
    ]


def histogram(
    values: Sequence[int] | np.ndarray, bin_width: int = 1
) -> list[tuple[int, int]]:
    """Counts per half-open bin [lower, lower + bin_width), contiguous from
    the smallest to the largest observed value; empty input gives []."""
    if bin_width < 1:
        raise ValueError("bin_width must be at least 1")
    arr = np.asarray(values)
    if arr.size == 0:
        return []
    lo = int(arr.min()) // bin_width
    hi = int(arr.max()) // bin_width
    counts = np.bincount(arr // bin_width - lo, minlength=hi - lo + 1)
    return [((lo + i) * bin_width, int(c)) for i, c in enumerate(counts)]


@dataclass(frozen=True)
class AggregateResult:
    """Everything the result files need, computed from one batch of traces."""

    mean_curve: np.ndarray
    std_curve: np.ndarray
    period_values: np.ndarray
    cumulative: list[tuple[int, float]]


def aggregate(traces: Sequence[RunTrace], max_fitness: int) -> AggregateResult:
    stacked = _stack(traces)
    values = period_values(traces)
    # a run shorter than one period contributes no period values
    cumulative = cumulative_fraction(values, max_fitness) if values.size else []
    return AggregateResult(
        mean_curve=stacked.mean(axis=0),
        std_curve=stacked.std(axis=0),
        period_values=values,
        cumulative=cumulative,
    )


def bootstrap_mean_diff_ci(
    a: np.ndarray,
    b: np.ndarray,
    n_boot: int = 10_000,
    confidence: float = 0.95,
    seed: int = 0x9D1FF,
) -> tuple[float, float]:
    """Two-sided percentile bootstrap CI for mean(a) - mean(b) (unpaired)."""
    rng = make_stream(seed)
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    ia = rng.integers(0, a.size, size=(n_boot, a.size))
    ib = rng.integers(0, b.size, size=(n_boot, b.size))
    diffs = a[ia].mean(axis=1) - b[ib].mean(axis=1)
    tail = 100.0 * (1.0 - confidence) / 2.0
    return (
        float(np.percentile(diffs, tail)),
        float(np.percentile(diffs, 100.0 - tail)),
    )
