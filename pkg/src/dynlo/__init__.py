"""dynlo: LeadingOnes with a periodically moving target.

Library and CLI for benchmarking three elitist optimizers under periodic
k-bit target inversions: the (1+1) EA with shift mutation, a re-optimization
EA with Hamming-slot memory, and its smoothed variant whose greediness ramps
up after each change.
"""

__version__ = "0.1.0"

from dynlo.algorithms import (
    EaState,
    ReaState,
    RunTrace,
    SmoothParams,
    ea_step,
    on_perturbation,
    rea_step,
    run_algorithm,
    select_parent,
    smooth_p_best,
    smooth_rea_step,
)
from dynlo.config import ExperimentConfig, config_id
from dynlo.core import (
    bit_text,
    bits,
    derive_seed,
    flip_bits,
    hamming,
    make_stream,
    random_bitstring,
    random_k_subset,
)
from dynlo.experiment import (
    AggregateResult,
    aggregate,
    bootstrap_mean_diff_ci,
    cumulative_fraction,
    histogram,
    mean_curve,
    period_values,
    run_all,
    run_one,
    std_curve,
)
from dynlo.mutation import (
    MutationParams,
    expected_strength,
    mutate,
    sample_strength,
    shift_mutation,
    strength_pmf,
)
from dynlo.problem import DynamicLeadingOnes, leading_ones

__all__ = [
    "AggregateResult",
    "DynamicLeadingOnes",
    "EaState",
    "ExperimentConfig",
    "MutationParams",
    "ReaState",
    "RunTrace",
    "SmoothParams",
    "aggregate",
    "bit_text",
    "bits",
    "bootstrap_mean_diff_ci",
    "config_id",
    "cumulative_fraction",
    "derive_seed",
    "ea_step",
    "expected_strength",
    "flip_bits",
    "hamming",
    "histogram",
    "leading_ones",
    "make_stream",
    "mean_curve",
    "mutate",
    "on_perturbation",
    "period_values",
    "random_bitstring",
    "random_k_subset",
    "rea_step",
    "run_algorithm",
    "run_all",
    "run_one",
    "sample_strength",
    "select_parent",
    "shift_mutation",
    "smooth_p_best",
    "smooth_rea_step",
    "std_curve",
    "strength_pmf",
]
