"""Self-contained distribution and correctness oracles.

Each check recomputes its expectation from first principles (explicit loop,
closed-form pmf, exhaustive enumeration) instead of reusing the code path
it validates, runs with a fixed seed, and reports pass/fail.  The CLI
exposes them as `dynlo oracle`; the test suite calls them directly.
"""

from __future__ import annotations

import itertools
import math
from typing import Callable, Iterable

import numpy as np
from scipy import stats

from dynlo.core import bit_text, hamming, make_stream, random_k_subset
from dynlo.mutation import MutationParams, sample_strength, strength_pmf
from dynlo.problem import DynamicLeadingOnes, leading_ones

CHI2_SIGNIFICANCE = 0.01


def _prefix_length_by_loop(x: np.ndarray, z: np.ndarray) -> int:
    # deliberately naive reference implementation
    count = 0
    for a, b in zip(x, z):
        if a != b:
            break
        count += 1
    return count


def check_lo_exhaustive() -> tuple[bool, str]:
    """leading_ones against a position-by-position loop, all x for n <= 8."""
    rng = make_stream(101)
    checked = 0
    for n in range(1, 9):
        targets = [rng.integers(0, 2, size=n, dtype=np.uint8) for _ in range(10)]
        for bits_tuple in itertools.product((0, 1), repeat=n):
            x = np.array(bits_tuple, dtype=np.uint8)
            for z in targets:
                if leading_ones(x, z) != _prefix_length_by_loop(x, z):
                    return False, (
                        f"mismatch at n={n}, x={bit_text(x)}, z={bit_text(z)}"
                    )
                checked += 1
    return True, f"{checked} (x, z) pairs match the loop reference"


def check_perturbation_hamming() -> tuple[bool, str]:
    """Every target change moves the target by exactly k bits."""
    rng = make_stream(202)
    trials = 10_000
    for n, k in [(100, 3), (100, 5), (100, 10), (200, 10)]:
        problem = DynamicLeadingOnes.with_random_target(n, k, tau=1000, rng=rng)
        for _ in range(trials):
            old, new = problem.perturb(rng)
            if hamming(old, new) != k:
                return False, f"distance != {k} for n={n}"
    return True, f"distance == k in {trials} trials for each (n, k) setting"


def check_strength_pmf() -> tuple[bool, str]:
    """Sampled mutation strengths match the closed-form shifted-binomial pmf.

    Chi-squared goodness of fit on bins {1, 2, 3, >=4} at significance 0.01,
    a million samples per parameterization.
    """
    rng = make_stream(303)
    samples = 1_000_000
    details = []
    for n, p in [(100, 0.01), (200, 0.005)]:
        params = MutationParams(n, p)
        pmf = strength_pmf(params)
        draws = np.array([sample_strength(params, rng) for _ in range(samples)])
        if (draws < 1).any():
            return False, f"sampled strength below 1 for n={n}"
        observed = np.array(
            [
                np.count_nonzero(draws == 1),
                np.count_nonzero(draws == 2),
                np.count_nonzero(draws == 3),
                np.count_nonzero(draws >= 4),
            ],
            dtype=np.float64,
        )
        expected = samples * np.array(
            [pmf[1], pmf[2], pmf[3], pmf[4:].sum()]
        )
        chi2 = float(((observed - expected) ** 2 / expected).sum())
        critical = float(stats.chi2.ppf(1.0 - CHI2_SIGNIFICANCE, df=3))
        if chi2 >= critical:
            return False, (
                f"chi2={chi2:.2f} >= {critical:.2f} for (n={n}, p={p})"
            )
        shown = ", ".join(
            f"P({m})={observed[m - 1] / samples:.4f}~{pmf[m]:.4f}"
            for m in (1, 2, 3)
        )
        details.append(f"(n={n}, p={p}): chi2={chi2:.2f}<{critical:.2f}; {shown}")
    return True, "; ".join(details)


def check_subset_uniformity() -> tuple[bool, str]:
    """All k-subsets of [1..n] equally likely, for every 1 <= k < n <= 6."""
    rng = make_stream(404)
    samples = 100_000
    worst = 0.0
    for n in range(2, 7):
        for k in range(1, n):
            counts: dict[frozenset[int], int] = {}
            for _ in range(samples):
                key = frozenset(random_k_subset(n, k, rng))
                counts[key] = counts.get(key, 0) + 1
            n_cats = math.comb(n, k)
            if len(counts) != n_cats:
                return False, f"missing subsets for (n={n}, k={k})"
            expected = samples / n_cats
            chi2 = sum((c - expected) ** 2 / expected for c in counts.values())
            critical = float(
                stats.chi2.ppf(1.0 - CHI2_SIGNIFICANCE, df=n_cats - 1)
            )
            if chi2 >= critical:
                return False, (
                    f"chi2={chi2:.2f} >= {critical:.2f} for (n={n}, k={k})"
                )
            worst = max(worst, chi2 / critical)
    return True, f"uniform for all (n, k), n <= 6; worst chi2 ratio {worst:.2f}"


ORACLES: dict[str, Callable[[], tuple[bool, str]]] = {
    "lo-exhaustive": check_lo_exhaustive,
    "perturbation-hamming": check_perturbation_hamming,
    "strength-pmf": check_strength_pmf,
    "subset-uniformity": check_subset_uniformity,
}


def run_oracles(names: Iterable[str] | None = None) -> list[tuple[str, bool, str]]:
    """Run the selected (default: all) oracle checks in registry order."""
    selected = list(names) if names else list(ORACLES)
    unknown = [name for name in selected if name not in ORACLES]
    if unknown:
        raise ValueError(f"unknown oracle check(s): {', '.join(unknown)}")
    results = []
    for name in selected:
        ok, detail = ORACLES[name]()
        results.append((name, ok, detail))
    return results
