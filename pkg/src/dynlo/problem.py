"""The dynamic LeadingOnes landscape.

A problem instance holds the current target string.  Fitness of x is the
length of the longest prefix on which x agrees with the target; the unique
optimum is the target itself.  Every `tau` iterations the driving loop
inverts k uniformly chosen target bits, which moves the optimum without
telling the algorithm.
"""

from __future__ import annotations

import numpy as np

from dynlo.core import RandomStream, flip_bits, hamming, random_k_subset


def leading_ones(x: np.ndarray, target: np.ndarray) -> int:
    """Length of the longest common prefix of x and target, in [0..n]."""
    if x.shape != target.shape:
        raise ValueError(f"length mismatch: {x.size} vs {target.size}")
    differs = x != target
    first = int(np.argmax(differs))
    return first if differs[first] else x.size


class DynamicLeadingOnes:
    """Moving-target LeadingOnes instance with evaluation accounting.

    `evaluations` counts only budget-relevant fitness calls (`evaluate`);
    refreshing a stored individual after a target change goes through
    `reevaluate` and is free.
    """

    def __init__(self, n: int, k: int, tau: int, target: np.ndarray):
        if n < 1:
            raise ValueError("n must be at least 1")
        if not 1 <= k <= n:
            raise ValueError(f"k={k} outside [1..{n}]")
        if tau < 1:
            raise ValueError("tau must be at least 1")
        if target.size != n:
            raise ValueError(f"target has length {target.size}, expected {n}")
        self.n = n
        self.k = k
        self.tau = tau
        self.target = target
        self.evaluations = 0
        self.perturbations = 0

    @classmethod
    def with_random_target(
        cls, n: int, k: int, tau: int, rng: RandomStream
    ) -> "DynamicLeadingOnes":
        from dynlo.core import random_bitstring

        return cls(n, k, tau, random_bitstring(n, rng))

    def evaluate(self, x: np.ndarray) -> int:
        """Fitness of x under the current target; counts against the budget."""
        self.evaluations += 1
        return leading_ones(x, self.target)

    def reevaluate(self, x: np.ndarray) -> int:
        """Fitness of x under the current target, without budget accounting."""
        return leading_ones(x, self.target)

    def perturb(self, rng: RandomStream) -> tuple[np.ndarray, np.ndarray]:
        """Invert k uniformly chosen target bits; returns (old, new) targets.

        The new target is always at Hamming distance exactly k from the old.
        """
        old = self.target
        positions = random_k_subset(self.n, self.k, rng)
        new = flip_bits(old, positions)
        assert hamming(old, new) == self.k
        self.target = new
        self.perturbations += 1
        return old, new
