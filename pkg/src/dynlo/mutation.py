"""Shift mutation: binomial strength with the zero outcome moved to one.

Sampling the strength L from Bin(n, p) and remapping L=0 to L=1 gives the
shifted distribution: P(L=1) = (1-p)^n + np(1-p)^(n-1), P(L=m) = Bin(n,p)(m)
for m >= 2, and P(L=0) = 0.  The offspring therefore always differs from its
parent, in exactly L uniformly chosen positions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from dynlo.core import RandomStream, flip_bits, random_k_subset


@dataclass(frozen=True)
class MutationParams:
    n: int
    p: float

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if not 0.0 < self.p < 1.0:
            raise ValueError(f"mutation rate p={self.p} outside (0, 1)")

    @classmethod
    def standard(cls, n: int) -> "MutationParams":
        """The usual rate p = 1/n."""
        return cls(n, 1.0 / n)


def sample_strength(params: MutationParams, rng: RandomStream) -> int:
    """Number of bits the next mutation will flip, in [1..n]."""
    ell = int(rng.binomial(params.n, params.p))
    return ell if ell >= 1 else 1


def mutate(x: np.ndarray, strength: int, rng: RandomStream) -> np.ndarray:
    """Flip exactly `strength` uniformly chosen distinct positions of x."""
    if not 1 <= strength <= x.size:
        raise ValueError(f"strength {strength} outside [1..{x.size}]")
    return flip_bits(x, random_k_subset(x.size, strength, rng))


def shift_mutation(
    x: np.ndarray, params: MutationParams, rng: RandomStream
) -> np.ndarray:
    """One offspring of x; guaranteed to differ from x in at least one bit."""
    return mutate(x, sample_strength(params, rng), rng)


def strength_pmf(params: MutationParams) -> np.ndarray:
    """Closed-form pmf of the shifted strength distribution, indexed 0..n.

    Independent of the sampling path; used as the oracle in distribution
    checks.  Entry 0 is always zero.
    """
    n, p = params.n, params.p
    pmf = np.zeros(n + 1)
    for m in range(1, n + 1):
        pmf[m] = math.comb(n, m) * p**m * (1.0 - p) ** (n - m)
    pmf[1] += (1.0 - p) ** n
    return pmf


def expected_strength(params: MutationParams) -> float:
    """Mean of the shifted strength distribution, from the closed-form pmf."""
    pmf = strength_pmf(params)
    return float(np.dot(np.arange(pmf.size), pmf))
