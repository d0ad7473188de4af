"""Bit-string primitives and the deterministic randomness contract.

Bit strings are immutable numpy uint8 arrays with values in {0, 1}.
Positions are 1-based in every public signature, matching the usual
[1..n] convention of the literature; the array layout is an internal
detail.

All randomness flows through numpy's PCG64 generator.  Per-run streams
are derived from a 64-bit master seed with the splitmix64 mixer, so
results are reproducible independently of execution order.
"""

from __future__ import annotations

from typing import Iterable

import numpy as np

RandomStream = np.random.Generator

#: Identity of the pseudorandom generator, recorded in experiment metadata.
GENERATOR_ID = "numpy-pcg64"

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def splitmix64(value: int) -> int:
    """One application of the splitmix64 finalizer (Steele et al.)."""
    z = (value + _GOLDEN) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def derive_seed(master_seed: int, run_index: int) -> int:
    """Seed for run `run_index`, derived from the experiment's master seed."""
    if run_index < 0:
        raise ValueError("run_index must be non-negative")
    return splitmix64((master_seed + run_index * _GOLDEN) & _MASK64)


def make_stream(seed: int) -> RandomStream:
    """Fresh deterministic stream; identical seeds yield identical draws."""
    return np.random.Generator(np.random.PCG64(seed))


def bits(text: str) -> np.ndarray:
    """Bit string from literal text, e.g. bits("11010"); position 1 is the
    leftmost character."""
    if not text or any(c not in "01" for c in text):
        raise ValueError(f"not a bit-string literal: {text!r}")
    out = np.frombuffer(text.encode("ascii"), dtype=np.uint8) - ord("0")
    out.setflags(write=False)
    return out


def bit_text(x: np.ndarray) -> str:
    """Inverse of bits(): render a bit string as 0/1 text."""
    return "".join("1" if b else "0" for b in x)


def random_bitstring(n: int, rng: RandomStream) -> np.ndarray:
    """Uniform bit string of length n; each bit is 1 with probability 1/2."""
    if n < 1:
        raise ValueError("n must be at least 1")
    out = rng.integers(0, 2, size=n, dtype=np.uint8)
    out.setflags(write=False)
    return out


def hamming(x: np.ndarray, y: np.ndarray) -> int:
    """Number of positions where x and y differ."""
    if x.shape != y.shape:
        raise ValueError(f"length mismatch: {x.size} vs {y.size}")
    return int(np.count_nonzero(x != y))


def flip_bits(x: np.ndarray, positions: Iterable[int]) -> np.ndarray:
    """Copy of x with exactly the given 1-based positions inverted."""
    pos = tuple(positions)
    if len(pos) != len(set(pos)):
        raise ValueError("positions must be pairwise distinct")
    for i in pos:
        if not 1 <= i <= x.size:
            raise ValueError(f"position {i} outside [1..{x.size}]")
    out = x.copy()
    if pos:
        out[np.asarray(pos, dtype=np.int64) - 1] ^= 1
    out.setflags(write=False)
    return out


def random_k_subset(n: int, k: int, rng: RandomStream) -> set[int]:
    """k distinct positions from [1..n], all C(n,k) subsets equally likely.

    Uses Floyd's sampling algorithm: exactly k draws regardless of n.
    """
    if not 0 <= k <= n:
        raise ValueError(f"k={k} outside [0..{n}]")
    chosen: set[int] = set()
    for j in range(n - k, n):
        v = int(rng.integers(0, j + 1))
        if v in chosen:
            chosen.add(j)
        else:
            chosen.add(v)
    return {v + 1 for v in chosen}
