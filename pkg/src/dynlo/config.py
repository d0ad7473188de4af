"""Experiment configuration: one dataclass, validated at construction.

Defaults follow the reference experimental setup: mutation rate 1/n, slot
radius gamma = k, budget 50 000 evaluations, 100 runs.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, fields

ALGORITHMS = ("ea", "rea", "smooth_rea")
T_MODES = ("since_change", "global")

DEFAULT_BUDGET = 50_000
DEFAULT_RUNS = 100
DEFAULT_SMOOTHNESS = 0.8
DEFAULT_MASTER_SEED = 42


class ConfigError(ValueError):
    """Invalid experiment configuration; message names the offending key."""


@dataclass(frozen=True)
class ExperimentConfig:
    algorithm: str
    n: int
    k: int
    tau: int
    gamma: int | None = None  # resolved to k
    s: float = DEFAULT_SMOOTHNESS  # used by smooth_rea only
    p: float | None = None  # resolved to 1/n
    budget: int = DEFAULT_BUDGET
    runs: int = DEFAULT_RUNS
    master_seed: int = DEFAULT_MASTER_SEED
    smooth_t_mode: str = "since_change"

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ConfigError(
                f"algorithm must be one of {'|'.join(ALGORITHMS)}, "
                f"got {self.algorithm!r}"
            )
        if self.n < 1:
            raise ConfigError(f"n must be positive, got {self.n}")
        if self.k < 1:
            raise ConfigError(f"k must be positive, got {self.k}")
        if self.k > self.n:
            raise ConfigError(f"k must be <= n, got k={self.k} with n={self.n}")
        if self.tau < 1:
            raise ConfigError(f"tau must be positive, got {self.tau}")
        if self.gamma is None:
            object.__setattr__(self, "gamma", self.k)
        elif self.gamma < 0:
            raise ConfigError(f"gamma must be non-negative, got {self.gamma}")
        if self.s <= 0:
            raise ConfigError(f"s must be positive, got {self.s}")
        if self.p is None:
            object.__setattr__(self, "p", 1.0 / self.n)
        elif not 0.0 < self.p < 1.0:
            raise ConfigError(f"p must lie in (0, 1), got {self.p}")
        if self.budget < 1:
            raise ConfigError(f"budget must be positive, got {self.budget}")
        if self.runs < 1:
            raise ConfigError(f"runs must be positive, got {self.runs}")
        if not 0 <= self.master_seed < 2**64:
            raise ConfigError("master_seed must be a 64-bit unsigned integer")
        if self.smooth_t_mode not in T_MODES:
            raise ConfigError(
                f"smooth_t_mode must be one of {'|'.join(T_MODES)}, "
                f"got {self.smooth_t_mode!r}"
            )

    def to_dict(self) -> dict:
        return asdict(self)


def config_from_dict(data: dict) -> ExperimentConfig:
    known = {f.name for f in fields(ExperimentConfig)}
    unknown = set(data) - known
    if unknown:
        raise ConfigError(f"unknown config key(s): {', '.join(sorted(unknown))}")
    if "algorithm" not in data:
        raise ConfigError("missing required key: algorithm")
    for key in ("n", "k", "tau"):
        if key not in data:
            raise ConfigError(f"missing required key: {key}")
    return ExperimentConfig(**data)


def config_id(config: ExperimentConfig) -> str:
    """Stable 12-hex-digit identifier of a fully resolved configuration."""
    canonical = json.dumps(config.to_dict(), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("ascii")).hexdigest()[:12]
