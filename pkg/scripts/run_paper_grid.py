#!/usr/bin/env python3
"""Reproduce the full experimental grid and emit plot-ready CSV data.

Sections:
  curves-n100   average best-so-far curves, n=100, k in {3,5,10},
                tau in {1000,3000,6000}; smoothness 0.8 (0.05 for k=10)
  curves-n200   same grid at n=200, smoothness 0.8 everywhere
  histograms    period-end values for k=5, tau in {1000,2000}, with the
                smoothness family {0.4, 0.8, 1.2, 1.6, 2.0}
  cumulative    upper cumulative curves for k=5, tau in {1000..6000},
                1000 runs for smoother fractions

Examples:
  python scripts/run_paper_grid.py --section curves-n100 --out results
  python scripts/run_paper_grid.py --section all --workers 2
"""

from __future__ import annotations

import argparse
import sys
import time

from dynlo.cli import write_outputs
from dynlo.config import ExperimentConfig

SMOOTH_FAMILY = (0.4, 0.8, 1.2, 1.6, 2.0)


def curve_grid(n: int, runs: int, seed: int) -> list[ExperimentConfig]:
    configs = []
    for k in (3, 5, 10):
        s = 0.05 if (k == 10 and n == 100) else 0.8
        for tau in (1000, 3000, 6000):
            for algorithm in ("ea", "rea", "smooth_rea"):
                configs.append(
                    ExperimentConfig(
                        algorithm=algorithm,
                        n=n,
                        k=k,
                        tau=tau,
                        s=s,
                        runs=runs,
                        master_seed=seed,
                    )
                )
    return configs


def histogram_grid(runs: int, seed: int, taus=(1000, 2000)) -> list[ExperimentConfig]:
    configs = []
    for tau in taus:
        for algorithm in ("ea", "rea"):
            configs.append(
                ExperimentConfig(
                    algorithm=algorithm,
                    n=100,
                    k=5,
                    tau=tau,
                    runs=runs,
                    master_seed=seed,
                )
            )
        for s in SMOOTH_FAMILY:
            configs.append(
                ExperimentConfig(
                    algorithm="smooth_rea",
                    n=100,
                    k=5,
                    tau=tau,
                    s=s,
                    runs=runs,
                    master_seed=seed,
                )
            )
    return configs


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--section",
        choices=("curves-n100", "curves-n200", "histograms", "cumulative", "all"),
        default="all",
    )
    parser.add_argument("--out", default="paper-grid-results")
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--runs", type=int, default=100)
    parser.add_argument("--cumulative-runs", type=int, default=1000)
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--decimate", type=int, default=50)
    args = parser.parse_args()

    configs: list[ExperimentConfig] = []
    if args.section in ("curves-n100", "all"):
        configs += curve_grid(100, args.runs, args.seed)
    if args.section in ("curves-n200", "all"):
        configs += curve_grid(200, args.runs, args.seed)
    if args.section in ("histograms", "all"):
        configs += histogram_grid(args.runs, args.seed)
    if args.section in ("cumulative", "all"):
        configs += histogram_grid(
            args.cumulative_runs, args.seed, taus=(1000, 2000, 3000, 4000, 5000, 6000)
        )

    started = time.perf_counter()
    for i, config in enumerate(configs):
        paths = write_outputs(
            config, args.out, workers=args.workers, decimate=args.decimate
        )
        print(
            f"[{i + 1}/{len(configs)}] {config.algorithm} n={config.n} "
            f"k={config.k} tau={config.tau} s={config.s} -> {paths['meta']}"
        )
    print(f"done in {time.perf_counter() - started:.1f}s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
