"""Command-line interface: run experiments, expand sweeps, emit result files.

Every experiment writes four files into the output directory, keyed by a
stable 12-hex-digit hash of the resolved configuration:

  curve_<id>.csv       eval_index, mean_best, std_best
  periods_<id>.csv     run, period, best_fitness
  cumulative_<id>.csv  fitness, fraction (of period values at least that fit)
  meta_<id>.json       resolved config, seeds, generator identity, version

Exit codes: 0 success, 1 configuration error, 2 I/O error, 3 oracle failure.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import sys
import time
from dataclasses import dataclass, fields

import yaml

import dynlo
from dynlo.config import (
    ALGORITHMS,
    ConfigError,
    DEFAULT_MASTER_SEED,
    DEFAULT_SMOOTHNESS,
    ExperimentConfig,
    T_MODES,
    config_from_dict,
    config_id,
)
from dynlo.core import GENERATOR_ID, derive_seed
from dynlo.experiment import aggregate, run_all
from dynlo.oracles import run_oracles

SEED_ENV_VAR = "DYNLO_SEED"
DEFAULT_OUT_DIR = "dynlo-results"

_CONFIG_KEYS = tuple(f.name for f in fields(ExperimentConfig))
_FILE_KEYS = _CONFIG_KEYS + ("out",)


@dataclass(frozen=True)
class SweepSpec:
    """Fully resolved set of experiment configurations plus output directory."""

    configs: tuple[ExperimentConfig, ...]
    out_dir: str


def _load_yaml(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        data = yaml.safe_load(fh)
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigError(f"config file {path} must hold a mapping at top level")
    unknown = set(data) - set(_FILE_KEYS)
    if unknown:
        raise ConfigError(f"unknown config key(s): {', '.join(sorted(unknown))}")
    return data


def _canonical(cfg: ExperimentConfig) -> ExperimentConfig:
    """Pin fields the algorithm ignores to their defaults, for stable ids."""
    data = cfg.to_dict()
    if cfg.algorithm != "smooth_rea":
        data["s"] = DEFAULT_SMOOTHNESS
        data["smooth_t_mode"] = "since_change"
    if cfg.algorithm == "ea":
        data["gamma"] = cfg.k
    return ExperimentConfig(**data)


def _resolve_seed(file_data: dict, flag_seed: int | None) -> int:
    if flag_seed is not None:
        return flag_seed
    if "master_seed" in file_data:
        return file_data["master_seed"]
    env = os.environ.get(SEED_ENV_VAR)
    if env is not None:
        try:
            return int(env, 0)
        except ValueError as exc:
            raise ConfigError(f"{SEED_ENV_VAR} is not an integer: {env!r}") from exc
    return DEFAULT_MASTER_SEED


def parse_config(args: argparse.Namespace, sweep: bool = False) -> SweepSpec:
    """Build the resolved SweepSpec from an optional file plus flags.

    Flags override file values.  In sweep mode every config key may hold a
    list (cartesian product semantics); in run mode values must be scalar.
    """
    file_data = _load_yaml(args.config) if args.config else {}
    out_dir = args.out or file_data.get("out") or DEFAULT_OUT_DIR

    merged: dict[str, object] = {
        k: v for k, v in file_data.items() if k in _CONFIG_KEYS
    }
    for key in _CONFIG_KEYS:
        flag = getattr(args, key, None)
        if flag is not None:
            merged[key] = flag
    merged["master_seed"] = _resolve_seed(file_data, getattr(args, "master_seed", None))

    if not sweep:
        for key, value in merged.items():
            if isinstance(value, (list, tuple)):
                raise ConfigError(
                    f"key {key}: expected a single value, got a list "
                    "(use `dynlo sweep` for grids)"
                )
        configs = [_canonical(config_from_dict(merged))]
        return SweepSpec(configs=tuple(configs), out_dir=out_dir)

    axes = {
        k: list(v) if isinstance(v, (list, tuple)) else [v]
        for k, v in merged.items()
    }
    names = list(axes)
    seen: set[str] = set()
    configs = []
    for combo in itertools.product(*(axes[name] for name in names)):
        cfg = _canonical(config_from_dict(dict(zip(names, combo))))
        cid = config_id(cfg)
        if cid not in seen:  # ignored-field normalization can create dupes
            seen.add(cid)
            configs.append(cfg)
    return SweepSpec(configs=tuple(configs), out_dir=out_dir)


def _fmt(value: float) -> str:
    return f"{value:.6g}"


def write_outputs(
    config: ExperimentConfig,
    out_dir: str,
    workers: int = 1,
    decimate: int = 1,
    engine: str = "compiled",
) -> dict[str, str]:
    """Run one experiment and write its four result files atomically.

    Returns the mapping {kind: path}.  CSV bodies are byte-stable across
    re-runs of the same configuration.
    """
    cid = config_id(config)
    started = time.perf_counter()
    traces = run_all(config, workers=workers, engine=engine)
    agg = aggregate(traces, max_fitness=config.n)
    wall = time.perf_counter() - started

    os.makedirs(out_dir, exist_ok=True)
    paths = {
        kind: os.path.join(out_dir, f"{kind}_{cid}.{ext}")
        for kind, ext in (
            ("curve", "csv"),
            ("periods", "csv"),
            ("cumulative", "csv"),
            ("meta", "json"),
        )
    }
    tmp_paths = []
    try:
        budget = config.budget
        rows = list(range(0, budget, max(1, decimate)))
        if rows[-1] != budget - 1:
            rows.append(budget - 1)
        lines = ["eval_index,mean_best,std_best"]
        lines += [
            f"{i + 1},{_fmt(agg.mean_curve[i])},{_fmt(agg.std_curve[i])}"
            for i in rows
        ]
        _write_text(paths["curve"], lines, tmp_paths)

        lines = ["run,period,best_fitness"]
        for run_index, trace in enumerate(traces):
            lines += [
                f"{run_index},{period},{int(value)}"
                for period, value in enumerate(trace.period_end_best)
            ]
        _write_text(paths["periods"], lines, tmp_paths)

        lines = ["fitness,fraction"]
        lines += [f"{v},{_fmt(frac)}" for v, frac in agg.cumulative]
        _write_text(paths["cumulative"], lines, tmp_paths)

        meta = {
            "config": config.to_dict(),
            "config_id": cid,
            "master_seed": config.master_seed,
            "run_seeds": [t.seed for t in traces],
            "generator": GENERATOR_ID,
            "seed_derivation": "splitmix64(master_seed + run_index * golden64)",
            "tool_version": dynlo.__version__,
            "engine": engine,
            "wall_time_s": round(wall, 3),
        }
        _write_text(
            paths["meta"],
            [json.dumps(meta, indent=2, sort_keys=True)],
            tmp_paths,
        )
    except OSError:
        for tmp in tmp_paths:
            if os.path.exists(tmp):
                os.unlink(tmp)
        raise
    return paths


def _write_text(path: str, lines: list[str], tmp_registry: list[str]) -> None:
    tmp = path + ".tmp"
    tmp_registry.append(tmp)
    with open(tmp, "w", encoding="ascii", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    os.replace(tmp, path)


def run_command(spec: SweepSpec, workers: int, decimate: int, engine: str) -> int:
    for i, config in enumerate(spec.configs):
        paths = write_outputs(config, spec.out_dir, workers, decimate, engine)
        print(
            f"[{i + 1}/{len(spec.configs)}] {config.algorithm} n={config.n} "
            f"k={config.k} tau={config.tau} -> {paths['meta']}"
        )
    return 0


def oracle_command(names: list[str]) -> int:
    results = run_oracles(names or None)
    failed = 0
    for name, ok, detail in results:
        print(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
        failed += 0 if ok else 1
    return 3 if failed else 0


def _seed_type(text: str) -> int:
    return int(text, 0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dynlo",
        description="Benchmark harness for LeadingOnes with a moving target.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--out", help=f"output directory (default {DEFAULT_OUT_DIR})")
        p.add_argument("--workers", type=int, default=1, help="parallel runs")
        p.add_argument(
            "--decimate",
            type=int,
            default=1,
            help="stride for curve CSV rows (statistics are unaffected)",
        )
        p.add_argument(
            "--engine",
            choices=("compiled", "python"),
            default="compiled",
            help="run loop implementation; both are bit-identical",
        )
        p.add_argument(
            "--seed",
            dest="master_seed",
            type=_seed_type,
            help=f"master seed (fallback: ${SEED_ENV_VAR}, then {DEFAULT_MASTER_SEED})",
        )

    run_p = sub.add_parser("run", help="run a single experiment configuration")
    run_p.add_argument("--config", help="YAML config file (flags override it)")
    run_p.add_argument("--algorithm", choices=ALGORITHMS)
    run_p.add_argument("--n", type=int)
    run_p.add_argument("--k", type=int)
    run_p.add_argument("--tau", type=int)
    run_p.add_argument("--gamma", type=int)
    run_p.add_argument("--s", type=float)
    run_p.add_argument("--p", type=float)
    run_p.add_argument("--budget", type=int)
    run_p.add_argument("--runs", type=int)
    run_p.add_argument(
        "--smooth-t", dest="smooth_t_mode", choices=T_MODES, default=None
    )
    add_common(run_p)

    sweep_p = sub.add_parser(
        "sweep", help="run the cartesian product of a config file's value lists"
    )
    sweep_p.add_argument("--config", required=True, help="YAML sweep file")
    sweep_p.add_argument(
        "--dry-run", action="store_true", help="list the expanded configs and exit"
    )
    add_common(sweep_p)

    oracle_p = sub.add_parser("oracle", help="run the built-in distribution oracles")
    oracle_p.add_argument(
        "checks", nargs="*", help="subset of checks to run (default: all)"
    )
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "oracle":
            return oracle_command(args.checks)
        spec = parse_config(args, sweep=args.command == "sweep")
        if args.command == "sweep" and args.dry_run:
            for config in spec.configs:
                print(f"{config_id(config)}  {config}")
            print(f"{len(spec.configs)} configs")
            return 0
        return run_command(spec, args.workers, args.decimate, args.engine)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
