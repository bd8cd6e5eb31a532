"""Command-line runner: ``octolattice run --experiment NAME ...`` and ``octolattice cache list|clear|path``.

Exit codes: 0 all checks passed, 1 a check failed, 2 bad configuration,
3 I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import logging
import os
import sys
from pathlib import Path

from . import fundsol
from .algebra import DomainError
from .experiments import EXPERIMENTS, ExperimentConfig, ExperimentResult, run_experiment

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_IO = 0, 1, 2, 3

log = logging.getLogger("octolattice")

_CONFIG_KEYS = {f.name for f in dataclasses.fields(ExperimentConfig)}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="octolattice", description="Discrete octonionic analysis experiments.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run one experiment and write JSON and CSV reports",
                         argument_default=argparse.SUPPRESS)
    run.add_argument("--experiment", choices=EXPERIMENTS)
    run.add_argument("--kind", choices=("classical", "split"))
    run.add_argument("--h", type=float, help="lattice spacing")
    run.add_argument("--torus-size", dest="torus_size", help="even N >= 4, or a comma list such as 4,6")
    run.add_argument("--support", type=int, help="edge length of the random-field support cube")
    run.add_argument("--seed", type=int)
    run.add_argument("--seeds", type=int, help="number of consecutive seeds starting at --seed")
    run.add_argument("--index-sets", dest="index_sets", choices=("derived", "printed"))
    run.add_argument("--table", choices=("corrected", "printed"), help="multiplication table source")
    run.add_argument("--tolerance", type=float)
    run.add_argument("--threads", type=int, help="FFT workers (default: all cores)")
    run.add_argument("--output-dir", dest="output_dir")
    run.add_argument("--cache-dir", dest="cache_dir", help=f"overrides ${fundsol.CACHE_ENV}")
    run.add_argument("--config", help="JSON file with the same keys; flags win")

    cache = sub.add_parser("cache", help="inspect or clear the fundamental-solution cache")
    cache.add_argument("action", choices=("list", "clear", "path"))
    cache.add_argument("--cache-dir", dest="cache_dir", default=None)
    return parser


def load_config(args: argparse.Namespace) -> ExperimentConfig:
    values: dict = {}
    path = getattr(args, "config", None)
    if path:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        if not isinstance(data, dict):
            raise DomainError("config file must hold a JSON object")
        data = {k.replace("-", "_"): v for k, v in data.items()}
        unknown = set(data) - _CONFIG_KEYS
        if unknown:
            raise DomainError(f"unknown config keys: {', '.join(sorted(unknown))}")
        values.update(data)
    for key in _CONFIG_KEYS:
        if hasattr(args, key):
            values[key] = getattr(args, key)
    if "experiment" not in values:
        raise DomainError("--experiment is required (flag or config file)")
    try:
        return ExperimentConfig(**values)
    except (TypeError, ValueError) as exc:
        raise DomainError(str(exc)) from None


def write_reports(result: ExperimentResult, cfg: ExperimentConfig) -> tuple[Path, Path]:
    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    stem = f"{cfg.experiment}_{cfg.kind}"
    jpath, cpath = out / f"{stem}.json", out / f"{stem}.csv"
    jpath.write_text(json.dumps(result.report, indent=2, sort_keys=True, default=str) + "\n", encoding="utf-8")
    with open(cpath, "w", newline="", encoding="utf-8") as fh:
        w = csv.DictWriter(fh, fieldnames=["experiment", "kind", "check", "value", "tolerance", "passed", "note"])
        w.writeheader()
        for row in result.rows:
            w.writerow({"experiment": cfg.experiment, "kind": cfg.kind, **row})
    return jpath, cpath


def cmd_run(args: argparse.Namespace) -> int:
    try:
        cfg = load_config(args)
    except DomainError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (OSError, json.JSONDecodeError) as exc:
        print(f"config error: cannot read {args.config}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        result = run_experiment(cfg)
    except DomainError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except MemoryError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        jpath, cpath = write_reports(result, cfg)
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    for row in result.rows:
        mark = "ok  " if row["passed"] else "FAIL"
        print(f"{mark} {row['check']}: {row['value']} (tol {row['tolerance']}) {row['note']}".rstrip())
    print(f"{cfg.experiment} [{cfg.kind}]: {'PASS' if result.passed else 'FAIL'} in {result.seconds:.2f}s -> {jpath}, {cpath}")
    return EXIT_OK if result.passed else EXIT_FAIL


def cmd_cache(args: argparse.Namespace) -> int:
    root = Path(args.cache_dir) if args.cache_dir else fundsol.default_cache_dir()
    try:
        if args.action == "path":
            print(root)
        elif args.action == "list":
            entries = fundsol.cache_list(root)
            print(json.dumps(entries, indent=2))
        else:
            print(f"removed {fundsol.cache_clear(root)} entries from {root}")
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.command == "cache":
        return cmd_cache(args)
    return cmd_run(args)


if __name__ == "__main__":
    sys.exit(main())
