"""Command line entry point: ``cosetlab run --config cfg.json --out DIR``."""

from __future__ import annotations

import argparse
import os
import sys

from . import __version__
from .errors import ConfigurationError, PreconditionError
from .experiments import ExperimentConfig, execute, load_config

EXIT_CONFIG = 2


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cosetlab", description="Exact experiments on coset spaces.")
    ap.add_argument("--version", action="version", version=f"cosetlab {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run one experiment described by a JSON config")
    run.add_argument("--config", required=True, help="path to the JSON config")
    run.add_argument("--out", required=True, help="output directory")
    run.add_argument("--seed", type=int, help="override the config seed")
    run.add_argument("--max-n", type=int, dest="max_n", help="override n_max")
    run.add_argument("--format", choices=("csv", "json"), help="override the output format")
    return ap


def _apply_overrides(cfg: ExperimentConfig, args) -> ExperimentConfig:
    if args.seed is not None:
        cfg.seed = args.seed
    if args.max_n is not None:
        cfg.n_max = args.max_n
    if args.format is not None:
        cfg.format = args.format
    cfg.validate()
    return cfg


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _apply_overrides(load_config(args.config), args)
        result = execute(cfg)
    except (ConfigurationError, PreconditionError) as exc:
        # a precondition that fails for the requested objects is a config problem
        print(f"cosetlab: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    os.makedirs(args.out, exist_ok=True)
    path = os.path.join(args.out, f"{cfg.experiment}.{cfg.format}")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(result.text)
    if result.message:
        print(f"cosetlab: {result.message}", file=sys.stderr)
    print(path)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
