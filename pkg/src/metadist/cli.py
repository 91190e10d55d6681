"""``metadist`` command line.

Exit codes: 0 ok, 1 parse/validation error or failed exact check, 2 resource limit.
Set METADIST_THREADS to spread BFS layers over several threads.
"""
from __future__ import annotations

import argparse
import sys

from metadist.config import ConfigError, load_config, validate_config
from metadist.experiments import EXPERIMENTS, run_experiment, write_outputs

EXIT_OK, EXIT_INVALID, EXIT_RESOURCE = 0, 1, 2


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="metadist", description="Word-length experiments for metabelian groups.")
    sub = p.add_subparsers(dest="command", required=True)
    v = sub.add_parser("validate", help="parse and check a config")
    v.add_argument("config")
    e = sub.add_parser("experiment", help="run a named experiment")
    e.add_argument("name", choices=sorted(EXPERIMENTS))
    e.add_argument("--config", required=True)
    e.add_argument("--out", required=True, help="output directory")
    e.add_argument("--radius", type=int)
    e.add_argument("--seed", type=int)
    e.add_argument("--node-limit", type=int, dest="node_limit")
    e.add_argument("--precision", type=int)
    return p


def cmd_validate(path: str) -> int:
    diags = validate_config(path)
    for d in diags:
        print(d, file=sys.stderr if d.level == "error" else sys.stdout)
    if any(d.level == "error" for d in diags):
        return EXIT_INVALID
    print(f"{path}: ok")
    return EXIT_OK


def cmd_experiment(args) -> int:
    try:
        cfg = load_config(args.config).with_overrides(
            radius=args.radius, seed=args.seed, node_limit=args.node_limit, precision=args.precision
        )
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    try:
        res = run_experiment(args.name, cfg)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    csv_path, summary_path = write_outputs(res, cfg, args.out)
    for key, ok in res.checks.items():
        print(f"{key}: {'pass' if ok else 'FAIL'}")
    for key, fit in res.fits.items():
        print(f"{key}: f <= {fit.multiplier} * g + {float(fit.offset):.6g}")
    print(f"wrote {csv_path} and {summary_path} ({res.wall_time:.2f} s)")
    if res.partial:
        print("partial results: " + "; ".join(res.notes), file=sys.stderr)
        return EXIT_RESOURCE
    return EXIT_OK if res.passed else EXIT_INVALID


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "validate":
        return cmd_validate(args.config)
    return cmd_experiment(args)


if __name__ == "__main__":
    sys.exit(main())
