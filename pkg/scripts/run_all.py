"""Run every experiment on its bundled config and write CSV + summary per run.

    python scripts/run_all.py --out results/
"""
import argparse
import sys
from pathlib import Path

from metadist.config import load_config
from metadist.experiments import run_experiment, write_outputs

ROOT = Path(__file__).resolve().parents[1]

PLAN = [
    ("main1", "bs12"),
    ("main1", "lambda32"),
    ("embedding", "lambda32"),
    ("semidirect", "bs12"),
    ("semidirect", "diag2"),
    ("certificate", "bs12"),
    ("certificate", "diag2"),
    ("kronecker", "kronecker"),
    ("lattice", "companions"),
    ("ring", "zsqrt2"),
    ("bound", "bound"),
]


def main():
    ap = argparse.ArgumentParser(description="run all bundled experiments")
    ap.add_argument("--out", default="results")
    ap.add_argument("--radius", type=int, help="override every config's radius")
    args = ap.parse_args()
    failed = 0
    for name, config in PLAN:
        cfg = load_config(ROOT / "configs" / f"{config}.toml").with_overrides(radius=args.radius)
        res = run_experiment(name, cfg)
        write_outputs(res, cfg, Path(args.out) / f"{name}-{config}")
        status = "partial" if res.partial else ("ok" if res.passed else "FAILED")
        fits = ", ".join(f"{k}: M={v.multiplier} C={float(v.offset):.4g}" for k, v in res.fits.items())
        print(f"{name:12s} {config:11s} {status:8s} {res.wall_time:7.2f}s  {fits}")
        failed += status != "ok"
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
