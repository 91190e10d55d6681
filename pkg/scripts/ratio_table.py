"""Sphere-by-sphere view of |b| against ln(mu_E(b) + 1) for one config.

    python scripts/ratio_table.py configs/lambda32.toml --radius 10
"""
import argparse
from collections import defaultdict

from metadist.config import load_config
from metadist.experiments import run_experiment


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("config")
    ap.add_argument("--radius", type=int)
    args = ap.parse_args()
    cfg = load_config(args.config).with_overrides(radius=args.radius)
    res = run_experiment("main1", cfg)
    per_length = defaultdict(list)
    for _, length, log_mu1, *_ in res.rows:
        per_length[length].append(float(log_mu1))
    print(f"{'length':>6} {'count':>6} {'min ln(mu+1)':>13} {'max ln(mu+1)':>13}")
    for length in sorted(per_length):
        vals = per_length[length]
        print(f"{length:6d} {len(vals):6d} {min(vals):13.4f} {max(vals):13.4f}")
    for k, fit in res.fits.items():
        print(f"fit {k}: |b| <= {fit.multiplier} ln(mu+1) + {float(fit.offset):.4g}")


if __name__ == "__main__":
    main()
