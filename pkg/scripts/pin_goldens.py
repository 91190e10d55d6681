"""Regenerate the golden files under tests/golden/.

acceptance.json holds the fitted constants of the acceptance criteria;
regression.json holds small-scale summaries of every experiment. Run after
an intentional change to the fitting or the synthesizers, then review the diff.
"""
import argparse
import json

from metadist.acceptance import GOLDEN, run_criterion
from metadist.regression import CASES, REGRESSION_GOLDEN, regression_summary


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--only", choices=["acceptance", "regression"])
    args = ap.parse_args()
    if args.only != "regression":
        pinned = {}
        for number in (3, 5, 6, 7):
            out = run_criterion(number, golden={})
            pinned[str(number)] = out.fits
            print(f"criterion {number}: {out.fits}")
        GOLDEN.write_text(json.dumps(pinned, indent=2, sort_keys=True) + "\n")
    if args.only != "acceptance":
        data = {case: regression_summary(case) for case in CASES}
        REGRESSION_GOLDEN.write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")
        print(f"wrote {len(data)} regression cases")


if __name__ == "__main__":
    main()
