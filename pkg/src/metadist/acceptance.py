"""Acceptance criteria as runnable checks.

Each ``criterion_*`` function returns a :class:`Outcome`; ``python -m
metadist.acceptance`` runs them all and prints one line per criterion.
Fitted constants are compared against ``tests/golden/acceptance.json``
(regenerate with ``scripts/pin_goldens.py``).
"""
from __future__ import annotations

import json
import random
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Optional

import numpy as np

from metadist.config import load_config
from metadist.exact import RationalMatrix
from metadist.experiments import run_experiment, run_lattice
from metadist.group import b_element, evaluate_element, rank1_spec
from metadist.polynomial import IntPolynomial
from metadist.shortwords import digits_to_word, lambda_adic_batch, lambda_adic_digits, max_power_below
from metadist.spectral import has_modulus_one_root

ROOT = Path(__file__).resolve().parents[2]
CONFIGS = ROOT / "configs"
GOLDEN = ROOT / "tests" / "golden" / "acceptance.json"
OFFSET_TOL = 1e-9


@dataclass
class Outcome:
    number: int
    title: str
    checks: dict
    limit: float
    elapsed: float = 0.0
    fits: dict = field(default_factory=dict)
    info: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values()) and self.elapsed < self.limit

    def line(self) -> str:
        failed = [k for k, v in self.checks.items() if not v]
        if self.elapsed >= self.limit:
            failed.append(f"runtime>{self.limit:g}s")
        verdict = "PASS" if self.passed else "FAIL"
        detail = f" ({', '.join(failed)})" if failed else ""
        return f"[{verdict}] criterion {self.number}: {self.title}{detail} [{self.elapsed:.1f}s]"


def load_golden(path: Path = GOLDEN) -> dict:
    return json.loads(path.read_text()) if path.exists() else {}


def fits_match(fits: dict, pinned: Optional[dict]) -> bool:
    """Exact multiplier match and offsets within OFFSET_TOL of the pinned values."""
    if not pinned or set(pinned) != set(fits):
        return False
    for key, fit in fits.items():
        want = pinned[key]
        if Fraction(want["multiplier"]) != Fraction(fit["multiplier"]):
            return False
        if abs(float(Fraction(want["offset"])) - float(Fraction(fit["offset"]))) > OFFSET_TOL:
            return False
    return True


def _cfg(name: str, **overrides):
    return load_config(CONFIGS / f"{name}.toml").with_overrides(**overrides)


def _fit_dict(res) -> dict:
    return {k: {"multiplier": str(v.multiplier), "offset": str(v.offset)} for k, v in res.fits.items()}


# -- the nine criteria ----------------------------------------------------------------

def criterion_1(golden: dict) -> Outcome:
    checks = {}
    values = np.arange(-10**6, 10**6 + 1, dtype=np.int64)
    rng = random.Random(1)
    for x, y in ((2, 1), (3, 2)):
        batch = lambda_adic_batch(values, x, y)
        s = np.zeros(len(values), dtype=np.int64)
        nz = values != 0
        s[nz] = max_power_below(values[nz], x, y)
        checks[f"reconstruct_{x}/{y}"] = batch.reconstructs(x, y)
        lengths = batch.word_lengths()
        checks[f"length_{x}/{y}"] = bool((lengths < s * (2 + x) + x).all())
        checks[f"digit_top_{x}/{y}"] = bool((batch.top <= s).all())
        # the batch digits agree with the scalar path, whose words are evaluated exactly
        spec = rank1_spec(Fraction(x, y))
        agree = True
        for m in [0, 1, -1, 10**6, -(10**6)] + [rng.randint(-10**6, 10**6) for _ in range(200)]:
            d = lambda_adic_digits(m, x, y)
            i = m + 10**6
            agree &= tuple(int(c) for c in batch.digits[i, : d.s + 1]) == d.digits
            w = digits_to_word(d)
            agree &= evaluate_element(w, spec) == b_element(spec, [m]) and len(w) <= int(lengths[i])
        checks[f"scalar_agreement_{x}/{y}"] = agree
    return Outcome(1, "exact lambda-adic bound, |m| <= 10^6, lambda in {2, 3/2}", checks, 60)


def criterion_2(golden: dict) -> Outcome:
    checks, info = {}, {}
    for name in ("bs12", "diag2"):
        res = run_experiment("certificate", _cfg(name, fuzz_count=10_000))
        checks[f"certificate_{name}"] = res.checks["certificate"] and res.counts["words"] == 10_000
        info[name] = res.constants
    return Outcome(2, "certificate inequality on 10^4 random words", checks, 120, info=info)


def criterion_3(golden: dict) -> Outcome:
    res = run_experiment("main1", _cfg("bs12", radius=14))
    fits = _fit_dict(res)
    checks = dict(res.checks)
    checks["complete_ball"] = not res.partial and res.counts["radius"] == 14
    checks["fits_pinned"] = fits_match(fits, golden.get("3"))
    return Outcome(3, "two-sided quasi-equivalence on the BS(1,2) radius-14 ball", checks, 600, fits=fits, info=res.counts)


def criterion_4(golden: dict) -> Outcome:
    res = run_experiment("kronecker", _cfg("kronecker", fuzz_count=500))
    checks = dict(res.checks)
    checks["pinned_x2-x+1"] = has_modulus_one_root(IntPolynomial((1, -1, 1)).as_rational())[0] is True
    checks["pinned_x2-3x+1"] = has_modulus_one_root(IntPolynomial((1, -3, 1)).as_rational())[0] is False
    checks["count"] = res.counts["polynomials"] >= 512
    return Outcome(4, "Kronecker detector vs 50-digit oracle", checks, 60, info=res.counts)


COMPANIONS = (RationalMatrix.companion([1, -3, 1]), RationalMatrix.companion([-1, -1, 1]))


def criterion_5(golden: dict) -> Outcome:
    cfg = _cfg("companions", fuzz_count=1000, precision=256)
    res = run_lattice(cfg, list(COMPANIONS))
    fits = _fit_dict(res)
    checks = dict(res.checks)
    checks["fits_pinned"] = fits_match(fits, golden.get("5"))
    return Outcome(5, "lattice digits for both companions", checks, 120, fits=fits, info=res.counts)


def criterion_6(golden: dict) -> Outcome:
    res = run_experiment("ring", _cfg("zsqrt2", fuzz_count=200))
    fits = _fit_dict(res)
    checks = dict(res.checks)
    checks["samples"] = res.counts["samples"] >= 190
    checks["fits_pinned"] = fits_match(fits, golden.get("6"))
    return Outcome(6, "Z[sqrt2] pipeline with a supplied witness", checks, 120, fits=fits, info=res.counts)


def criterion_7(golden: dict) -> Outcome:
    res = run_experiment("embedding", _cfg("lambda32", radius=10))
    fits = _fit_dict(res)
    checks = dict(res.checks)
    checks["complete_balls"] = not res.partial
    checks["resolved_nonempty"] = res.counts["resolved"] > 0
    checks["fits_pinned"] = fits_match(fits, golden.get("7"))
    return Outcome(7, "embedding is undistorted for lambda = 3/2", checks, 600, fits=fits, info=res.counts)


def criterion_8(golden: dict) -> Outcome:
    res = run_experiment("semidirect", _cfg("bs12", radius=12))
    checks = dict(res.checks)
    checks["complete_ball"] = not res.partial
    checks["checked_nonempty"] = res.counts["checked"] > 0
    return Outcome(8, "semidirect split inequalities on the radius-12 ball", checks, 600, info=res.counts)


def criterion_9(golden: dict) -> Outcome:
    res = run_experiment("bound", _cfg("bound", fuzz_count=1000))
    checks = dict(res.checks)
    checks["hypothesis_exercised"] = res.counts["hypothesis_met"] > 0
    return Outcome(9, "size bound with explicit constants", checks, 60, info={**res.counts, **res.constants})


CRITERIA: dict = {i: globals()[f"criterion_{i}"] for i in range(1, 10)}


def run_criterion(number: int, golden: Optional[dict] = None) -> Outcome:
    fn: Callable = CRITERIA[number]
    t0 = time.perf_counter()
    out = fn(load_golden() if golden is None else golden)
    out.elapsed = time.perf_counter() - t0
    return out


def main(argv=None) -> int:
    golden = load_golden()
    outcomes = [run_criterion(i, golden) for i in CRITERIA]
    for o in outcomes:
        print(o.line())
    return 0 if all(o.passed for o in outcomes) else 1


if __name__ == "__main__":
    sys.exit(main())
