"""Named experiments: deterministic CSV rows plus a JSON-ready summary.

Every experiment function takes an :class:`ExperimentConfig` and returns an
:class:`ExperimentResult`. Exact checks run on Fractions and integers; the
logarithm columns are for display and fitting only.

Random inputs come from ``random.Random(seed)``, CPython's Mersenne Twister
(MT19937), whose integer stream for a given seed is fixed across platforms.
"""
from __future__ import annotations

import csv
import io
import json
import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional

import mpmath

from metadist import __version__
from metadist.config import ExperimentConfig
from metadist.exact import envelope_fit, log_fraction, mu_E, one_norm
from metadist.geodesic import BallLimitExceeded, bfs_ball
from metadist.group import (
    Element,
    GroupSpec,
    Word,
    collecting_constants,
    evaluate,
    evaluate_element,
    format_word,
    hnn_embed,
    semidirect_split,
)
from metadist.polynomial import IntPolynomial, squarefree_part
from metadist.spectral import has_modulus_one_root


def fmt_log(x: float) -> str:
    return format(float(x), ".15g")


def fmt_q(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass
class ExperimentResult:
    name: str
    header: list
    rows: list
    fits: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)
    counts: dict = field(default_factory=dict)
    constants: dict = field(default_factory=dict)
    partial: bool = False
    notes: list = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def csv_text(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.header)
        w.writerows(self.rows)
        return buf.getvalue()

    def summary(self) -> dict:
        return {
            "fits": {k: v.to_dict() for k, v in self.fits.items()},
            "checks": dict(self.checks),
            "counts": dict(self.counts),
            "constants": dict(self.constants),
            "partial": self.partial,
            "notes": list(self.notes),
            "wall_time": round(self.wall_time, 3),
        }


def _ball(cfg: ExperimentConfig, spec: GroupSpec, res: ExperimentResult):
    try:
        return bfs_ball(spec, cfg.parameters.radius, cfg.parameters.node_limit)
    except BallLimitExceeded as exc:
        res.partial = True
        res.notes.append(f"node limit hit; ball complete to radius {exc.completed_radius}")
        return exc.partial


def _require_seed(cfg: ExperimentConfig) -> random.Random:
    if cfg.parameters.seed is None:
        raise ValueError("this experiment needs a seed")
    return random.Random(cfg.parameters.seed)


def _b_key(g: Element) -> str:
    return ",".join(fmt_q(c) for c in g.translation)


# -- main1 ----------------------------------------------------------------------

def lower_constants(spec: GroupSpec) -> tuple:
    """(M1, C1) with ln(mu_E(b) + 1) <= M1 |b| + C1 for every b in B, and the exact test.

    A word for b in B has #q_i = #q_i^-1 = sigma_i, so 2 sum(sigma) + sum(alpha) <= |w|.
    Integral actions: mu <= K^sum(sigma) A <= K^(|w|/2) once K >= 4, so
    (mu + 1)^2 <= 4 K^|w|. Otherwise the exponent doubles and mu + 1 <= 2 K^|w|
    for K >= 2.
    """
    K = collecting_constants(spec).base
    if spec.is_integral():
        K = max(K, 4)
        M1 = math.log(K) / 2

        def holds(mu_value: int, length: int) -> bool:
            return (mu_value + 1) ** 2 <= 4 * K**length

    else:
        K = max(K, 2)
        M1 = math.log(K)

        def holds(mu_value: int, length: int) -> bool:
            return mu_value + 1 <= 2 * K**length

    return M1, math.log(2), K, holds


def run_main1(cfg: ExperimentConfig) -> ExperimentResult:
    """Both directions of |b| ~ ln(mu_E(b) + 1) on a BFS ball."""
    from metadist.shortwords import rank1_short_word

    spec = cfg.group
    res = ExperimentResult("main1", ["element", "length", "log_mu1", "synth_length", "lower_bound"], [])
    ball = _ball(cfg, spec, res)
    M1, C1, K, holds = lower_constants(spec)
    can_synth = spec.k == 1 and spec.n == 1 and spec.actions[0].rows[0][0] > 0
    samples, synth_samples = [], []
    lower_ok = synth_ok = True
    entries = sorted(((v[0], g) for g, v in ball.items() if g.is_in_B()), key=lambda t: (t[0], _b_key(t[1])))
    for length, g in entries:
        mu_value = mu_E(g.translation)
        lg = log_fraction(mu_value + 1)
        lower_ok &= holds(mu_value, length)
        samples.append((length, lg))
        synth = ""
        if can_synth and length > 0:
            s = rank1_short_word(g.translation[0], spec)
            if evaluate_element(s.word, spec) != g or len(s.word) < length or len(s.word) > s.bound:
                synth_ok = False
            synth = len(s.word)
            synth_samples.append((synth, lg))
        res.rows.append([_b_key(g), length, fmt_log(lg), synth, fmt_log(M1 * length + C1)])
    grid = cfg.parameters.multiplier_grid
    res.fits["upper"] = envelope_fit(samples, grid)
    if synth_samples:
        res.fits["synth"] = envelope_fit(synth_samples, grid)
    res.checks["lower_bound"] = lower_ok
    if can_synth:
        res.checks["synth_roundtrip"] = synth_ok
    res.counts = {"ball": len(ball), "B_elements": len(entries), "radius": ball.radius}
    res.constants = {"M1": fmt_log(M1), "C1": fmt_log(C1), "K": K, "sphere_sizes": list(ball.sphere_sizes)}
    return res


# -- embedding --------------------------------------------------------------------

def run_embedding(cfg: ExperimentConfig) -> ExperimentResult:
    spec = cfg.group
    big = hnn_embed(spec)
    res = ExperimentResult("embedding", ["element", "length_G", "length_G1", "ratio"], [])
    ball_g = _ball(cfg, spec, res)
    ball_g1 = _ball(cfg, big, res)
    samples = []
    resolved = unresolved = 0
    not_longer = True
    max_ratio = Fraction(0)
    entries = sorted(((v[0], g) for g, v in ball_g1.items() if g.is_in_B()), key=lambda t: (t[0], _b_key(t[1])))
    for l1, g1 in entries:
        g = Element((0,) * spec.k, g1.translation)
        entry = ball_g.table.get(g)
        if entry is None:
            # either |b|_G > radius or b lies in B[1/m] but not in B
            unresolved += 1
            continue
        lg = entry[0]
        resolved += 1
        not_longer &= l1 <= lg
        if l1:
            max_ratio = max(max_ratio, Fraction(lg, l1))
        samples.append((lg, l1))
        res.rows.append([_b_key(g1), lg, l1, fmt_q(Fraction(lg, l1)) if l1 else ""])
    res.checks["G1_not_longer"] = not_longer
    res.fits["G_vs_G1"] = envelope_fit(samples, cfg.parameters.multiplier_grid)
    res.counts = {"ball_G": len(ball_g), "ball_G1": len(ball_g1), "resolved": resolved, "unresolved": unresolved}
    res.constants = {"max_ratio": fmt_q(max_ratio), "m": spec.m}
    return res


# -- semidirect -----------------------------------------------------------------

def run_semidirect(cfg: ExperimentConfig) -> ExperimentResult:
    spec = cfg.group
    res = ExperimentResult("semidirect", ["element", "length", "length_q", "length_b"], [])
    ball = _ball(cfg, spec, res)
    zero = tuple(Fraction(0) for _ in range(spec.n))
    upper = lower = True
    both = 0
    for g, (length, _, _) in sorted(ball.items(), key=lambda t: (t[1][0], t[0].key())):
        q, b = semidirect_split(g)
        lq = ball.table.get(Element(q, zero))
        lb = ball.table.get(b)
        if lq is None or lb is None:
            continue
        both += 1
        lq, lb = lq[0], lb[0]
        upper &= length <= lq + lb
        lower &= lq + lb <= 3 * length
        res.rows.append([g.key(), length, lq, lb])
    res.checks["triangle"] = upper
    res.checks["three_times"] = lower
    res.counts = {"ball": len(ball), "checked": both}
    return res


# -- certificate ----------------------------------------------------------------

def random_word(rng: random.Random, spec: GroupSpec, max_length: int) -> Word:
    letters = spec.letters()
    n = rng.randint(0, max_length)
    return Word(tuple(letters[rng.randrange(len(letters))] for _ in range(n)))


def run_certificate(cfg: ExperimentConfig, max_length: int = 40) -> ExperimentResult:
    spec = cfg.group
    rng = _require_seed(cfg)
    res = ExperimentResult("certificate", ["word", "mu_E", "log_bound", "holds"], [])
    violations = 0
    for _ in range(cfg.parameters.fuzz_count):
        w = random_word(rng, spec, max_length)
        g, cert = evaluate(w, spec)
        value = mu_E(g.translation)
        ok = value <= cert.mu_bound
        violations += not ok
        res.rows.append([format_word(w, spec), value, fmt_log(math.log(cert.mu_bound)), int(ok)])
    c = collecting_constants(spec)
    res.checks["certificate"] = violations == 0
    res.counts = {"words": cfg.parameters.fuzz_count, "violations": violations}
    res.constants = {"K1": c.K1, "K2": c.K2, "K3": c.K3, "base": c.base}
    return res


# -- kronecker --------------------------------------------------------------------

def cyclotomic(j: int) -> IntPolynomial:
    import sympy

    x = sympy.Symbol("x")
    coeffs = sympy.Poly(sympy.cyclotomic_poly(j, x), x).all_coeffs()
    return IntPolynomial(tuple(int(c) for c in reversed(coeffs)))


def numeric_circle_oracle(p: IntPolynomial, digits: int = 50, tol_digits: int = 30) -> bool:
    """Independent check: some root of p has |z| = 1 within 10^-tol_digits.

    Roots come from mpmath.polyroots on the squarefree part (repeated roots
    would cost precision).
    """
    r = squarefree_part(p.as_rational())
    r = IntPolynomial.from_rational(r)
    if r.degree == 0:
        return False
    with mpmath.workdps(digits):
        roots = mpmath.polyroots(list(reversed(r.coeffs)), maxsteps=400, extraprec=4 * digits)
        tol = mpmath.mpf(10) ** (-tol_digits)
        return any(abs(abs(z) - 1) < tol for z in roots)


def random_polynomial(rng: random.Random, max_degree: int = 8, coeff: int = 3) -> IntPolynomial:
    d = rng.randint(1, max_degree)
    coeffs = [rng.randint(-coeff, coeff) for _ in range(d)]
    lead = 0
    while lead == 0:
        lead = rng.randint(-coeff, coeff)
    return IntPolynomial(tuple(coeffs) + (lead,))


def run_kronecker(cfg: ExperimentConfig) -> ExperimentResult:
    res = ExperimentResult("kronecker", ["polynomial", "source", "verdict", "oracle", "witness"], [])
    polys = [(p, "config") for p in cfg.polynomials]
    polys += [(cyclotomic(j), f"cyclotomic_{j}") for j in range(1, 13)]
    if cfg.parameters.fuzz_count:
        rng = _require_seed(cfg)
        polys += [(random_polynomial(rng), "random") for _ in range(cfg.parameters.fuzz_count)]
    disagree = 0
    positives = 0
    for p, src in polys:
        flag, witness = has_modulus_one_root(p.as_rational())
        oracle = numeric_circle_oracle(p)
        disagree += flag != oracle
        positives += flag
        res.rows.append([str(p), src, int(flag), int(oracle), "" if witness is None else str(witness)])
    res.checks["oracle_agreement"] = disagree == 0
    res.counts = {"polynomials": len(polys), "disagreements": disagree, "circle_root": positives}
    return res


# -- lattice digits ---------------------------------------------------------------

def run_lattice(cfg: ExperimentConfig, matrices: Optional[list] = None, bound: int = 10**6) -> ExperimentResult:
    from metadist.shortwords import PrecisionCapExceeded, lattice_digits

    rng = _require_seed(cfg)
    mats = matrices or list(cfg.group.actions)
    res = ExperimentResult("lattice", ["matrix", "vector", "k", "l", "max_digit", "p_norm", "log_norm1"], [])
    exact = sharp = True
    caps = 0
    by_matrix = {}
    for idx, M in enumerate(mats):
        samples = []
        for _ in range(cfg.parameters.fuzz_count):
            a = tuple(Fraction(rng.randint(-bound, bound)) for _ in range(M.n))
            try:
                d = lattice_digits(a, M, cfg.parameters.precision, cap_bits=cfg.parameters.precision)
            except PrecisionCapExceeded:
                caps += 1
                continue
            exact &= d.value(M) == a
            sharp &= d.bounds_hold()
            lg = log_fraction(int(one_norm(a)) + 1)
            samples.append((d.k + d.l, lg))
            res.rows.append([idx, " ".join(fmt_q(c) for c in a), d.k, d.l, fmt_q(d.max_digit()), fmt_q(one_norm(d.p)), fmt_log(lg)])
        if samples:
            by_matrix[idx] = envelope_fit(samples, cfg.parameters.multiplier_grid)
    res.fits = {f"digits_{i}": f for i, f in by_matrix.items()}
    res.checks["exact"] = exact
    res.checks["digit_bounds"] = sharp
    res.checks["no_precision_cap"] = caps == 0
    res.counts = {"vectors": cfg.parameters.fuzz_count * len(mats), "precision_cap": caps}
    return res


# -- number ring --------------------------------------------------------------------

def random_ring_b(rng: random.Random, ring_cfg, max_sk: int = 6, coeff: int = 50) -> tuple:
    ring = ring_cfg.ring
    s, k = rng.randint(0, max_sk), rng.randint(0, max_sk)
    num = tuple(Fraction(rng.randint(-coeff, coeff)) for _ in range(ring.n))
    den = ring.mul(ring.pow(ring_cfg.x, s), ring.pow(ring_cfg.y, k))
    return ring.mul(num, ring.inverse(den))


def run_ring(cfg: ExperimentConfig, c1_samples: int = 1000) -> ExperimentResult:
    from metadist.shortwords import ring_group_spec, ring_short_word

    if cfg.ring is None:
        raise ValueError("the ring experiment needs a [ring] table")
    rc = cfg.ring
    ring = rc.ring
    rng = _require_seed(cfg)
    lam = ring.mul(rc.x, ring.inverse(rc.y))
    spec = ring_group_spec(ring, lam)
    res = ExperimentResult("ring", ["b", "s", "k", "length", "bound", "log_mu1"], [])
    roundtrip = within = True
    samples, sk_samples = [], []
    for _ in range(cfg.parameters.fuzz_count):
        b = random_ring_b(rng, rc)
        if not any(b):
            continue
        syn = ring_short_word(b, ring, rc.x, rc.y, rc.witness, spec, cfg.parameters.precision)
        g = evaluate_element(syn.word, spec)
        roundtrip &= g.translation == b and not any(g.exponents)
        within &= syn.length <= syn.bound
        lg = log_fraction(mu_E(b) + 1)
        samples.append((syn.length, lg))
        dec = syn.decomposition
        sk_samples.append((max(dec.s, dec.k) + log_fraction(int(one_norm(dec.d)) + 1), lg))
        res.rows.append([" ".join(fmt_q(c) for c in b), dec.s, dec.k, syn.length, syn.bound, fmt_log(lg)])
    c1_ok = True
    for _ in range(c1_samples):
        u = tuple(Fraction(rng.randint(-1000, 1000)) for _ in range(ring.n))
        v = tuple(Fraction(rng.randint(-1000, 1000)) for _ in range(ring.n))
        c1_ok &= one_norm(ring.mul(u, v)) <= ring.C1 * one_norm(u) * one_norm(v)
    res.fits["length"] = envelope_fit(samples, cfg.parameters.multiplier_grid)
    res.fits["sk_plus_log_d"] = envelope_fit(sk_samples, cfg.parameters.multiplier_grid)
    res.checks["roundtrip"] = roundtrip
    res.checks["a_priori_bound"] = within
    res.checks["C1_product"] = c1_ok
    res.counts = {"samples": len(samples), "c1_samples": c1_samples}
    res.constants = {"C1": fmt_q(ring.C1), "m": spec.m}
    return res


# -- explicit constants of the size bound -------------------------------------------

def run_bound(cfg: ExperimentConfig, Mval: int = 2, Nval: int = 3, eps=Fraction(1, 2)) -> ExperimentResult:
    from metadist.shortwords import bound_constants, check_bound_inequalities

    rng = _require_seed(cfg)
    res = ExperimentResult("bound", ["gamma", "s", "k", "first", "hypothesis", "second"], [])
    first = second = True
    hyp = 0
    for _ in range(cfg.parameters.fuzz_count):
        gamma = 0
        while gamma == 0:
            gamma = rng.randint(-10**6, 10**6)
        s, k = rng.randint(0, 30), rng.randint(0, 30)
        c = check_bound_inequalities(gamma, s, k, Mval, Nval, eps)
        first &= c.first
        if c.hypothesis:
            hyp += 1
            second &= bool(c.second)
        res.rows.append([gamma, s, k, int(c.first), int(c.hypothesis), "" if c.second is None else int(c.second)])
    C3, C4 = bound_constants(Nval, Mval, eps)
    res.checks["first"] = first
    res.checks["second"] = second
    res.counts = {"triples": cfg.parameters.fuzz_count, "hypothesis_met": hyp}
    res.constants = {"C3": fmt_log(C3), "C4": fmt_log(C4), "M": Mval, "N": Nval, "eps": fmt_q(eps)}
    return res


EXPERIMENTS: dict = {
    "main1": run_main1,
    "embedding": run_embedding,
    "semidirect": run_semidirect,
    "certificate": run_certificate,
    "kronecker": run_kronecker,
    "lattice": run_lattice,
    "ring": run_ring,
    "bound": run_bound,
}


def run_experiment(name: str, cfg: ExperimentConfig) -> ExperimentResult:
    if name not in EXPERIMENTS:
        raise KeyError(f"unknown experiment {name!r}; choose from {', '.join(EXPERIMENTS)}")
    t0 = time.perf_counter()
    res = EXPERIMENTS[name](cfg)
    res.wall_time = time.perf_counter() - t0
    return res


def write_outputs(res: ExperimentResult, cfg: ExperimentConfig, out_dir) -> tuple:
    """Write ``<name>.csv`` and ``summary.json``; returns both paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    csv_path = out / f"{res.name}.csv"
    with open(csv_path, "w", encoding="utf-8", newline="") as fh:
        fh.write(res.csv_text())
    summary = {
        "tool_version": __version__,
        "config": cfg.path,
        "config_hash": cfg.source_hash,
        "parameters": {
            "radius": cfg.parameters.radius,
            "node_limit": cfg.parameters.node_limit,
            "seed": cfg.parameters.seed,
            "fuzz_count": cfg.parameters.fuzz_count,
            "precision": cfg.parameters.precision,
        },
        "experiments": {res.name: res.summary()},
        "passed": res.passed,
    }
    summary_path = out / "summary.json"
    with open(summary_path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return csv_path, summary_path
