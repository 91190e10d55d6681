"""TOML experiment configs.

Layout::

    name = "bs12"

    [group]                    # required
    actions = [[["2"]]]        # list of row-major matrices, entries "p/q" strings or ints
    labels = ["t", "a"]        # optional

    [ring]                     # optional; monogenic Z[x]/(f)
    polynomial = [-2, 0, 1]    # ascending integer coefficients
    x = ["3", "1"]             # lambda = x / y, power-basis coordinates
    y = ["3", "-1"]
    witness = [["-3", "3"], ["0", "-2"]]   # u, v with u*x + v*y = 1

    [kronecker]                # optional
    polynomials = [[1, -1, 1], [1, -3, 1]]

    [parameters]
    radius = 12
    node_limit = 20000000
    seed = 1
    fuzz_count = 1000
    multiplier_grid = ["1", "3/2", "2"]
    exponent_bound = 3
    precision = 256
"""
from __future__ import annotations

import hashlib
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover - exercised on 3.10 only
    import tomli as tomllib

from metadist.group import Diagnostic, GroupSpec, validate
from metadist.numring import RingSpec, verify_witness
from metadist.polynomial import IntPolynomial

_RATIONAL = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


class ConfigError(ValueError):
    """Parse or validation failure; ``line`` is 1-based, or None when unknown."""

    def __init__(self, message: str, line: Optional[int] = None, path: str = "<config>"):
        self.line = line
        self.path = path
        self.bare = message
        where = f"{path}:{line}" if line else path
        super().__init__(f"{where}: {message}")


def parse_rational(value) -> Fraction:
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        m = _RATIONAL.match(value)
        if m:
            den = int(m.group(2) or 1)
            if den == 0:
                raise ValueError(f"zero denominator in {value!r}")
            return Fraction(int(m.group(1)), den)
    raise ValueError(f"expected an integer or a \"p/q\" string, got {value!r}")


@dataclass(frozen=True)
class RingConfig:
    ring: RingSpec
    x: tuple
    y: tuple
    witness: tuple


@dataclass(frozen=True)
class Parameters:
    radius: int = 12
    node_limit: int = 20_000_000
    seed: Optional[int] = None
    fuzz_count: int = 1000
    multiplier_grid: tuple = tuple(Fraction(k, 4) for k in range(4, 41))
    exponent_bound: int = 3
    precision: int = 256


@dataclass(frozen=True)
class ExperimentConfig:
    name: str
    group: GroupSpec
    parameters: Parameters = field(default_factory=Parameters)
    ring: Optional[RingConfig] = None
    polynomials: tuple = ()
    source_hash: str = ""
    path: str = "<config>"
    diagnostics: tuple = ()

    def with_overrides(self, **kw) -> "ExperimentConfig":
        params = {k: v for k, v in kw.items() if v is not None}
        if "radius" in params and params["radius"] < 0:
            raise ConfigError("radius must be >= 0", None, self.path)
        new = Parameters(**{**self.parameters.__dict__, **params})
        return ExperimentConfig(self.name, self.group, new, self.ring, self.polynomials, self.source_hash, self.path, self.diagnostics)


def _line_of(text: str, key: str, table: Optional[str] = None) -> Optional[int]:
    """Line of ``key = ...`` (inside ``[table]`` when given), or of the table header."""
    lines = text.splitlines()
    start = 0
    if table is not None:
        header = re.compile(r"^\s*\[\s*" + re.escape(table) + r"\s*\]")
        for i, line in enumerate(lines):
            if header.match(line):
                start = i
                break
        else:
            return None
        if key is None:
            return start + 1
    pat = re.compile(r"^\s*" + re.escape(key) + r"\s*=")
    for i in range(start, len(lines)):
        if i > start and table is not None and re.match(r"^\s*\[", lines[i]):
            break
        if pat.match(lines[i]):
            return i + 1
    return start + 1 if table is not None else None


def _toml_error_line(exc: Exception, text: str) -> Optional[int]:
    m = re.search(r"line (\d+)", str(exc))
    if m:
        return int(m.group(1))
    if "end of document" in str(exc):
        return max(1, len(text.rstrip("\n").splitlines()))
    return None


def _rational_vector(values, what: str) -> tuple:
    if not isinstance(values, list):
        raise ValueError(f"{what} must be an array")
    return tuple(parse_rational(v) for v in values)


def _matrix(rows, what: str) -> list:
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise ValueError(f"{what} must be a non-empty array of rows")
    out = [list(_rational_vector(r, what)) for r in rows]
    if any(len(r) != len(out) for r in out):
        raise ValueError(f"{what} must be square")
    return out


def parse_config(text: str, path: str = "<config>") -> ExperimentConfig:
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"TOML syntax error: {exc}", _toml_error_line(exc, text), path) from None

    def fail(msg, key=None, table=None):
        raise ConfigError(msg, _line_of(text, key, table) if key or table else None, path)

    group = data.get("group")
    if not isinstance(group, dict):
        fail("missing [group] table")
    if "actions" not in group:
        fail("[group] needs 'actions'", None, "group")
    try:
        actions = [_matrix(M, f"action {i + 1}") for i, M in enumerate(group["actions"])]
        spec = GroupSpec(tuple(actions), tuple(group.get("labels", ())), str(data.get("name", "")))
    except (ValueError, TypeError) as exc:
        fail(str(exc), "actions", "group")
    diags = tuple(validate(spec))
    for d in diags:
        if d.level == "error":
            fail(d.message, "actions", "group")

    ring_cfg = None
    if "ring" in data:
        r = data["ring"]
        try:
            f = IntPolynomial(tuple(int(c) for c in r["polynomial"]))
            ring = RingSpec(f)
        except KeyError:
            fail("[ring] needs 'polynomial'", None, "ring")
        except (ValueError, TypeError) as exc:
            fail(str(exc), "polynomial", "ring")
        try:
            x = _rational_vector(r["x"], "x")
            y = _rational_vector(r["y"], "y")
            u, v = (_rational_vector(w, "witness") for w in r["witness"])
        except KeyError as exc:
            fail(f"[ring] needs {exc.args[0]!r}", None, "ring")
        except (ValueError, TypeError) as exc:
            fail(str(exc), None, "ring")
        for vec, key in ((x, "x"), (y, "y"), (u, "witness"), (v, "witness")):
            if len(vec) != ring.n:
                fail(f"{key} needs {ring.n} coordinates", key, "ring")
        if not verify_witness(x, y, u, v, ring):
            fail("witness does not satisfy u*x + v*y = 1 with integral u, v", "witness", "ring")
        ring_cfg = RingConfig(ring, x, y, (u, v))

    polys = ()
    if "kronecker" in data:
        try:
            polys = tuple(IntPolynomial(tuple(int(c) for c in p)) for p in data["kronecker"]["polynomials"])
        except (KeyError, ValueError, TypeError) as exc:
            fail(f"bad polynomial list: {exc}", "polynomials", "kronecker")

    raw = data.get("parameters", {})
    known = set(Parameters.__dataclass_fields__)
    for key in raw:
        if key not in known:
            fail(f"unknown parameter {key!r}", key, "parameters")
    kw = {}
    for key in ("radius", "node_limit", "seed", "fuzz_count", "exponent_bound", "precision"):
        if key in raw:
            if not isinstance(raw[key], int) or isinstance(raw[key], bool):
                fail(f"{key} must be an integer", key, "parameters")
            kw[key] = raw[key]
    if kw.get("radius", 0) < 0:
        fail("radius must be >= 0", "radius", "parameters")
    if kw.get("node_limit", 1) < 1:
        fail("node_limit must be >= 1", "node_limit", "parameters")
    if "multiplier_grid" in raw:
        try:
            grid = _rational_vector(raw["multiplier_grid"], "multiplier_grid")
        except (ValueError, TypeError) as exc:
            fail(str(exc), "multiplier_grid", "parameters")
        if not grid or any(g < 1 for g in grid):
            fail("multiplier_grid must be a non-empty list of rationals >= 1", "multiplier_grid", "parameters")
        kw["multiplier_grid"] = grid
    source_hash = hashlib.sha256(text.encode()).hexdigest()
    return ExperimentConfig(
        str(data.get("name", Path(path).stem)), spec, Parameters(**kw), ring_cfg, polys, source_hash, path, diags
    )


def load_config(path) -> ExperimentConfig:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc.strerror}", None, str(path)) from None
    return parse_config(text, str(path))


def validate_config(path) -> list:
    """Diagnostics for a config file: ConfigError messages become error Diagnostics."""
    try:
        cfg = load_config(path)
    except ConfigError as exc:
        return [Diagnostic("error", str(exc))]
    return [Diagnostic(d.level, f"{cfg.path}: {d.message}") for d in cfg.diagnostics]
