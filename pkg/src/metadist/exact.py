"""Exact rational vectors and matrices, and the size functions used throughout.

Scalars are :class:`fractions.Fraction` (always in lowest terms, hashable by
the normalized pair). Vectors are plain tuples of Fractions.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm
from typing import Iterable, Sequence

Rational = Fraction
RationalVector = tuple  # tuple[Fraction, ...]


def as_fraction(value) -> Fraction:
    """Parse ints, Fractions and ``"p/q"`` strings. Floats are rejected."""
    if isinstance(value, float):
        raise TypeError(f"refusing float {value!r}; use an exact 'p/q' string")
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(value)


def vector(values: Iterable) -> tuple:
    v = tuple(as_fraction(x) for x in values)
    if not v:
        raise ValueError("vectors must have length >= 1")
    return v


def zero_vector(n: int) -> tuple:
    return (Fraction(0),) * n


def unit_vector(n: int, j: int) -> tuple:
    return tuple(Fraction(1) if i == j else Fraction(0) for i in range(n))


def vec_add(u: Sequence[Fraction], v: Sequence[Fraction]) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Sequence[Fraction], v: Sequence[Fraction]) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, v: Sequence[Fraction]) -> tuple:
    return tuple(c * a for a in v)


def is_integral_vector(v: Sequence[Fraction]) -> bool:
    return all(Fraction(x).denominator == 1 for x in v)


# -- norms ------------------------------------------------------------------

def mu(q) -> int:
    """mu(p/q) = |p|*|q| for p/q in lowest terms; mu(0) = 0."""
    q = Fraction(q)
    return abs(q.numerator) * q.denominator


def mu_E(v: Sequence) -> int:
    return sum(mu(x) for x in v)


def one_norm(v: Sequence) -> Fraction:
    return sum((abs(Fraction(x)) for x in v), Fraction(0))


def operator_norm(M: "RationalMatrix") -> Fraction:
    """Norm induced by the 1-norm: the largest column 1-norm."""
    return max(one_norm(col) for col in M.columns())


def mu_E_in_basis(v: Sequence, basis: "RationalMatrix") -> int:
    """mu_E of the coordinates of ``v`` in the basis given by the columns of ``basis``."""
    return mu_E(basis.inverse() @ tuple(v))


# -- matrices ---------------------------------------------------------------

class RationalMatrix:
    """Immutable square matrix over Q."""

    def __init__(self, rows: Iterable[Iterable]):
        rows = tuple(tuple(as_fraction(x) for x in row) for row in rows)
        if not rows or any(len(r) != len(rows) for r in rows):
            raise ValueError("matrix must be square and non-empty")
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("RationalMatrix is immutable")

    # constructors
    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, entries: Sequence) -> "RationalMatrix":
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def scalar(cls, n: int, c) -> "RationalMatrix":
        return cls.diag([c] * n)

    @classmethod
    def companion(cls, coeffs: Sequence[int]) -> "RationalMatrix":
        """Companion matrix of a monic polynomial given by ascending coefficients.

        Columns map e_j -> e_{j+1}; the last column holds -c_0..-c_{d-1}, so
        ``M @ e_1 = e_2`` and the characteristic polynomial is the input.
        """
        c = [Fraction(x) for x in coeffs]
        d = len(c) - 1
        if d < 1:
            raise ValueError("companion matrix needs degree >= 1")
        lead = c[-1]
        rows = [[Fraction(0)] * d for _ in range(d)]
        for i in range(1, d):
            rows[i][i - 1] = Fraction(1)
        for i in range(d):
            rows[i][d - 1] = -c[i] / lead
        return cls(rows)

    @property
    def n(self) -> int:
        return len(self.rows)

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalMatrix) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows)
        return f"RationalMatrix([{body}])"

    def columns(self) -> tuple:
        return tuple(zip(*self.rows))

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(self.columns())

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        return RationalMatrix([vec_add(a, b) for a, b in zip(self.rows, other.rows)])

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        return RationalMatrix([vec_sub(a, b) for a, b in zip(self.rows, other.rows)])

    def __mul__(self, c) -> "RationalMatrix":
        c = as_fraction(c)
        return RationalMatrix([[c * x for x in r] for r in self.rows])

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, RationalMatrix):
            cols = other.columns()
            return RationalMatrix(
                [[sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols] for r in self.rows]
            )
        return tuple(sum((a * b for a, b in zip(r, other)), Fraction(0)) for r in self.rows)

    def __pow__(self, e: int) -> "RationalMatrix":
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        result = RationalMatrix.identity(self.n)
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result

    @cached_property
    def det(self) -> Fraction:
        a = [list(r) for r in self.rows]
        n = self.n
        det = Fraction(1)
        for c in range(n):
            p = next((r for r in range(c, n) if a[r][c] != 0), None)
            if p is None:
                return Fraction(0)
            if p != c:
                a[c], a[p] = a[p], a[c]
                det = -det
            det *= a[c][c]
            for r in range(c + 1, n):
                f = a[r][c] / a[c][c]
                if f:
                    for j in range(c, n):
                        a[r][j] -= f * a[c][j]
        return det

    def is_invertible(self) -> bool:
        return self.det != 0

    @cached_property
    def _inverse(self) -> "RationalMatrix":
        n = self.n
        a = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self.rows)]
        for c in range(n):
            p = next((r for r in range(c, n) if a[r][c] != 0), None)
            if p is None:
                raise ZeroDivisionError("singular matrix")
            a[c], a[p] = a[p], a[c]
            piv = a[c][c]
            a[c] = [x / piv for x in a[c]]
            for r in range(n):
                if r != c and a[r][c] != 0:
                    f = a[r][c]
                    a[r] = [x - f * y for x, y in zip(a[r], a[c])]
        return RationalMatrix([row[n:] for row in a])

    def inverse(self) -> "RationalMatrix":
        return self._inverse

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for r in self.rows for x in r)

    def denominator_lcm(self) -> int:
        return lcm(*(x.denominator for r in self.rows for x in r))

    @cached_property
    def clearing_integer(self) -> int:
        """Least m >= 1 with m*M and m*M^-1 both integral (M invertible)."""
        return lcm(self.denominator_lcm(), self.inverse().denominator_lcm())

    def adjugate(self) -> "RationalMatrix":
        """det(M) * M^-1; integral whenever M is."""
        return self.inverse() * self.det

    def commutes_with(self, other: "RationalMatrix") -> bool:
        return self @ other == other @ self

    def to_strings(self) -> list:
        return [[str(x) for x in r] for r in self.rows]


def solve(M: RationalMatrix, b: Sequence) -> tuple:
    return M.inverse() @ tuple(b)


def nullspace(rows: Sequence[Sequence]) -> list:
    """Basis of the right kernel of a rational matrix (rows need not be square)."""
    a = [[Fraction(x) for x in r] for r in rows]
    if not a:
        return []
    ncols = len(a[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        a[r] = [x / piv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * ncols
        v[fcol] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -a[i][fcol]
        basis.append(tuple(v))
    return basis


def primitive_integer_vector(v: Sequence[Fraction]) -> tuple:
    """Scale a nonzero rational vector to a primitive integer vector."""
    den = lcm(*(Fraction(x).denominator for x in v))
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return tuple(Fraction(x // g) for x in ints) if g else tuple(Fraction(0) for _ in ints)


# -- quasi-equivalence bookkeeping -----------------------------------------

@dataclass(frozen=True)
class QuasiFit:
    """Affine envelope f <= multiplier * g + offset over a sample set."""

    multiplier: Fraction
    offset: Fraction

    def __post_init__(self):
        if self.multiplier < 1 or self.offset < 0:
            raise ValueError("QuasiFit needs multiplier >= 1 and offset >= 0")

    def bound(self, g) -> Fraction:
        return self.multiplier * Fraction(g) + self.offset

    def holds(self, samples) -> bool:
        return all(Fraction(f) <= self.bound(g) for f, g in samples)

    def to_dict(self) -> dict:
        return {"multiplier": str(self.multiplier), "offset": str(self.offset)}


def envelope_fit(samples, multiplier_grid) -> QuasiFit:
    """Pick the grid multiplier with the smallest offset max(f - M*g, 0).

    Ties go to the smaller multiplier.
    """
    samples = [(Fraction(f), Fraction(g)) for f, g in samples]
    grid = sorted(set(Fraction(m) for m in multiplier_grid))
    if grid and grid[0] < 1:
        raise ValueError("multipliers must be >= 1")
    if not samples:
        raise ValueError("envelope_fit needs at least one sample")
    if not grid:
        raise ValueError("envelope_fit needs a non-empty multiplier grid")
    best = None
    for m in grid:
        c = max(max(f - m * g for f, g in samples), Fraction(0))
        if best is None or c < best.offset:
            best = QuasiFit(m, c)
    return best


def log_fraction(x: int) -> Fraction:
    """ln(x) as the exact Fraction of its IEEE double; display and fitting only."""
    from math import log

    return Fraction(log(x))
