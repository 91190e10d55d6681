"""Arithmetic in monogenic number rings Z[theta] = Z[x]/(f).

Elements are coordinate tuples of Fractions in the power basis
1, theta, ..., theta^(n-1). Ring elements are the integral ones.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import floor, gcd
from typing import Optional, Sequence

import sympy

from metadist.exact import RationalMatrix, is_integral_vector, one_norm, operator_norm
from metadist.polynomial import IntPolynomial, pdivmod, pmul, pxgcd, trim

FieldElement = tuple  # tuple[Fraction, ...] of length n
RingElement = tuple  # integral FieldElement


def _ext_gcd(a: int, b: int) -> tuple:
    """(g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


@dataclass(frozen=True)
class RingSpec:
    f: IntPolynomial
    witnesses: tuple = field(default=(), compare=False)

    def __post_init__(self):
        if not isinstance(self.f, IntPolynomial):
            object.__setattr__(self, "f", IntPolynomial(tuple(self.f)))
        if not self.f.is_monic():
            raise ValueError(f"defining polynomial {self.f} is not monic")
        if self.f.degree < 1:
            raise ValueError("defining polynomial must have degree >= 1")
        x = sympy.Symbol("x")
        if not sympy.Poly(list(reversed(self.f.coeffs)), x).is_irreducible:
            raise ValueError(f"defining polynomial {self.f} is reducible")

    @property
    def n(self) -> int:
        return self.f.degree

    def reduce(self, poly: Sequence) -> tuple:
        r = pdivmod(trim(poly), self.f.as_rational())[1]
        return tuple(r[i] if i < len(r) else Fraction(0) for i in range(self.n))

    @cached_property
    def structure(self) -> tuple:
        """D[l][i][j] = l-th coordinate of theta^i * theta^j."""
        n = self.n
        prods = {}
        for s in range(2 * n - 1):
            prods[s] = self.reduce([0] * s + [1])
        return tuple(
            RationalMatrix([[prods[i + j][l] for j in range(n)] for i in range(n)]) for l in range(n)
        )

    @cached_property
    def C1(self) -> Fraction:
        return sum((operator_norm(D.transpose()) for D in self.structure), Fraction(0))

    def one(self) -> FieldElement:
        return self.scalar(1)

    def zero(self) -> FieldElement:
        return self.scalar(0)

    def scalar(self, c) -> FieldElement:
        return (Fraction(c),) + (Fraction(0),) * (self.n - 1)

    def element(self, coords: Sequence) -> FieldElement:
        if len(coords) != self.n:
            raise ValueError(f"expected {self.n} coordinates")
        return tuple(Fraction(c) for c in coords)

    def theta(self) -> FieldElement:
        if self.n == 1:
            return self.scalar(-self.f.coeffs[0])
        return tuple(Fraction(int(i == 1)) for i in range(self.n))

    # arithmetic
    def mul(self, a: FieldElement, b: FieldElement) -> FieldElement:
        n = self.n
        out = []
        for D in self.structure:
            acc = Fraction(0)
            for i in range(n):
                if a[i]:
                    row = D.rows[i]
                    acc += a[i] * sum((row[j] * b[j] for j in range(n) if b[j]), Fraction(0))
            out.append(acc)
        return tuple(out)

    def add(self, a, b) -> FieldElement:
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b) -> FieldElement:
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a) -> FieldElement:
        return tuple(-x for x in a)

    def scale(self, c, a) -> FieldElement:
        c = Fraction(c)
        return tuple(c * x for x in a)

    def pow(self, a, e: int) -> FieldElement:
        base = a if e >= 0 else self.inverse(a)
        out = self.one()
        for _ in range(abs(e)):
            out = self.mul(out, base)
        return out

    def inverse(self, a: FieldElement) -> FieldElement:
        if not any(a):
            raise ZeroDivisionError("zero has no inverse")
        g, s, _ = pxgcd(list(a), self.f.as_rational())
        assert g == [Fraction(1)]
        return self.reduce(s)

    def mult_matrix(self, a: FieldElement) -> RationalMatrix:
        """Matrix of v -> a*v in the power basis (column j is a*theta^j)."""
        n = self.n
        cols = [self.mul(a, tuple(Fraction(int(i == j)) for i in range(n))) for j in range(n)]
        return RationalMatrix([[cols[j][i] for j in range(n)] for i in range(n)])

    def norm(self, a: FieldElement) -> Fraction:
        return self.mult_matrix(a).det

    def is_integral(self, a: FieldElement) -> bool:
        return is_integral_vector(a)

    def to_dict(self) -> dict:
        return {"polynomial": list(self.f.coeffs)}


def ring_mul(a, b, spec: RingSpec) -> FieldElement:
    return spec.mul(a, b)


def field_inverse(a, spec: RingSpec) -> FieldElement:
    return spec.inverse(a)


def field_norm(a, spec: RingSpec) -> Fraction:
    return spec.norm(a)


def c1_constant(spec: RingSpec) -> Fraction:
    return spec.C1


def elt_norm(a) -> Fraction:
    """The 1-norm of the coordinate vector."""
    return one_norm(a)


def _round_half_toward_zero(x: Fraction) -> int:
    fl = floor(x)
    frac = x - fl
    if frac < Fraction(1, 2):
        return fl
    if frac > Fraction(1, 2):
        return fl + 1
    return fl if x > 0 else fl + 1


def nearest_lattice(z: FieldElement, spec: Optional[RingSpec] = None) -> RingElement:
    """Coordinate-wise nearest integers, ties toward zero; |z - w| <= n/2."""
    return tuple(Fraction(_round_half_toward_zero(Fraction(c))) for c in z)


def coprimality_witness(x: RingElement, y: RingElement, spec: RingSpec) -> Optional[tuple]:
    """(u, v) with u*x + v*y = 1 built from coprime norms, else None.

    Coprime norms suffice but are not necessary: coprime ideals with a common
    norm prime (e.g. 3 + sqrt2, 3 - sqrt2) get None and need a supplied witness.
    """
    if not any(x) or not any(y):
        raise ValueError("x and y must be nonzero")
    Nx, Ny = spec.norm(x), spec.norm(y)
    assert Nx.denominator == 1 and Ny.denominator == 1, "x, y must be ring elements"
    g, alpha, beta = _ext_gcd(int(Nx), int(Ny))
    if g != 1:
        return None
    # N(x)/x is the adjugate applied to 1, an element of the ring
    x_co = spec.scale(Nx, spec.inverse(x))
    y_co = spec.scale(Ny, spec.inverse(y))
    u = spec.scale(alpha, x_co)
    v = spec.scale(beta, y_co)
    if spec.add(spec.mul(u, x), spec.mul(v, y)) != spec.one():
        raise AssertionError("witness construction failed")
    return u, v


def verify_witness(x, y, u, v, spec: RingSpec) -> bool:
    return (
        spec.is_integral(u)
        and spec.is_integral(v)
        and spec.add(spec.mul(u, x), spec.mul(v, y)) == spec.one()
    )
