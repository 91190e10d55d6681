"""Univariate polynomials over Z and Q.

Rational polynomials are lists of Fractions in ascending degree with no
trailing zeros (the zero polynomial is ``[]``). :class:`IntPolynomial` is the
public integer type.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence


# -- rational coefficient lists --------------------------------------------

def trim(p: Sequence) -> list:
    p = [Fraction(c) for c in p]
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p: Sequence) -> int:
    return len(p) - 1 if p else -1


def padd(p, q) -> list:
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def psub(p, q) -> list:
    return padd(p, [-c for c in q])


def pscale(c, p) -> list:
    return trim([c * x for x in p])


def pmul(p, q) -> list:
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def ppow(p, e: int) -> list:
    out = [Fraction(1)]
    for _ in range(e):
        out = pmul(out, p)
    return out


def pdivmod(p, q) -> tuple:
    p, q = trim(p), trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    quo = [Fraction(0)] * max(len(p) - len(q) + 1, 0)
    lead = q[-1]
    while len(r) >= len(q) and r:
        c = r[-1] / lead
        shift = len(r) - len(q)
        quo[shift] = c
        for i, b in enumerate(q):
            r[shift + i] -= c * b
        r = trim(r)
    return trim(quo), r


def pmod(p, q) -> list:
    return pdivmod(p, q)[1]


def monic(p) -> list:
    p = trim(p)
    return [c / p[-1] for c in p] if p else []


def pgcd(p, q) -> list:
    """Monic gcd over Q."""
    a, b = trim(p), trim(q)
    while b:
        a, b = b, pmod(a, b)
    return monic(a)


def pxgcd(p, q) -> tuple:
    """(g, s, t) with s*p + t*q = g monic."""
    r0, r1 = trim(p), trim(q)
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]
    while r1:
        quo, rem = pdivmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, psub(s0, pmul(quo, s1))
        t0, t1 = t1, psub(t0, pmul(quo, t1))
    lead = r0[-1]
    return monic(r0), pscale(1 / lead, s0), pscale(1 / lead, t0)


def derivative(p) -> list:
    return trim([i * c for i, c in enumerate(p)][1:])


def peval(p, x):
    acc = Fraction(0) if not isinstance(x, complex) else 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def reversal(p) -> list:
    """x^deg(p) * p(1/x)."""
    return trim(list(reversed(trim(p))))


def squarefree_part(p) -> list:
    p = trim(p)
    if degree(p) < 1:
        return monic(p)
    g = pgcd(p, derivative(p))
    return monic(pdivmod(p, g)[0])


def primitive_integer(p) -> list:
    """Clear denominators and content; leading coefficient made positive."""
    p = trim(p)
    if not p:
        return []
    den = lcm(*(c.denominator for c in p))
    ints = [int(c * den) for c in p]
    g = 0
    for c in ints:
        g = gcd(g, c)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def sturm_sequence(p) -> list:
    p = trim(p)
    seq = [p, derivative(p)]
    while seq[-1]:
        r = pmod(seq[-2], seq[-1])
        if not r:
            break
        seq.append(pscale(-1, r))
    return [s for s in seq if s]


def _sign_changes(values) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(p, lo, hi) -> int:
    """Number of distinct real roots of p in the open interval (lo, hi)."""
    p = trim(p)
    lo, hi = Fraction(lo), Fraction(hi)
    # Endpoints are rational: strip (x - lo), (x - hi) factors so Sturm's
    # theorem applies with nonvanishing endpoint values.
    for c in (lo, hi):
        while degree(p) >= 1 and peval(p, c) == 0:
            p = pdivmod(p, [-c, Fraction(1)])[0]
    if degree(p) < 1 or lo >= hi:
        return 0
    seq = sturm_sequence(p)
    return _sign_changes([peval(s, lo) for s in seq]) - _sign_changes([peval(s, hi) for s in seq])


def chebyshev_t(j: int) -> list:
    """Chebyshev polynomial T_j as a rational coefficient list."""
    t0, t1 = [Fraction(1)], [Fraction(0), Fraction(1)]
    if j == 0:
        return t0
    for _ in range(j - 1):
        t0, t1 = t1, psub(pmul([Fraction(0), Fraction(2)], t1), t0)
    return t1


# -- integer polynomials ----------------------------------------------------

@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, coefficients in ascending degree."""

    coeffs: tuple

    def __post_init__(self):
        c = [int(x) for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        if not c:
            raise ValueError("IntPolynomial must be nonzero (leading coefficient != 0)")
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def from_rational(cls, p) -> "IntPolynomial":
        return cls(tuple(primitive_integer(p)))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    @property
    def leading(self) -> int:
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return self.leading == 1

    def as_rational(self) -> list:
        return [Fraction(c) for c in self.coeffs]

    def reversal(self) -> "IntPolynomial":
        return IntPolynomial(tuple(reversed(self.coeffs)))

    def is_reciprocal(self) -> bool:
        """q(x) == x^deg q(1/x)."""
        return self.coeffs == tuple(reversed(self.coeffs))

    def __call__(self, x):
        return peval(self.as_rational(), x)

    def __str__(self) -> str:
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and abs(c) == 1:
                coef = "-" if c < 0 else "+"
            else:
                coef = f"{'-' if c < 0 else '+'}{abs(c)}"
            terms.append(coef + mono)
        s = "".join(terms)
        return s[1:] if s.startswith("+") else s
