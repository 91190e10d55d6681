"""Exact spectral analysis of rational matrices.

Every decision here (semisimplicity, roots on the unit circle, lattice
invariance) is made in exact arithmetic. Floating point appears only in
:func:`splitting_projectors`, whose output is always re-checked exactly by
the callers in :mod:`metadist.shortwords`.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import mpmath
import sympy

from metadist.exact import RationalMatrix, is_integral_vector, nullspace, primitive_integer_vector
from metadist.polynomial import (
    IntPolynomial,
    chebyshev_t,
    count_real_roots,
    degree,
    derivative,
    monic,
    padd,
    pdivmod,
    peval,
    pgcd,
    pscale,
    reversal,
    squarefree_part,
    trim,
)


# -- polynomials of matrices -------------------------------------------------

def minimal_polynomial(M: RationalMatrix) -> IntPolynomial:
    """Primitive integer multiple of the monic minimal polynomial of M."""
    n = M.n
    powers = [RationalMatrix.identity(n)]
    while True:
        d = len(powers) - 1
        # columns: flattened M^0..M^d; first kernel vector gives the relation
        cols = [tuple(x for row in P.rows for x in row) for P in powers]
        rows = [tuple(c[i] for c in cols) for i in range(n * n)]
        kernel = nullspace(rows)
        if kernel:
            rel = kernel[0]
            return IntPolynomial.from_rational(list(rel))
        if d >= n:  # Cayley-Hamilton guarantees a relation by degree n
            raise AssertionError("no annihilating polynomial found")
        powers.append(powers[-1] @ M)


def characteristic_polynomial(M: RationalMatrix) -> list:
    """det(x*I - M) as a monic rational coefficient list (Faddeev-LeVerrier)."""
    n = M.n
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    Mk = RationalMatrix.identity(n)
    c = Fraction(1)
    for k in range(1, n + 1):
        AM = M @ Mk
        c = -sum(AM.rows[i][i] for i in range(n)) / k
        coeffs[n - k] = c
        Mk = AM + RationalMatrix.scalar(n, c)
    return coeffs


def poly_of_matrix(p: Sequence, M: RationalMatrix) -> RationalMatrix:
    n = M.n
    acc = RationalMatrix.scalar(n, 0)
    for c in reversed(list(p)):
        acc = acc @ M + RationalMatrix.scalar(n, c)
    return acc


def is_semisimple(M: RationalMatrix) -> bool:
    p = minimal_polynomial(M).as_rational()
    return degree(pgcd(p, derivative(p))) == 0


def factor_over_q(p: IntPolynomial) -> list:
    """Irreducible factors over Q as primitive IntPolynomials (multiplicity dropped)."""
    x = sympy.Symbol("x")
    expr = sum(sympy.Integer(c) * x**i for i, c in enumerate(p.coeffs))
    _, factors = sympy.factor_list(expr, x)
    out = []
    for f, _mult in factors:
        coeffs = [int(c) for c in reversed(sympy.Poly(f, x).all_coeffs())]
        out.append(IntPolynomial(tuple(coeffs)))
    return out


# -- unit circle detection ---------------------------------------------------

def _reciprocal_to_cosine_poly(r: list) -> list:
    """For reciprocal r of degree 2k, the h with x^-k r(x) = h((x + 1/x)/2).

    x^j + x^-j = 2 T_j(y) with y = (x + 1/x)/2, so h = c_k + sum 2 c_{k+j} T_j.
    """
    k = degree(r) // 2
    h = [r[k]]
    for j in range(1, k + 1):
        h = padd(h, pscale(2 * r[k + j], chebyshev_t(j)))
    return trim(h)


def _circle_roots_in_reciprocal(r: list) -> bool:
    h = _reciprocal_to_cosine_poly(r)
    return count_real_roots(h, -1, 1) > 0


def has_modulus_one_root(p: IntPolynomial) -> tuple:
    """Decide exactly whether p has a complex root of modulus 1.

    Returns ``(flag, witness)`` where the witness is an irreducible factor of p
    carrying such a root (or the squarefree reciprocal part when factoring is
    skipped), else ``None``.
    """
    if not isinstance(p, IntPolynomial):
        p = IntPolynomial(tuple(p))
    q = p.as_rational()
    while q[0] == 0:  # roots at 0 are irrelevant
        q = q[1:]
    if peval(q, Fraction(1)) == 0:
        return True, IntPolynomial((-1, 1))
    if peval(q, Fraction(-1)) == 0:
        return True, IntPolynomial((1, 1))
    # |l| = 1 implies 1/l = conj(l) is a root too, so l divides the reversal
    g = pgcd(q, reversal(q))
    if degree(g) < 1:
        return False, None
    r = squarefree_part(g)
    if degree(r) % 2 or monic(reversal(r)) != r:
        # no +-1 roots and closed under inversion forces even, reciprocal r
        raise AssertionError(f"gcd with reversal is not reciprocal: {r}")
    if not _circle_roots_in_reciprocal(r):
        return False, None
    try:
        factors = factor_over_q(IntPolynomial.from_rational(r))
    except Exception:  # pragma: no cover - documented fallback
        return True, IntPolynomial.from_rational(r)
    for f in factors:
        if f.degree >= 2 and _circle_roots_in_reciprocal(f.as_rational()):
            return True, f
    raise AssertionError("circle root detected but no factor carries it")


# -- reports -------------------------------------------------------------------

@dataclass(frozen=True)
class SpectralReport:
    minimal_polynomial: IntPolynomial
    is_semisimple: bool
    has_modulus_one: bool
    reciprocal_factors: tuple
    expanding: int
    contracting: int
    modulus_one_witness: Optional[IntPolynomial] = None

    def to_dict(self) -> dict:
        return {
            "minimal_polynomial": list(self.minimal_polynomial.coeffs),
            "is_semisimple": self.is_semisimple,
            "has_modulus_one": self.has_modulus_one,
            "reciprocal_factors": [list(f.coeffs) for f in self.reciprocal_factors],
            "expanding": self.expanding,
            "contracting": self.contracting,
            "modulus_one_witness": None
            if self.modulus_one_witness is None
            else list(self.modulus_one_witness.coeffs),
        }


def spectral_report(M: RationalMatrix) -> SpectralReport:
    """Summary of the action of M.

    The expanding/contracting counts come from 50-digit numeric roots of the
    characteristic polynomial; they are reported only, never used to decide.
    """
    p = minimal_polynomial(M)
    flag, witness = has_modulus_one_root(p)
    recips = tuple(f for f in factor_over_q(p) if f.is_reciprocal() or f.reversal() == IntPolynomial(tuple(-c for c in f.coeffs)))
    expanding = contracting = 0
    with mpmath.workdps(50):
        char = characteristic_polynomial(M)
        roots = mpmath.polyroots([mpmath.mpf(c.numerator) / c.denominator for c in reversed(char)], maxsteps=200, extraprec=200)
        for z in roots:
            a = abs(z)
            if a > 1 + mpmath.mpf(10) ** -30:
                expanding += 1
            elif a < 1 - mpmath.mpf(10) ** -30:
                contracting += 1
    return SpectralReport(p, is_semisimple(M), flag, recips, expanding, contracting, witness)


# -- invariant lattices ----------------------------------------------------------

def coordinates_in(basis: Sequence[tuple], target: tuple) -> Optional[tuple]:
    """Exact coordinates of ``target`` in the span of ``basis`` (None if outside)."""
    d = len(basis)
    n = len(target)
    rows = [[basis[j][i] for j in range(d)] + [-target[i]] for i in range(n)]
    ker = [v for v in nullspace(rows) if v[-1] != 0]
    if not ker:
        return None
    v = ker[0]
    return tuple(x / v[-1] for x in v[:-1])


def invariant_lattice_witness(M: RationalMatrix, q: IntPolynomial, b: Optional[Sequence] = None) -> list:
    """Vectors b, Mb, ..., M^(d-1) b spanning a lattice invariant under M and M^-1.

    ``q`` must be a reciprocal factor of the minimal polynomial of M with
    leading coefficient 1; ``b`` defaults to a primitive kernel vector of q(M).
    """
    if not q.is_reciprocal():
        raise ValueError(f"{q} is not reciprocal")
    if q.leading != 1:
        raise ValueError(f"{q} is not monic; its root span carries no invariant lattice")
    p = minimal_polynomial(M).as_rational()
    if pdivmod(p, q.as_rational())[1]:
        raise ValueError(f"{q} does not divide the minimal polynomial of M")
    qM = poly_of_matrix(q.as_rational(), M)
    if b is None:
        ker = nullspace(qM.rows)
        b = primitive_integer_vector(ker[0])
    b = tuple(Fraction(x) for x in b)
    if any(x != 0 for x in qM @ b):
        raise ValueError("b is not annihilated by q(M)")
    vecs = [b]
    for _ in range(q.degree - 1):
        vecs.append(M @ vecs[-1])
    if len(nullspace([tuple(v[i] for v in vecs) for i in range(M.n)])) > 0:
        raise ValueError("b, Mb, ... are linearly dependent; choose another b")
    Minv = M.inverse()
    for v in vecs:
        for image in (M @ v, Minv @ v):
            coords = coordinates_in(vecs, image)
            if coords is None or not is_integral_vector(coords):
                raise AssertionError("lattice is not invariant; check inputs")
    return vecs


# -- hyperbolic search -------------------------------------------------------------

def _shell(k: int, s: int):
    pts = [e for e in itertools.product(range(-s, s + 1), repeat=k) if max(map(abs, e)) == s]
    # smaller 1-norm first, then descending lexicographic so (1, 0) precedes (-1, 0)
    return sorted(pts, key=lambda e: (sum(map(abs, e)), tuple(-x for x in e)))


def action_power(actions: Sequence[RationalMatrix], e: Sequence[int]) -> RationalMatrix:
    n = actions[0].n
    out = RationalMatrix.identity(n)
    for M, x in zip(actions, e):
        if x:
            out = out @ (M ** x)
    return out


def find_hyperbolic_element(spec, exponent_bound: int) -> Optional[tuple]:
    """Smallest e (in shell order) whose action M^e has no modulus-1 eigenvalue."""
    if exponent_bound < 1:
        raise ValueError("exponent_bound must be >= 1")
    for s in range(1, exponent_bound + 1):
        for e in _shell(spec.k, s):
            Me = action_power(spec.actions, e)
            flag, _ = has_modulus_one_root(minimal_polynomial(Me))
            if not flag:
                return e
    return None


# -- numeric splitting --------------------------------------------------------------

@dataclass
class Projectors:
    """Approximate projectors onto the expanding and contracting subspaces."""

    expanding: mpmath.matrix
    contracting: mpmath.matrix
    error_bound: mpmath.mpf
    digits: int
    residuals: dict = field(default_factory=dict)


def _mp_matrix(M: RationalMatrix) -> mpmath.matrix:
    return mpmath.matrix([[mpmath.mpf(x.numerator) / x.denominator for x in row] for row in M.rows])


def _max_abs(A: mpmath.matrix) -> mpmath.mpf:
    # induced 1-norm: largest column sum
    return max(sum(abs(A[i, j]) for i in range(A.rows)) for j in range(A.cols))


def splitting_projectors(M: RationalMatrix, precision: int) -> Projectors:
    """Projectors for R^n = U + V, U expanding (|l| > 1), V contracting (|l| < 1).

    ``precision`` is in decimal digits. The returned bound dominates the
    residuals |P_U + P_V - I|, |P_U^2 - P_U| and |M P_U - P_U M|.
    """
    flag, _ = has_modulus_one_root(minimal_polynomial(M))
    if flag:
        raise ValueError("matrix has an eigenvalue of modulus 1")
    n = M.n
    with mpmath.workdps(precision + 10):
        A = _mp_matrix(M)
        evals, evecs = mpmath.eig(A)
        inv = mpmath.inverse(evecs)
        sel_u = mpmath.diag([1 if abs(l) > 1 else 0 for l in evals])
        sel_v = mpmath.diag([1 if abs(l) < 1 else 0 for l in evals])
        PU = evecs * sel_u * inv
        PV = evecs * sel_v * inv
        PU = mpmath.matrix([[mpmath.re(PU[i, j]) for j in range(n)] for i in range(n)])
        PV = mpmath.matrix([[mpmath.re(PV[i, j]) for j in range(n)] for i in range(n)])
        eye = mpmath.eye(n)
        residuals = {
            "sum": _max_abs(PU + PV - eye),
            "idempotent": _max_abs(PU * PU - PU),
            "commute": _max_abs(A * PU - PU * A),
        }
        worst = max(residuals.values())
        bound = max(mpmath.mpf(10) ** (2 - precision), 10 * worst)
    return Projectors(PU, PV, bound, precision, residuals)
