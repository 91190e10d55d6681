from fractions import Fraction as F

import mpmath
import pytest

from metadist.exact import RationalMatrix
from metadist.group import GroupSpec
from metadist.polynomial import IntPolynomial
from metadist.spectral import (
    characteristic_polynomial,
    factor_over_q,
    find_hyperbolic_element,
    has_modulus_one_root,
    invariant_lattice_witness,
    is_semisimple,
    minimal_polynomial,
    spectral_report,
    splitting_projectors,
)

CAT = RationalMatrix.companion([1, -3, 1])
GOLDEN = RationalMatrix.companion([-1, -1, 1])
ROT6 = RationalMatrix.companion([1, -1, 1])


@pytest.mark.parametrize(
    "M, coeffs",
    [
        (RationalMatrix.identity(2), (-1, 1)),
        (CAT, (1, -3, 1)),
        (RationalMatrix.diag([2, 2]), (-2, 1)),
        (RationalMatrix([[F(1, 2), 1], [0, F(1, 2)]]), (1, -4, 4)),
    ],
)
def test_minimal_polynomial(M, coeffs):
    assert minimal_polynomial(M).coeffs == coeffs


def test_minimal_divides_characteristic():
    M = RationalMatrix([[2, 1, 0], [0, 2, 0], [0, 0, 3]])
    from metadist.polynomial import pdivmod

    _, r = pdivmod(characteristic_polynomial(M), minimal_polynomial(M).as_rational())
    assert not any(r)


@pytest.mark.parametrize(
    "M, expected",
    [
        (RationalMatrix.diag([2, 3]), True),
        (RationalMatrix([[2, 1], [0, 2]]), False),
        (RationalMatrix.companion([2, -3, 1]), True),
    ],
)
def test_is_semisimple(M, expected):
    assert is_semisimple(M) is expected


@pytest.mark.parametrize(
    "coeffs, expected",
    [
        ((1, -1, 1), True),
        ((1, -3, 1), False),
        ((-2, 1), False),
        ((-1, 1), True),
        ((1, 1), True),
        ((5, -6, 5), True),  # reciprocal, non-monic, roots (3 +- 4i)/5
        ((1, 0, -1, 0, 1), True),  # cyclotomic 12
        ((0, 0, 1, -3, 1), False),  # x^2 (x^2 - 3x + 1)
        ((2, 0, 0, 1), False),
    ],
)
def test_has_modulus_one_root(coeffs, expected):
    flag, witness = has_modulus_one_root(IntPolynomial(coeffs))
    assert flag is expected
    assert (witness is not None) is expected


def test_witness_is_irreducible_factor():
    flag, w = has_modulus_one_root(IntPolynomial((-1,) + (0,) * 11 + (1,)))
    assert flag and w.coeffs == (-1, 1)
    p = IntPolynomial((1, -3, 1))
    q = IntPolynomial((1, 1, 1))
    from metadist.polynomial import pmul

    prod = IntPolynomial.from_rational(pmul(p.as_rational(), q.as_rational()))
    flag, w = has_modulus_one_root(prod)
    assert flag and w == q


def test_zero_polynomial_rejected():
    with pytest.raises(ValueError):
        has_modulus_one_root(IntPolynomial((0,)))


def test_kronecker_necessity_on_small_polynomials():
    """Flagged irreducible polynomials are x +- 1 or reciprocal of even degree."""
    import itertools

    for d in range(1, 5):
        for coeffs in itertools.product(range(-2, 3), repeat=d):
            p = IntPolynomial(coeffs + (1,))
            for f in factor_over_q(p):
                flag, _ = has_modulus_one_root(f)
                if flag:
                    assert f.coeffs in ((-1, 1), (1, 1)) or (f.degree % 2 == 0 and f.is_reciprocal())


def test_invariant_lattice_witness_rotation():
    vs = invariant_lattice_witness(ROT6, IntPolynomial((1, -1, 1)), (1, 0))
    assert vs == [(1, 0), (0, 1)]


def test_invariant_lattice_witness_phi12():
    M = RationalMatrix.companion([1, 0, -1, 0, 1])
    vs = invariant_lattice_witness(M, IntPolynomial((1, 0, -1, 0, 1)), (1, 0, 0, 0))
    assert len(vs) == 4


def test_invariant_lattice_witness_errors():
    with pytest.raises(ValueError):
        invariant_lattice_witness(CAT, IntPolynomial((2, 1)))
    with pytest.raises(ValueError):
        invariant_lattice_witness(ROT6, IntPolynomial((1, 0, 1)))


def test_find_hyperbolic_element():
    assert find_hyperbolic_element(GroupSpec(([[2]],)), 3) == (1,)
    assert find_hyperbolic_element(GroupSpec(([[2, 0], [0, 3]], [[3, 0], [0, 2]])), 3) == (1, 0)
    rot = GroupSpec((ROT6,))
    for bound in range(1, 6):
        assert find_hyperbolic_element(rot, bound) is None


def test_spectral_report_counts():
    r = spectral_report(CAT)
    assert (r.is_semisimple, r.has_modulus_one, r.expanding, r.contracting) == (True, False, 1, 1)
    assert spectral_report(ROT6).has_modulus_one


def test_projectors_diagonal_exact():
    P = splitting_projectors(RationalMatrix.diag([2, F(1, 2)]), 30)
    assert mpmath.norm(P.expanding - mpmath.matrix([[1, 0], [0, 0]])) < mpmath.mpf(10) ** -28
    assert mpmath.norm(P.contracting - mpmath.matrix([[0, 0], [0, 1]])) < mpmath.mpf(10) ** -28


@pytest.mark.parametrize("M", [CAT, GOLDEN])
def test_projector_residuals_and_monotone_bound(M):
    bounds = []
    for digits in (20, 40, 80):
        P = splitting_projectors(M, digits)
        assert all(v <= P.error_bound for v in P.residuals.values())
        assert P.error_bound <= mpmath.mpf(10) ** (2 - digits) * (1 + mpmath.mpf(10) ** -9)
        bounds.append(P.error_bound)
    assert bounds == sorted(bounds, reverse=True)


def test_projectors_reject_circle():
    with pytest.raises(ValueError):
        splitting_projectors(ROT6, 30)
