from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from metadist.polynomial import (
    IntPolynomial,
    chebyshev_t,
    count_real_roots,
    pdivmod,
    pgcd,
    pmul,
    pxgcd,
    padd,
    squarefree_part,
    trim,
)

polys = st.lists(st.integers(-9, 9), min_size=1, max_size=7).map(lambda c: [F(x) for x in c])


@given(polys, polys.filter(lambda p: any(p)))
def test_division_identity(p, q):
    quo, rem = pdivmod(p, q)
    assert trim(padd(pmul(quo, q), rem)) == trim(p)
    assert len(trim(rem)) < len(trim(q)) or not any(rem)


@given(polys.filter(any), polys.filter(any))
def test_xgcd_identity(p, q):
    g, s, t = pxgcd(p, q)
    assert trim(padd(pmul(s, p), pmul(t, q))) == trim(g)
    assert g == pgcd(p, q)


def test_squarefree_part():
    p = pmul(pmul([F(-1), F(1)], [F(-1), F(1)]), [F(2), F(1)])  # (x-1)^2 (x+2)
    assert squarefree_part(p) == [F(-2), F(1), F(1)]


@pytest.mark.parametrize(
    "coeffs, lo, hi, expected",
    [
        ([-2, 0, 1], -2, 2, 2),  # +-sqrt2
        ([-2, 0, 1], 0, 2, 1),
        ([-1, 1], 1, 2, 0),  # root at the open endpoint is excluded
        ([-1, 0, 1], -1, 1, 0),
        ([0, -1, 0, 1], F(-1, 2), F(1, 2), 1),
        ([1, 0, 1], -10, 10, 0),
    ],
)
def test_count_real_roots(coeffs, lo, hi, expected):
    assert count_real_roots([F(c) for c in coeffs], F(lo), F(hi)) == expected


def test_chebyshev():
    assert chebyshev_t(0) == [1]
    assert chebyshev_t(3) == [0, -3, 0, 4]


def test_int_polynomial_normalization_and_errors():
    p = IntPolynomial((1, -3, 1, 0, 0))
    assert p.degree == 2 and p.is_reciprocal() and p.is_monic()
    assert str(p) == "x^2-3x+1"
    assert IntPolynomial.from_rational([F(1, 2), F(3, 4)]).coeffs == (2, 3)
    with pytest.raises(ValueError):
        IntPolynomial((0, 0))
