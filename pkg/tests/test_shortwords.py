import random
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from metadist.exact import RationalMatrix, mu_E, one_norm
from metadist.group import GroupSpec, b_element, evaluate_element, format_word, rank1_spec
from metadist.numring import RingSpec, elt_norm
from metadist.polynomial import IntPolynomial
from metadist.shortwords import (
    PrecisionCapExceeded,
    bound_constants,
    bounded_bezout,
    check_bound_inequalities,
    digits_to_word,
    lambda_adic_batch,
    lambda_adic_digits,
    lattice_digits,
    lattice_digits_to_word,
    max_power_below,
    minimal_sk,
    proven_digit_bounds,
    rank1_decompose,
    rank1_short_word,
    ring_bezout_power,
    ring_bounded_bezout,
    ring_group_spec,
    ring_short_word,
)

BS12 = rank1_spec(2)
L32 = rank1_spec(F(3, 2))
L23 = rank1_spec(F(2, 3))
CAT = RationalMatrix.companion([1, -3, 1])
GOLDEN = RationalMatrix.companion([-1, -1, 1])
ZSQRT2 = RingSpec(IntPolynomial((-2, 0, 1)))
X, Y = (F(3), F(1)), (F(3), F(-1))
WITNESS = ((F(-3), F(3)), (F(0), F(-2)))


# -- lambda-adic digits -------------------------------------------------------

@pytest.mark.parametrize("m, x, y, digits", [(5, 3, 2, (2, 2)), (0, 3, 2, (0,)), (6, 2, 1, (0, 1, 1))])
def test_lambda_adic_examples(m, x, y, digits):
    d = lambda_adic_digits(m, x, y)
    assert d.digits == digits and d.value() == m


def test_lambda_adic_errors():
    with pytest.raises(ValueError):
        lambda_adic_digits(5, 2, 3)
    with pytest.raises(ValueError):
        lambda_adic_digits(5, 4, 2)


def test_digits_to_word_examples():
    w = digits_to_word(lambda_adic_digits(5, 3, 2))
    assert format_word(w, L32) == "a^2 t^-1 a^2 t"
    assert evaluate_element(w, L32) == b_element(L32, [5])
    assert len(digits_to_word(lambda_adic_digits(0, 3, 2))) == 0
    w = digits_to_word(lambda_adic_digits(2**10, 2, 1))
    assert len(w) <= 41 and evaluate_element(w, BS12) == b_element(BS12, [1024])


@pytest.mark.parametrize("spec, x, y", [(BS12, 2, 1), (L32, 3, 2), (rank1_spec(F(5, 3)), 5, 3)])
@given(m=st.integers(-10**9, 10**9))
def test_lambda_adic_word_bound(spec, x, y, m):
    d = lambda_adic_digits(m, x, y)
    assert d.value() == m
    assert all(0 <= c < x for c in d.digits) and (d.s == 0 or d.digits[-1] != 0)
    w = digits_to_word(d)
    assert evaluate_element(w, spec) == b_element(spec, [m])
    s = 0
    while m and x ** (s + 1) <= abs(m) * y ** (s + 1):
        s += 1
    assert d.s <= s
    assert len(w) < s * (2 + x) + x


def test_batch_matches_scalar():
    values = np.arange(-3000, 3001)
    for x, y in ((2, 1), (3, 2), (7, 4)):
        batch = lambda_adic_batch(values, x, y)
        assert batch.reconstructs(x, y)
        for i in range(0, len(values), 97):
            d = lambda_adic_digits(int(values[i]), x, y)
            assert tuple(batch.digits[i, : d.s + 1]) == d.digits and batch.top[i] == d.s
        nz = values[values != 0]
        s = max_power_below(nz, x, y)
        for v, sv in zip(nz[::101], s[::101]):
            v = abs(int(v))
            assert x**sv <= v * y**sv and x ** (sv + 1) > v * y ** (sv + 1)


# -- Bezout and the four-term split ---------------------------------------------

@pytest.mark.parametrize("x1, y1, d, out", [(3, 5, 1, (-3, 2)), (1, 7, 4, (4, 0)), (2, 3, 0, (0, 0))])
def test_bounded_bezout_examples(x1, y1, d, out):
    assert bounded_bezout(x1, y1, d) == out


def test_bounded_bezout_rejects_common_factor():
    with pytest.raises(ValueError):
        bounded_bezout(4, 6, 1)


@given(st.integers(-200, 200).filter(bool), st.integers(-200, 200).filter(bool), st.integers(-10**6, 10**6))
def test_bounded_bezout_bounds(x1, y1, d):
    from math import gcd

    if gcd(x1, y1) != 1:
        return
    a, c = bounded_bezout(x1, y1, d)
    assert x1 * a + y1 * c == d
    assert max(abs(a), abs(c)) <= abs(d) * abs(x1) * abs(y1)
    a1, c1 = bounded_bezout(x1, y1, 1)
    assert abs(a1) <= abs(y1) and 0 <= c1 < abs(x1)


@pytest.mark.parametrize("b, out", [(F(5, 6), (1, 1, 5)), (F(7), (0, 0, 7)), (F(1, 2), (0, 1, 1)), (F(4, 9), (2, 0, 4))])
def test_minimal_sk(b, out):
    assert minimal_sk(b, 3, 2) == out


def test_minimal_sk_rejects_foreign_primes():
    with pytest.raises(ValueError):
        minimal_sk(F(1, 5), 3, 2)


def test_rank1_decompose_examples():
    dec = rank1_decompose(F(5, 6), 3, 2)
    assert (dec.s, dec.k, dec.d) == (1, 1, 5)
    assert dec.value() == F(5, 6) and dec.bounds_hold()
    dec = rank1_decompose(F(7), 3, 2)
    assert (dec.s, dec.k, dec.r1, dec.r2) == (0, 0, 0, 0) and dec.c1 + dec.c2 == 7
    dec = rank1_decompose(F(1, 2), 3, 2)
    assert (dec.s, dec.k, dec.d) == (0, 1, 1) and dec.value() == F(1, 2)


@st.composite
def z_lambda(draw, x, y):
    s, k = draw(st.integers(0, 8)), draw(st.integers(0, 8))
    return F(draw(st.integers(-10**5, 10**5)), x**s * y**k)


@pytest.mark.parametrize("spec, x, y", [(BS12, 2, 1), (L32, 3, 2), (L23, 3, 2)])
@given(data=st.data())
def test_rank1_short_word_round_trip(spec, x, y, data):
    b = data.draw(z_lambda(x, y))
    dec = rank1_decompose(b, x, y)
    assert dec.value() == b and dec.bounds_hold()
    syn = rank1_short_word(b, spec)
    assert evaluate_element(syn.word, spec) == b_element(spec, [b])
    assert len(syn.word) <= syn.bound


def test_rank1_short_word_examples():
    syn = rank1_short_word(F(5, 6), L32)
    assert evaluate_element(syn.word, L32) == b_element(L32, [F(5, 6)])
    assert format_word(rank1_short_word(F(1), L32).word, L32) == "a"
    assert len(rank1_short_word(F(2**10), BS12).word) <= 41
    with pytest.raises(ValueError):
        rank1_short_word(F(1, 5), L32)
    with pytest.raises(ValueError):
        rank1_short_word(F(1), rank1_spec(F(-2)))


# -- lattice digits ---------------------------------------------------------------

def test_lattice_digits_scalar():
    M = RationalMatrix([[2]])
    d = lattice_digits((F(8),), M)
    assert d.value(M) == (8,)
    # lattice 2Z (m clears M^-1 too), so 8 = M^2 * 2 needs two digit slots
    assert d.m == 2 and d.r == ((F(0),), (F(2),)) and d.p == (F(0),)
    syn = lattice_digits_to_word(d, rank1_spec(2))
    assert evaluate_element(syn.word, rank1_spec(2)) == b_element(rank1_spec(2), [8])


def test_lattice_digits_zero():
    d = lattice_digits((F(0), F(0)), CAT)
    assert (d.k, d.l, d.p) == (0, 0, (0, 0))


def test_lattice_digits_cat_example():
    spec = GroupSpec((CAT,))
    d = lattice_digits((F(144), F(0)), CAT)
    assert d.value(CAT) == (144, 0) and d.bounds_hold()
    assert max(one_norm(v) for v in d.r + d.s + (d.p,)) <= 3 * 2 * CAT.clearing_integer
    syn = lattice_digits_to_word(d, spec)
    assert evaluate_element(syn.word, spec) == b_element(spec, [144, 0])
    assert len(syn.word) <= syn.bound


def test_lattice_digits_rejects_circle_and_non_semisimple():
    with pytest.raises(ValueError):
        lattice_digits((F(1), F(0)), RationalMatrix.companion([1, -1, 1]))
    with pytest.raises(ValueError):
        lattice_digits((F(1), F(0)), RationalMatrix([[2, 1], [0, 2]]))


def test_precision_cap_error_carries_diagnostics(monkeypatch):
    import metadist.shortwords as sw

    monkeypatch.setattr(sw, "proven_digit_bounds", lambda M: (F(-1), F(-1)))
    with pytest.raises(PrecisionCapExceeded) as exc:
        lattice_digits((F(5), F(3)), CAT, 64, cap_bits=128)
    assert [a["bits"] for a in exc.value.diagnostics["attempts"]] == [64, 128]


@pytest.mark.parametrize("M", [CAT, GOLDEN, RationalMatrix.companion([1, 3, 1])])
@given(a=st.tuples(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6)))
def test_lattice_word_round_trip(M, a):
    spec = GroupSpec((M,))
    a = tuple(F(x) for x in a)
    d = lattice_digits(a, M, 128)
    D, P = proven_digit_bounds(M)
    assert d.value(M) == a and d.max_digit() <= D and one_norm(d.p) <= P
    syn = lattice_digits_to_word(d, spec)
    assert evaluate_element(syn.word, spec) == b_element(spec, a)
    assert len(syn.word) <= syn.bound


# -- number ring --------------------------------------------------------------------

def test_ring_bezout_power_examples():
    Z = RingSpec(IntPolynomial((-3, 1)))
    r1, c1 = ring_bezout_power((F(3),), (F(2),), ((F(1),), (F(-1),)), 2, 2, Z)
    assert r1[0] * 9 + c1[0] * 4 == 1
    u, v = WITNESS
    assert ring_bezout_power(X, Y, WITNESS, 1, 1, ZSQRT2) == (u, v)
    r1, c1 = ring_bezout_power(X, Y, WITNESS, 2, 2, ZSQRT2)
    lhs = ZSQRT2.add(ZSQRT2.mul(r1, ZSQRT2.pow(X, 2)), ZSQRT2.mul(c1, ZSQRT2.pow(Y, 2)))
    assert lhs == ZSQRT2.one()
    with pytest.raises(ValueError):
        ring_bezout_power(X, Y, (u, u), 1, 1, ZSQRT2)


def test_ring_bounded_bezout_examples():
    Z = RingSpec(IntPolynomial((-3, 1)))
    a, c, K = ring_bounded_bezout((F(3),), (F(2),), ((F(1),), (F(-1),)), (F(7),), 1, 1, Z)
    assert 3 * a[0] + 2 * c[0] == 7
    a, c, K = ring_bounded_bezout(X, Y, WITNESS, ZSQRT2.one(), 2, 2, ZSQRT2)
    lhs = ZSQRT2.add(ZSQRT2.mul(a, ZSQRT2.pow(X, 2)), ZSQRT2.mul(c, ZSQRT2.pow(Y, 2)))
    assert lhs == ZSQRT2.one()
    assert max(elt_norm(a), elt_norm(c)) <= K**4
    a, c, _ = ring_bounded_bezout(X, Y, WITNESS, ZSQRT2.zero(), 2, 2, ZSQRT2)
    assert not any(a) and not any(c)


@given(st.integers(1, 6), st.integers(1, 6), st.tuples(st.integers(-100, 100), st.integers(-100, 100)))
def test_ring_bounded_bezout_bound(s, k, d):
    d = tuple(F(x) for x in d)
    a, c, K = ring_bounded_bezout(X, Y, WITNESS, d, s, k, ZSQRT2)
    lhs = ZSQRT2.add(ZSQRT2.mul(a, ZSQRT2.pow(X, s)), ZSQRT2.mul(c, ZSQRT2.pow(Y, k)))
    assert lhs == d
    assert max(elt_norm(a), elt_norm(c)) <= elt_norm(d) * K ** (s + k)


def _lam():
    return ZSQRT2.mul(X, ZSQRT2.inverse(Y))


def test_ring_group_spec_matrix():
    spec = ring_group_spec(ZSQRT2, _lam())
    assert spec.actions[0].rows == ((F(11, 7), F(12, 7)), (F(6, 7), F(11, 7)))
    assert spec.labels == ("t", "a1", "a2")


def test_ring_short_word_examples():
    spec = ring_group_spec(ZSQRT2, _lam())
    syn = ring_short_word(ZSQRT2.one(), ZSQRT2, X, Y, WITNESS, spec)
    assert format_word(syn.word, spec) == "a1" and syn.length == 1
    lam = _lam()
    syn = ring_short_word(lam, ZSQRT2, X, Y, WITNESS, spec)
    assert evaluate_element(syn.word, spec) == b_element(spec, lam)
    b = ZSQRT2.mul((F(5), F(1)), ZSQRT2.inverse(ZSQRT2.mul(X, Y)))  # (5 + sqrt2)/7
    syn = ring_short_word(b, ZSQRT2, X, Y, WITNESS, spec)
    assert (syn.decomposition.s, syn.decomposition.k) == (1, 1)
    assert evaluate_element(syn.word, spec) == b_element(spec, b)
    assert syn.length <= syn.bound


def test_ring_short_word_round_trip_fuzz():
    spec = ring_group_spec(ZSQRT2, _lam())
    rng = random.Random(99)
    for _ in range(25):
        s, k = rng.randint(0, 4), rng.randint(0, 4)
        num = (F(rng.randint(-30, 30)), F(rng.randint(-30, 30)))
        b = ZSQRT2.mul(num, ZSQRT2.inverse(ZSQRT2.mul(ZSQRT2.pow(X, s), ZSQRT2.pow(Y, k))))
        if not any(b):
            continue
        syn = ring_short_word(b, ZSQRT2, X, Y, WITNESS, spec)
        assert evaluate_element(syn.word, spec) == b_element(spec, b)
        assert syn.length <= syn.bound


# -- explicit constants ---------------------------------------------------------------

def test_bound_constants_examples():
    import math

    C3, C4 = bound_constants(2, 3, F(1, 2))
    assert math.isclose(C3, math.log(6), rel_tol=1e-14)
    assert math.isclose(C4, (1 + math.log(6)) / (0.5 * math.log(2)), rel_tol=1e-14)
    C3, C4 = bound_constants(2, 2, F(1))
    assert math.isclose(C3, math.log(4)) and math.isclose(C4, (1 + math.log(4)) / math.log(2))
    assert bound_constants(2, 3, F(10**6))[1] == 1
    with pytest.raises(ValueError):
        bound_constants(1, 3, F(1))


@given(st.integers(-10**6, 10**6).filter(bool), st.integers(0, 30), st.integers(0, 30))
def test_bound_inequalities(gamma, s, k):
    c = check_bound_inequalities(gamma, s, k, 2, 3, F(1, 2))
    assert c.first
    assert c.second is None or c.second
