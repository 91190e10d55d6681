import random
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from metadist.exact import one_norm
from metadist.numring import (
    RingSpec,
    c1_constant,
    coprimality_witness,
    field_inverse,
    field_norm,
    nearest_lattice,
    ring_mul,
    verify_witness,
)
from metadist.polynomial import IntPolynomial

ZSQRT2 = RingSpec(IntPolynomial((-2, 0, 1)))
ZI = RingSpec(IntPolynomial((1, 0, 1)))
Z = RingSpec(IntPolynomial((-3, 1)))
CUBIC = RingSpec(IntPolynomial((-2, 0, 0, 1)))
RINGS = [ZSQRT2, ZI, Z, CUBIC]


def q(*xs):
    return tuple(F(x) for x in xs)


def elements(ring, lo=-50, hi=50):
    return st.tuples(*[st.builds(F, st.integers(lo, hi), st.integers(1, 9))] * ring.n)


def test_multiplication_examples():
    assert ring_mul(q(1, 1), q(1, 1), ZSQRT2) == q(3, 2)
    assert ring_mul(q(0, 1), q(0, 1), ZI) == q(-1, 0)
    assert ring_mul(ZSQRT2.one(), q(5, -7), ZSQRT2) == q(5, -7)


def test_inverse_and_norm_examples():
    assert field_inverse(q(3, 1), ZSQRT2) == (F(3, 7), F(-1, 7))
    assert field_inverse(ZSQRT2.one(), ZSQRT2) == ZSQRT2.one()
    assert field_inverse(q(0, 1), ZI) == q(0, -1)
    assert field_norm(q(3, 1), ZSQRT2) == 7
    assert field_norm(ZSQRT2.one(), ZSQRT2) == 1
    assert field_norm(q(2, 0, 0), CUBIC) == 8
    with pytest.raises(ZeroDivisionError):
        field_inverse(q(0, 0), ZSQRT2)


def test_c1_values():
    assert c1_constant(ZSQRT2) == 3
    assert c1_constant(Z) == 1
    assert c1_constant(ZI) == 2


def test_ring_spec_rejects_bad_polynomials():
    with pytest.raises(ValueError):
        RingSpec(IntPolynomial((-1, 0, 1)))  # (x-1)(x+1)
    with pytest.raises(ValueError):
        RingSpec(IntPolynomial((1, 0, 2)))  # not monic


@pytest.mark.parametrize("ring", RINGS)
@given(data=st.data())
def test_field_axioms(ring, data):
    a, b, c = (data.draw(elements(ring)) for _ in range(3))
    assert ring.mul(a, b) == ring.mul(b, a)
    assert ring.mul(ring.mul(a, b), c) == ring.mul(a, ring.mul(b, c))
    assert field_norm(ring.mul(a, b), ring) == field_norm(a, ring) * field_norm(b, ring)
    if any(a):
        assert ring.mul(a, field_inverse(a, ring)) == ring.one()


@pytest.mark.parametrize("ring", RINGS)
def test_c1_inequality(ring):
    rng = random.Random(17)
    for _ in range(1000):
        u = tuple(F(rng.randint(-10**4, 10**4), rng.randint(1, 50)) for _ in range(ring.n))
        v = tuple(F(rng.randint(-10**4, 10**4), rng.randint(1, 50)) for _ in range(ring.n))
        assert one_norm(ring.mul(u, v)) <= ring.C1 * one_norm(u) * one_norm(v)


def test_nearest_lattice_examples():
    assert nearest_lattice(q(F(1, 3), F(5, 2))) == q(0, 2)
    assert nearest_lattice(q(F(-5, 2), F(7, 2))) == q(-2, 3)
    assert nearest_lattice(q(0, 0)) == q(0, 0)


@given(st.lists(st.builds(F, st.integers(-10**6, 10**6), st.integers(1, 100)), min_size=1, max_size=5))
def test_nearest_lattice_distance(z):
    w = nearest_lattice(tuple(z))
    assert all(x.denominator == 1 for x in w)
    assert one_norm([a - b for a, b in zip(z, w)]) <= F(len(z), 2)


def test_coprimality_witnesses():
    assert coprimality_witness(q(3, 1), q(3, -1), ZSQRT2) is None
    u, v = coprimality_witness(q(1, 1), q(3, 1), ZSQRT2)  # 1 + sqrt2 is a unit
    assert verify_witness(q(1, 1), q(3, 1), u, v, ZSQRT2)
    u, v = coprimality_witness(q(1, 2), q(1, 1), ZI)
    assert verify_witness(q(1, 2), q(1, 1), u, v, ZI)
    # the manual witness for the flagship pair
    assert verify_witness(q(3, 1), q(3, -1), q(-3, 3), q(0, -2), ZSQRT2)
