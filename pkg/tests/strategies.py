"""Shared hypothesis strategies."""
from fractions import Fraction

from hypothesis import strategies as st

from metadist.exact import RationalMatrix


def rationals(max_num=10**6, max_den=10**6, nonzero=False):
    num = st.integers(-max_num, max_num)
    if nonzero:
        num = num.filter(bool)
    return st.builds(Fraction, num, st.integers(1, max_den))


def vectors(n, **kw):
    return st.tuples(*[rationals(**kw)] * n)


def matrices(n, max_num=20, max_den=5):
    return st.lists(st.lists(rationals(max_num, max_den), min_size=n, max_size=n), min_size=n, max_size=n).map(RationalMatrix)
