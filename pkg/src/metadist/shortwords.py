"""Constructive short words for elements of B.

Each synthesizer returns an explicit :class:`~metadist.group.Word` together
with an a-priori bound on its length; callers verify the word by evaluating
it exactly.

Rank one: lambda = x/y > 1 in lowest terms, integers are written in base
lambda, and a general b = d / (x^s y^k) is split as

    b = lambda^k r1 + c1 + c2 + lambda^-s r2

with two bounded Bezout steps. Higher rank: integer vectors get a digit
expansion along the expanding/contracting splitting of the action, and the
number-ring version repeats the rank-one split inside Z[theta].
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import ceil, comb, gcd, log
from typing import Optional, Sequence

import mpmath

from metadist.exact import (
    RationalMatrix,
    is_integral_vector,
    mu,
    mu_E,
    one_norm,
    vec_add,
    vec_sub,
)
from metadist.group import GroupSpec, Word, evaluate_element, rank1_spec
from metadist.numring import RingSpec, elt_norm, nearest_lattice, verify_witness
from metadist.spectral import has_modulus_one_root, is_semisimple, minimal_polynomial, splitting_projectors


def _ext_gcd(a: int, b: int) -> tuple:
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


# -- rank one: base lambda -------------------------------------------------------

@dataclass(frozen=True)
class LambdaDigits:
    sign: int
    digits: tuple  # c_0 .. c_s
    x: int
    y: int

    @property
    def s(self) -> int:
        return len(self.digits) - 1

    def value(self) -> Fraction:
        lam = Fraction(self.x, self.y)
        return self.sign * sum((c * lam**i for i, c in enumerate(self.digits)), Fraction(0))


def lambda_adic_digits(m: int, x: int, y: int) -> LambdaDigits:
    """m = +-sum c_i (x/y)^i with 0 <= c_i < x, by m = x*c + r -> (c*y, r)."""
    if gcd(x, y) != 1 or y < 1:
        raise ValueError("need coprime x, y with y >= 1")
    if x <= abs(y) or x < 2:
        raise ValueError("base x/y must exceed 1")
    sign = -1 if m < 0 else 1
    m = abs(m)
    digits = []
    while True:
        c, r = divmod(m, x)
        digits.append(r)
        m = c * y
        if m == 0:
            break
    return LambdaDigits(sign, tuple(digits), x, y)


def digits_to_word(d: LambdaDigits, t: int = 0, a: int = 1, t_sign: int = 1) -> Word:
    """a^c0 T^-1 a^c1 T^-1 ... T^-1 a^cs T^s, with T = t^t_sign conjugating a -> lambda*a."""
    T = (t, t_sign)
    T_inv = (t, -t_sign)
    letters = []
    for i, c in enumerate(d.digits):
        if i:
            letters.append(T_inv)
        letters.extend([(a, d.sign)] * c)
    letters.extend([T] * d.s)
    return Word(tuple(letters)).free_reduce()


def digits_length_bound(d: LambdaDigits) -> int:
    return 2 * d.s + sum(d.digits)


@dataclass(frozen=True)
class DigitBatch:
    """Digits for many integers at once; row i holds c_0, c_1, ... of values[i]."""

    values: "numpy.ndarray"
    digits: "numpy.ndarray"  # shape (len(values), width), zero padded
    top: "numpy.ndarray"  # index s of the leading digit

    def word_lengths(self):
        return 2 * self.top + self.digits.sum(axis=1)

    def reconstructs(self, x: int, y: int) -> bool:
        """Exact integer Horner check: m_s = c_s, m_i = x (m_(i+1) / y) + c_i."""
        import numpy as np

        acc = np.zeros(len(self.values), dtype=np.int64)
        ok = np.ones(len(self.values), dtype=bool)
        for i in range(self.digits.shape[1] - 1, -1, -1):
            active = i <= self.top
            above = active & (i < self.top)
            ok &= ~above | (acc % y == 0)
            acc = np.where(above, x * (acc // y), acc) + np.where(active, self.digits[:, i], 0)
        return bool(ok.all() and (acc == np.abs(self.values)).all())


def lambda_adic_batch(values, x: int, y: int) -> DigitBatch:
    """Vectorized :func:`lambda_adic_digits` for |values| small enough for int64."""
    import numpy as np

    if gcd(x, y) != 1 or y < 1 or x <= y:
        raise ValueError("need coprime x > y >= 1")
    values = np.asarray(values, dtype=np.int64)
    if values.size and int(np.abs(values).max()) * max(x, y) >= 2**62:
        raise OverflowError("values too large for the batch path")
    m = np.abs(values)
    cols = []
    top = np.zeros(len(m), dtype=np.int64)
    alive = np.ones(len(m), dtype=bool)
    i = 0
    while alive.any():
        c, r = np.divmod(m, x)
        cols.append(np.where(alive, r, 0))
        top = np.where(alive, i, top)
        m = c * y
        alive &= m != 0
        i += 1
    return DigitBatch(values, np.stack(cols, axis=1), top)


def max_power_below(values, x: int, y: int):
    """Largest s with (x/y)^s <= |v| for each v != 0, via exact integer thresholds."""
    import numpy as np

    v = np.abs(np.asarray(values, dtype=np.int64))
    limit = int(v.max()) if v.size else 1
    thresholds = []  # least integer >= (x/y)^s for s = 1, 2, ...
    s = 1
    while True:
        th = -(-(x**s) // (y**s))
        if th > limit:
            break
        thresholds.append(th)
        s += 1
    return np.searchsorted(np.array(thresholds, dtype=np.int64), v, side="right")


# -- rank one: bounded Bezout and the four-term split ------------------------------

def bounded_bezout(x1: int, y1: int, d: int) -> tuple:
    """(a, c) with d = x1*a + y1*c and |a|, |c| <= |d| |x1| |y1|.

    The pair for d = 1 is normalized to 0 <= c < |x1| (hence |a| <= |y1|)
    and then scaled by d.
    """
    if x1 == 0 or y1 == 0:
        raise ValueError("x1 and y1 must be nonzero")
    g, a1, c1 = _ext_gcd(x1, y1)
    if g != 1:
        raise ValueError(f"{x1} and {y1} are not coprime")
    c = c1 % abs(x1)
    a = (1 - y1 * c) // x1
    assert x1 * a + y1 * c == 1 and abs(a) <= abs(y1)
    return a * d, c * d


def _split_denominator(den: int, x: int) -> tuple:
    """(s, rest): least s such that the x-primary part of den divides x^s."""
    part = 1
    g = gcd(den, x)
    while g > 1:
        den //= g
        part *= g
        g = gcd(den, x)
    s = 0
    while abs(x) ** s % part:
        s += 1
    return s, den


def minimal_sk(b, x: int, y: int) -> tuple:
    """Least s, k >= 0 with d = b x^s y^k integral; returns (s, k, d)."""
    b = Fraction(b)
    if gcd(x, y) != 1:
        raise ValueError("x and y must be coprime")
    den = b.denominator
    s, rest = _split_denominator(den, x)
    k, rest = _split_denominator(rest, y)
    if rest != 1:
        raise ValueError(f"{b} is not in Z[1/(xy)] for x={x}, y={y}")
    d = b * Fraction(x) ** s * Fraction(y) ** k
    assert d.denominator == 1
    return s, k, int(d)


@dataclass(frozen=True)
class Rank1Decomposition:
    s: int
    k: int
    d: int
    d1: int
    d2: int
    r1: int
    c1: int
    c2: int
    r2: int
    x: int
    y: int

    def value(self) -> Fraction:
        lam = Fraction(self.x, self.y)
        return lam**self.k * self.r1 + self.c1 + self.c2 + lam ** (-self.s) * self.r2

    def bounds_hold(self) -> bool:
        x, y, s, k = abs(self.x), abs(self.y), self.s, self.k
        return (
            max(abs(self.d1), abs(self.d2)) <= abs(self.d) * x**s * y**k
            and max(abs(self.r1), abs(self.c1)) <= abs(self.d1) * x**k * y**k
            and max(abs(self.r2), abs(self.c2)) <= abs(self.d2) * x**s * y**s
        )


def rank1_decompose(b, x: int, y: int) -> Rank1Decomposition:
    s, k, d = minimal_sk(b, x, y)
    xs, yk = x**s, y**k
    d1, d2 = bounded_bezout(xs, yk, d)  # d = x^s d1 + y^k d2
    # with a zero exponent the conjugated part is pointless, so it stays 0
    r1, c1 = bounded_bezout(x**k, yk, d1) if k else (0, d1)  # d1 = x^k r1 + y^k c1
    r2, c2 = bounded_bezout(y**s, xs, d2) if s else (0, d2)  # d2 = y^s r2 + x^s c2
    dec = Rank1Decomposition(s, k, d, d1, d2, r1, c1, c2, r2, x, y)
    assert dec.value() == Fraction(b)
    return dec


@dataclass(frozen=True)
class Synthesis:
    """A synthesized word and the a-priori bound on its letter count."""

    word: Word
    bound: int
    detail: object = None

    @property
    def length(self) -> int:
        return len(self.word)


def _rank1_parameters(spec: GroupSpec) -> tuple:
    if spec.n != 1:
        raise ValueError("rank-one synthesis needs n == 1")
    lam = spec.actions[0].rows[0][0]
    if lam <= 0:
        raise ValueError("rank-one synthesis supports positive lambda only")
    if lam == 1:
        raise ValueError("lambda = 1 has no short words")
    if lam > 1:
        return lam.numerator, lam.denominator, 1
    return lam.denominator, lam.numerator, -1


def rank1_short_word(b, spec: GroupSpec) -> Synthesis:
    """Word for the element b of B = Z[lambda^+-1] in <t> x| B (t = q_1)."""
    x, y, t_sign = _rank1_parameters(spec)
    t, a = 0, spec.k
    dec = rank1_decompose(b, x, y)
    T, T_inv = (t, t_sign), (t, -t_sign)

    def power_word(m: int) -> Word:
        return digits_to_word(lambda_adic_digits(m, x, y), t, a, t_sign)

    blocks = []
    bound = 0
    if dec.r1:
        w = power_word(dec.r1)
        blocks.append(Word((T_inv,) * dec.k) + w + Word((T,) * dec.k))
        bound += 2 * dec.k + len(w)
    for c in (dec.c1, dec.c2):
        if c:
            w = power_word(c)
            blocks.append(w)
            bound += len(w)
    if dec.r2:
        w = power_word(dec.r2)
        blocks.append(Word((T,) * dec.s) + w + Word((T_inv,) * dec.s))
        bound += 2 * dec.s + len(w)
    word = sum(blocks, Word()).free_reduce()
    return Synthesis(word, bound, dec)


# -- higher rank: lattice digits ------------------------------------------------

class PrecisionCapExceeded(RuntimeError):
    def __init__(self, message: str, diagnostics: dict):
        super().__init__(message)
        self.diagnostics = diagnostics


@dataclass(frozen=True)
class LatticeDigits:
    r: tuple  # r_1 .. r_k (integer vectors)
    p: tuple
    s: tuple  # s_1 .. s_l
    m: int
    bits: int = 0

    @property
    def k(self) -> int:
        return len(self.r)

    @property
    def l(self) -> int:
        return len(self.s)

    def value(self, M: RationalMatrix) -> tuple:
        acc = self.p
        Mi = M.inverse()
        P = M
        for r in self.r:
            acc = vec_add(acc, P @ r)
            P = P @ M
        P = Mi
        for s in self.s:
            acc = vec_add(acc, P @ s)
            P = P @ Mi
        return acc

    def digit_bound(self) -> int:
        return self.m * len(self.p)

    def bounds_hold(self) -> bool:
        """The sharp bounds |digit| <= mn and |p| <= 3mn (not guaranteed when |M| is large)."""
        K = self.digit_bound()
        return all(one_norm(v) <= K for v in self.r + self.s) and one_norm(self.p) <= 3 * K

    def max_digit(self) -> Fraction:
        return max((one_norm(v) for v in self.r + self.s), default=Fraction(0))


def proven_digit_bounds(M: RationalMatrix) -> tuple:
    """(D, P) with |r_j|, |s_j| <= D and |p| <= P for exact rounding.

    Each rounding moves a point by at most m/2 per coordinate, so
    r_j = e_j - M e_(j+1) gives D = nm(1 + max(|M|, |M^-1|))/2 and
    p = M(M^-1 u - u_1) + M^-1(M v - v_1) gives P = nm(|M| + |M^-1|)/2.
    """
    from metadist.exact import operator_norm

    n, m = M.n, M.clearing_integer
    a, b = operator_norm(M), operator_norm(M.inverse())
    return Fraction(n * m) * (1 + max(a, b)) / 2, Fraction(n * m) * (a + b) / 2


@lru_cache(maxsize=64)
def _projectors(M: RationalMatrix, digits: int):
    return splitting_projectors(M, digits)


def _round_to_multiple(x, m: int) -> Fraction:
    """Nearest multiple of m to the float x, ties toward zero."""
    q = mpmath.mpf(x) / m
    fl = mpmath.floor(q)
    frac = q - fl
    half = mpmath.mpf(1) / 2
    if frac < half:
        n = fl
    elif frac > half:
        n = fl + 1
    else:
        n = fl if q > 0 else fl + 1
    return Fraction(int(n) * m)


def _orbit_lattice_points(start, A, Aexact: RationalMatrix, m: int, n: int, max_steps: int) -> list:
    """Nearest points of m Z^n to start, A start, A^2 start, ... up to the first zero after index 0."""
    pts = []
    x = start
    zero = (Fraction(0),) * n
    for j in range(max_steps):
        pt = tuple(_round_to_multiple(x[i], m) for i in range(n))
        pts.append(pt)
        if j >= 1 and pt == zero:
            return pts
        x = A * x
    raise RuntimeError("orbit did not reach the zero lattice point")


def _digits_at(a: tuple, M: RationalMatrix, m: int, bits: int) -> LatticeDigits:
    n = M.n
    digits10 = max(int(bits * 0.30103) + 1, 15)
    proj = _projectors(M, digits10)
    with mpmath.workdps(digits10 + 10):
        av = mpmath.matrix([mpmath.mpf(x.numerator) / x.denominator for x in a])
        Mf = mpmath.matrix([[mpmath.mpf(x.numerator) / x.denominator for x in row] for row in M.rows])
        Mi = M.inverse()
        Mif = mpmath.matrix([[mpmath.mpf(x.numerator) / x.denominator for x in row] for row in Mi.rows])
        u = proj.expanding * av
        v = proj.contracting * av
        steps = 64 + 8 * int(mpmath.log(1 + sum(abs(x) for x in a), 2)) + 8
        us = _orbit_lattice_points(u, Mif, Mi, m, n, steps)  # u_j ~ M^-j u
        vs = _orbit_lattice_points(v, Mf, M, m, n, steps)  # v_j ~ M^j v
    # telescoping: u_0 = sum_{j=0..k} M^j r_j with r_j = u_j - M u_{j+1}
    r = [vec_sub(us[j], M @ us[j + 1]) for j in range(len(us) - 1)]
    s = [vec_sub(vs[j], Mi @ vs[j + 1]) for j in range(len(vs) - 1)]
    k, l = len(r) - 1, len(s) - 1
    # p = r_0 + s_0 + (a - u_0 - v_0), computed directly from the other digits
    p = a
    P = M
    for j in range(1, k + 1):
        p = vec_sub(p, P @ r[j])
        P = P @ M
    P = Mi
    for j in range(1, l + 1):
        p = vec_sub(p, P @ s[j])
        P = P @ Mi
    return LatticeDigits(tuple(r[1:]), p, tuple(s[1:]), m, bits)


def lattice_digits(
    a: Sequence,
    M: RationalMatrix,
    precision_bits: int = 64,
    cap_bits: int = 4096,
) -> LatticeDigits:
    """Digits r_j, p, s_j with a = sum M^j r_j + p + sum M^-j s_j exactly.

    Floats only pick lattice points; the result is accepted once the exact
    reconstruction and the digit bounds check out, doubling the working
    precision up to ``cap_bits`` otherwise.
    """
    a = tuple(Fraction(x) for x in a)
    if not is_integral_vector(a):
        raise ValueError("lattice digits need an integer vector")
    if not is_semisimple(M):
        raise ValueError("action is not semisimple")
    if has_modulus_one_root(minimal_polynomial(M))[0]:
        raise ValueError("action has an eigenvalue of modulus 1")
    m = M.clearing_integer
    if not any(a):
        return LatticeDigits((), a, (), m, 0)
    bits = precision_bits
    attempts = []
    while bits <= cap_bits:
        try:
            d = _digits_at(a, M, m, bits)
        except RuntimeError as exc:
            attempts.append({"bits": bits, "error": str(exc)})
        else:
            exact = d.value(M) == a and is_integral_vector(d.p) and all(
                is_integral_vector(v) for v in d.r + d.s
            )
            D, P = proven_digit_bounds(M)
            if exact and d.max_digit() <= D and one_norm(d.p) <= P:
                return d
            attempts.append(
                {
                    "bits": bits,
                    "exact": exact,
                    "max_digit": str(max((one_norm(v) for v in d.r + d.s), default=0)),
                    "p_norm": str(one_norm(d.p)),
                }
            )
        bits *= 2
    raise PrecisionCapExceeded(f"lattice digits failed up to {cap_bits} bits", {"a": [str(x) for x in a], "attempts": attempts})


def vector_word(v: Sequence, a_offset: int) -> Word:
    letters = []
    for j, c in enumerate(v):
        c = int(c)
        letters.extend([(a_offset + j, 1 if c > 0 else -1)] * abs(c))
    return Word(tuple(letters))


def lattice_digits_to_word(d: LatticeDigits, spec: GroupSpec, t: int = 0) -> Synthesis:
    """Horner form: p * T^-1 r_1 T^-1 r_2 ... r_k T^k * T s_1 T s_2 ... s_l T^-l."""
    a0 = spec.k
    T, T_inv = (t, 1), (t, -1)
    letters = list(vector_word(d.p, a0).letters)
    for r in d.r:
        letters.append(T_inv)
        letters.extend(vector_word(r, a0).letters)
    letters.extend([T] * d.k)
    for s in d.s:
        letters.append(T)
        letters.extend(vector_word(s, a0).letters)
    letters.extend([T_inv] * d.l)
    D, P = proven_digit_bounds(spec.actions[t])
    bound = ceil(P) + (2 + ceil(D)) * (d.k + d.l)
    return Synthesis(Word(tuple(letters)).free_reduce(), bound, d)


def lattice_short_word(a: Sequence, spec: GroupSpec, t: int = 0, precision_bits: int = 64) -> Synthesis:
    M = spec.actions[t]
    d = lattice_digits(a, M, precision_bits)
    return lattice_digits_to_word(d, spec, t)


# -- number rings --------------------------------------------------------------

def ring_bezout_power(x, y, witness: tuple, s: int, k: int, ring: RingSpec) -> tuple:
    """(r1, c1) with r1 x^s + c1 y^k = 1, expanding (u x + v y)^(s+k-1).

    Every monomial (ux)^i (vy)^j with i + j = s + k - 1 has i >= s or j >= k.
    """
    u, v = witness
    if not verify_witness(x, y, u, v, ring):
        raise ValueError("witness does not satisfy u*x + v*y = 1")
    if s < 1 or k < 1:
        raise ValueError("s and k must be >= 1")
    N = s + k - 1
    ux, vy = ring.mul(u, x), ring.mul(v, y)
    r1 = ring.zero()
    c1 = ring.zero()
    for i in range(N + 1):
        j = N - i
        coef = comb(N, i)
        if i >= s:
            term = ring.mul(ring.mul(ring.pow(u, i), ring.pow(x, i - s)), ring.pow(vy, j))
            r1 = ring.add(r1, ring.scale(coef, term))
        else:
            term = ring.mul(ring.pow(ux, i), ring.mul(ring.pow(v, j), ring.pow(y, j - k)))
            c1 = ring.add(c1, ring.scale(coef, term))
    assert ring.add(ring.mul(r1, ring.pow(x, s)), ring.mul(c1, ring.pow(y, k))) == ring.one()
    return r1, c1


def bezout_constant(x, y, ring: RingSpec) -> Fraction:
    """K with |a|, |c| <= |d| K^(s+k) for the pairs from ring_bounded_bezout.

    From |a| <= |d| C1^(k+1) |y|^k (K1^(s+k) + n)/2 with
    K1 = max(C1 |1/x|, C1 |1/y|, 1), bounded termwise for s + k >= 1.
    """
    C1 = ring.C1
    K1 = max(C1 * elt_norm(ring.inverse(x)), C1 * elt_norm(ring.inverse(y)), Fraction(1))
    return C1**2 * max(elt_norm(x), elt_norm(y), Fraction(1)) * max(K1, Fraction(ring.n))


def ring_bounded_bezout(x, y, witness: tuple, d, s: int, k: int, ring: RingSpec) -> tuple:
    """(a, c, K) with d = a x^s + c y^k and |a|, |c| <= |d| K^(s+k)."""
    K = bezout_constant(x, y, ring)
    if not any(d):
        return ring.zero(), ring.zero(), K
    if s == 0:
        return d, ring.zero(), K
    if k == 0:
        return ring.zero(), d, K
    r1, c1 = ring_bezout_power(x, y, witness, s, k, ring)
    xs, yk = ring.pow(x, s), ring.pow(y, k)
    inv_xs_yk = ring.inverse(ring.mul(xs, yk))
    # z = 1/(2 x^s y^k) - r1/y^k, rounded to the lattice
    z = ring.sub(ring.scale(Fraction(1, 2), inv_xs_yk), ring.mul(r1, ring.inverse(yk)))
    w = nearest_lattice(z)
    a = ring.mul(d, ring.add(r1, ring.mul(yk, w)))
    c = ring.mul(d, ring.sub(c1, ring.mul(xs, w)))
    assert ring.add(ring.mul(a, xs), ring.mul(c, yk)) == tuple(d)
    return a, c, K


@dataclass(frozen=True)
class RingDecomposition:
    s: int
    k: int
    d: tuple
    d1: tuple
    d2: tuple
    r1: tuple
    c1: tuple
    c2: tuple
    r2: tuple


def ring_minimal_sk(b, x, y, ring: RingSpec, limit: int = 256) -> tuple:
    """Least s, k with x^s y^k b integral (unique since x, y are coprime)."""

    def ok(s, k):
        return ring.is_integral(ring.mul(b, ring.mul(ring.pow(x, s), ring.pow(y, k))))

    t = 0
    while not ok(t, t):
        t += 1
        if t > limit:
            raise ValueError("element is not in O_L[1/(xy)] (search limit reached)")
    s = next(i for i in range(t + 1) if ok(i, t))
    k = next(j for j in range(t + 1) if ok(s, j))
    return s, k


def ring_group_spec(ring: RingSpec, lam) -> GroupSpec:
    """<t> x| O_L[lam^+-1] with t acting by multiplication with lam."""
    M = ring.mult_matrix(lam)
    n = ring.n
    labels = ("t",) + (("a",) if n == 1 else tuple(f"a{j + 1}" for j in range(n)))
    return GroupSpec((M,), labels, "ring")


@dataclass(frozen=True)
class RingSynthesis:
    word: Word
    bound: int
    log_mu: float
    decomposition: RingDecomposition

    @property
    def length(self) -> int:
        return len(self.word)


def ring_decompose(b, x, y, witness, ring: RingSpec) -> RingDecomposition:
    s, k = ring_minimal_sk(b, x, y, ring)
    d = ring.mul(b, ring.mul(ring.pow(x, s), ring.pow(y, k)))
    d1, d2, _ = ring_bounded_bezout(x, y, witness, d, s, k, ring)  # d = d1 x^s + d2 y^k
    r1, c1, _ = ring_bounded_bezout(x, y, witness, d1, k, k, ring)  # d1 = r1 x^k + c1 y^k
    u, v = witness
    r2, c2, _ = ring_bounded_bezout(y, x, (v, u), d2, s, s, ring)  # d2 = r2 y^s + c2 x^s
    return RingDecomposition(s, k, d, d1, d2, r1, c1, c2, r2)


def ring_short_word(b, ring: RingSpec, x, y, witness, spec: Optional[GroupSpec] = None, precision_bits: int = 64) -> RingSynthesis:
    """Word for b in <t> x| O_L[lambda^+-1], lambda = x/y acting by multiplication."""
    lam = ring.mul(x, ring.inverse(y))
    if spec is None:
        spec = ring_group_spec(ring, lam)
    M = spec.actions[0]
    if has_modulus_one_root(minimal_polynomial(M))[0]:
        raise ValueError("multiplication by lambda has an eigenvalue of modulus 1")
    if not verify_witness(x, y, *witness, ring):
        raise ValueError("witness does not satisfy u*x + v*y = 1")
    b = tuple(Fraction(c) for c in b)
    dec = ring_decompose(b, x, y, witness, ring)
    T, T_inv = (0, 1), (0, -1)

    def aword(c) -> Synthesis:
        return lattice_short_word(c, spec, 0, precision_bits)

    parts = []
    bound = 0
    if any(dec.r1):
        w = aword(dec.r1)
        parts.append(Word((T_inv,) * dec.k) + w.word + Word((T,) * dec.k))
        bound += 2 * dec.k + w.bound
    for c in (dec.c1, dec.c2):
        if any(c):
            w = aword(c)
            parts.append(w.word)
            bound += w.bound
    if any(dec.r2):
        w = aword(dec.r2)
        parts.append(Word((T,) * dec.s) + w.word + Word((T_inv,) * dec.s))
        bound += 2 * dec.s + w.bound
    word = sum(parts, Word()).free_reduce()
    return RingSynthesis(word, bound, log(mu_E(b) + 1), dec)


# -- explicit constants ---------------------------------------------------------

def bound_constants(Nval: int, Mval: int, eps) -> tuple:
    """(C3, C4): C3 = ln|MN|, C4 = max(max_p (1 + ln|MN|)/(eps ln p), 1) over primes p | MN."""
    import sympy

    MN = abs(Mval * Nval)
    if abs(Nval) < 2 or abs(Mval) < 2:
        raise ValueError("|N|, |M| must be >= 2")
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    C3 = mpmath.log(MN)
    primes = sympy.primefactors(MN)
    C4 = max(max((1 + C3) / (mpmath.mpf(eps.numerator) / eps.denominator * mpmath.log(p)) for p in primes), 1)
    return C3, C4


def _rational_below(x, denominator: int = 1000) -> Fraction:
    return Fraction(int(mpmath.floor(x * denominator)), denominator)


E_UPPER = Fraction(2719, 1000)  # > e


@dataclass(frozen=True)
class BoundCheck:
    first: bool
    hypothesis: bool
    second: Optional[bool]


def check_bound_inequalities(gamma: int, s: int, k: int, Mval: int, Nval: int, eps) -> BoundCheck:
    """Both inequalities for beta = gamma / (M^s N^k), in exponentiated integer form.

    First: |gamma| <= |MN|^max(s,k) * mu(beta)  (exactly ln-equivalent).
    Second, when p^ceil(eps*max) divides M^s N^k / gcd for some prime p:
    e^max |gamma| <= mu(beta)^C4, checked with e < 2719/1000 and a rational
    lower bound for C4 (a sufficient condition).
    """
    import sympy

    if gamma == 0:
        raise ValueError("gamma must be nonzero")
    mx = max(s, k)
    den = Mval**s * Nval**k
    beta = Fraction(gamma, den)
    mb = mu(beta)
    first = abs(gamma) <= abs(Mval * Nval) ** mx * mb
    quotient = abs(den) // gcd(gamma, den)
    need = ceil(Fraction(eps) * mx)
    hypothesis = any(quotient % p**need == 0 for p in sympy.primefactors(abs(Mval * Nval))) if need > 0 else True
    second = None
    if hypothesis:
        _, C4 = bound_constants(Nval, Mval, eps)
        C4_lo = _rational_below(C4)
        lhs = (E_UPPER**mx * abs(gamma)) ** C4_lo.denominator
        second = lhs <= Fraction(mb) ** C4_lo.numerator
    return BoundCheck(first, hypothesis, second)
