"""Split metabelian groups G = Z^k x| B with B inside Q^n.

Conventions: an element is a pair (e, b) standing for q^e * b, and the
Q-generator q_i acts on B on the right by b^{q_i} = M_i b, i.e. the j-th
column of M_i is a_j^{q_i}. Hence

    (e, b) * (e', b') = (e + e', M^{e'} b + b').

Letters of a word are ``(index, sign)`` with indices 0..k-1 for q_1..q_k and
k..k+n-1 for a_1..a_n.
"""
from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Iterable, Optional, Sequence

from metadist.exact import (
    RationalMatrix,
    mu_E,
    operator_norm,
    unit_vector,
    vec_add,
    vector,
    zero_vector,
)


# -- specs -------------------------------------------------------------------

@dataclass(frozen=True)
class GroupSpec:
    actions: tuple
    labels: tuple = ()
    name: str = ""

    def __post_init__(self):
        actions = tuple(a if isinstance(a, RationalMatrix) else RationalMatrix(a) for a in self.actions)
        if not actions:
            raise ValueError("need at least one Q-generator")
        n = actions[0].n
        for i, M in enumerate(actions):
            if M.n != n:
                raise ValueError(f"action {i + 1} is {M.n}x{M.n}, expected {n}x{n}")
        object.__setattr__(self, "actions", actions)
        if not self.labels:
            k = len(actions)
            qs = ["t"] if k == 1 else [f"q{i + 1}" for i in range(k)]
            as_ = ["a"] if n == 1 else [f"a{j + 1}" for j in range(n)]
            object.__setattr__(self, "labels", tuple(qs + as_))
        elif len(self.labels) != len(actions) + n:
            raise ValueError("labels must name every q_i and a_j")

    @property
    def k(self) -> int:
        return len(self.actions)

    @property
    def n(self) -> int:
        return self.actions[0].n

    @property
    def num_generators(self) -> int:
        return self.k + self.n

    def is_integral(self) -> bool:
        return all(M.is_integral() for M in self.actions)

    @cached_property
    def m(self) -> int:
        """Clearing integer.

        For a non-integral action, the least m with every m*M_i integral.
        When all M_i are already integral that condition is vacuous, so m
        clears the inverses instead; m == 1 then means a unimodular action.
        """
        m = lcm(*(M.denominator_lcm() for M in self.actions))
        if m == 1:
            m = lcm(*(M.inverse().denominator_lcm() for M in self.actions))
        return m

    @cached_property
    def inverses(self) -> tuple:
        return tuple(M.inverse() for M in self.actions)

    def letters(self) -> list:
        """All 2(k+n) letters in BFS order: q_1, q_1^-1, ..., a_n, a_n^-1."""
        return [(i, s) for i in range(self.num_generators) for s in (1, -1)]

    def to_dict(self) -> dict:
        return {"name": self.name, "labels": list(self.labels), "actions": [M.to_strings() for M in self.actions]}


@dataclass(frozen=True)
class Diagnostic:
    level: str  # "error" | "warning" | "note"
    message: str

    def __str__(self) -> str:
        return f"{self.level}: {self.message}"


def validate(spec: GroupSpec) -> list:
    """Check the standing hypotheses; errors and warnings come back as Diagnostics.

    Shape problems (non-square or mismatched matrices) raise ValueError when the
    spec is built, so they never reach here.
    """
    out = []
    for i, M in enumerate(spec.actions):
        if not M.is_invertible():
            out.append(Diagnostic("error", f"action of {spec.labels[i]} is singular"))
    for i in range(spec.k):
        for j in range(i + 1, spec.k):
            if not spec.actions[i].commutes_with(spec.actions[j]):
                out.append(Diagnostic("error", f"actions of {spec.labels[i]} and {spec.labels[j]} do not commute"))
    if any(d.level == "error" for d in out):
        return out
    if not spec.is_integral():
        out.append(Diagnostic("note", f"non-integral action, m={spec.m}; certificates use the integralized model"))
    return out


def is_valid(diagnostics: Iterable[Diagnostic]) -> bool:
    return not any(d.level == "error" for d in diagnostics)


def determinant_data(spec: GroupSpec) -> list:
    """(n_i, N_i) with M_i^-1 = N_i / n_i, for the integral model of each action."""
    return [(M.det, M.adjugate()) for M in integral_model(spec)]


def integral_model(spec: GroupSpec) -> tuple:
    """Integral actions generating a group containing G's Q-part.

    Integral specs are returned unchanged. Otherwise q_i is replaced by
    q_i' = q_i s with s acting as m*Id, so the model acts by m*M_i and m*Id.
    """
    if spec.is_integral():
        return spec.actions
    m = spec.m
    return tuple(M * m for M in spec.actions) + (RationalMatrix.scalar(spec.n, m),)


# -- elements and words ------------------------------------------------------

@dataclass(frozen=True)
class Element:
    exponents: tuple
    translation: tuple

    @classmethod
    def identity(cls, spec: GroupSpec) -> "Element":
        return cls((0,) * spec.k, zero_vector(spec.n))

    @classmethod
    def make(cls, exponents: Sequence[int], translation: Sequence) -> "Element":
        return cls(tuple(int(e) for e in exponents), vector(translation))

    def is_in_B(self) -> bool:
        return not any(self.exponents)

    def key(self) -> str:
        e = ",".join(str(x) for x in self.exponents)
        b = ",".join(str(x) for x in self.translation)
        return f"{e}|{b}"

    @classmethod
    def from_key(cls, key: str) -> "Element":
        e, b = key.split("|")
        return cls(tuple(int(x) for x in e.split(",")), tuple(Fraction(x) for x in b.split(",")))


@dataclass(frozen=True)
class Word:
    letters: tuple = ()

    def __len__(self) -> int:
        return len(self.letters)

    def __add__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __iter__(self):
        return iter(self.letters)

    def inverse(self) -> "Word":
        return Word(tuple((i, -s) for i, s in reversed(self.letters)))

    def power(self, e: int) -> "Word":
        base = self if e >= 0 else self.inverse()
        return Word(base.letters * abs(e))

    def free_reduce(self) -> "Word":
        out = []
        for letter in self.letters:
            if out and out[-1][0] == letter[0] and out[-1][1] == -letter[1]:
                out.pop()
            else:
                out.append(letter)
        return Word(tuple(out))

    @classmethod
    def gen(cls, index: int, exponent: int = 1) -> "Word":
        s = 1 if exponent >= 0 else -1
        return cls(((index, s),) * abs(exponent))


def format_word(w: Word, spec: GroupSpec) -> str:
    if not w.letters:
        return "1"
    parts = []
    i = 0
    L = w.letters
    while i < len(L):
        j = i
        while j < len(L) and L[j] == L[i]:
            j += 1
        idx, s = L[i]
        e = (j - i) * s
        parts.append(spec.labels[idx] if e == 1 else f"{spec.labels[idx]}^{e}")
        i = j
    return " ".join(parts)


_TOKEN = re.compile(r"([A-Za-z_][A-Za-z_0-9]*)(?:\^\(?(-?\d+)\)?)?")


def parse_word(text: str, spec: GroupSpec) -> Word:
    """Parse e.g. ``"t^-1 a t"`` or ``"a1*a2^3"``; ``"1"`` or ``""`` is the identity."""
    text = text.strip()
    if text in ("", "1"):
        return Word()
    index = {name: i for i, name in enumerate(spec.labels)}
    letters = []
    for tok in re.split(r"[\s*]+", text):
        if not tok:
            continue
        m = _TOKEN.fullmatch(tok)
        if not m or m.group(1) not in index:
            raise ValueError(f"unknown letter {tok!r}")
        letters.extend(Word.gen(index[m.group(1)], int(m.group(2) or 1)).letters)
    return Word(tuple(letters))


# -- arithmetic --------------------------------------------------------------

def action_of(spec: GroupSpec, exponents: Sequence[int]) -> RationalMatrix:
    out = RationalMatrix.identity(spec.n)
    for M, e in zip(spec.actions, exponents):
        if e:
            out = out @ (M ** e)
    return out


def multiply(g: Element, h: Element, spec: GroupSpec) -> Element:
    e = tuple(a + b for a, b in zip(g.exponents, h.exponents))
    b = vec_add(action_of(spec, h.exponents) @ g.translation, h.translation)
    return Element(e, b)


def invert(g: Element, spec: GroupSpec) -> Element:
    e = tuple(-x for x in g.exponents)
    b = action_of(spec, e) @ g.translation
    return Element(e, tuple(-x for x in b))


def step(g: Element, letter: tuple, spec: GroupSpec) -> Element:
    """Right multiplication by a single letter."""
    idx, s = letter
    k = spec.k
    if idx < k:
        M = spec.actions[idx] if s > 0 else spec.inverses[idx]
        e = list(g.exponents)
        e[idx] += s
        return Element(tuple(e), M @ g.translation)
    j = idx - k
    b = list(g.translation)
    b[j] += s
    return Element(g.exponents, tuple(b))


@dataclass(frozen=True)
class LengthCertificate:
    """Instance counts of a word and a certified bound on mu_E of its B-part.

    ``sigma[i]`` is max(#q_i, #q_i^-1); for words representing elements of B
    the two counts agree, so this is the number of instances of q_i.
    """

    sigma: tuple
    alpha: tuple
    mu_bound: int
    exponent: int = 0
    constants: tuple = field(default=(), compare=False)

    @property
    def collected_length(self) -> int:
        return sum(self.alpha) + 2 * sum(self.sigma)


@dataclass(frozen=True)
class CollectingConstants:
    K1: int
    K2: int
    K3: int

    @property
    def base(self) -> int:
        return self.K1 * self.K2 ** 2 * self.K3


def collecting_constants(spec: GroupSpec) -> CollectingConstants:
    """K1 = max |N_i|, K2 = max |M_i|, K3 = max |n_i| over the integral model."""
    model = integral_model(spec)
    K1 = max(operator_norm(M.adjugate()) for M in model)
    K2 = max(operator_norm(M) for M in model)
    K3 = max(abs(M.det) for M in model)
    for K in (K1, K2, K3):
        assert K.denominator == 1
    return CollectingConstants(int(K1), int(K2), int(K3))


def evaluate(w: Word, spec: GroupSpec) -> tuple:
    """Multiply out a word; returns (element, LengthCertificate)."""
    k, n = spec.k, spec.n
    pos = [0] * k
    neg = [0] * k
    alpha = [0] * n
    g = Element.identity(spec)
    for letter in w.letters:
        idx, s = letter
        if not 0 <= idx < k + n or s not in (1, -1):
            raise ValueError(f"unknown letter {letter!r}")
        if idx < k:
            (pos if s > 0 else neg)[idx] += 1
        else:
            alpha[idx - k] += 1
        g = step(g, letter, spec)
    sigma = tuple(max(p, q) for p, q in zip(pos, neg))
    exponent = sum(sigma)
    if not spec.is_integral():
        # q_i -> q_i' s^-1 adds the extra generator s to the collected word
        exponent += max(sum(pos), sum(neg))
    c = collecting_constants(spec)
    bound = c.base ** exponent * max(sum(alpha), 1)
    return g, LengthCertificate(sigma, tuple(alpha), bound, exponent, (c.K1, c.K2, c.K3))


def evaluate_element(w: Word, spec: GroupSpec) -> Element:
    g = Element.identity(spec)
    for letter in w.letters:
        g = step(g, letter, spec)
    return g


def semidirect_split(g: Element) -> tuple:
    """g = q * n with q in Z^k and n in B (returned as an Element with zero exponents)."""
    return g.exponents, Element((0,) * len(g.exponents), g.translation)


def certificate_holds(g: Element, cert: LengthCertificate) -> bool:
    return mu_E(g.translation) <= cert.mu_bound


# -- embedding -----------------------------------------------------------------

def hnn_embed(spec: GroupSpec) -> GroupSpec:
    """The ascending HNN extension over b -> m*b, as (Q + Z) x| B[1/m].

    The new Q-generator acts as m*Id; G sits inside via exponents padded with 0.
    """
    m = spec.m
    if m == 1:
        warnings.warn("clearing integer is 1: the embedding is degenerate (identity action)")
    qs = list(spec.labels[: spec.k])
    name = "s"
    while name in spec.labels:
        name += "'"
    labels = tuple(qs + [name] + list(spec.labels[spec.k:]))
    return GroupSpec(spec.actions + (RationalMatrix.scalar(spec.n, m),), labels, f"{spec.name}*theta" if spec.name else "")


def embed_element(g: Element) -> Element:
    return Element(g.exponents + (0,), g.translation)


def embed_word(w: Word, spec: GroupSpec) -> Word:
    """Re-index a word of G as a word of hnn_embed(G)."""
    k = spec.k
    return Word(tuple((i if i < k else i + 1, s) for i, s in w.letters))


def b_element(spec: GroupSpec, translation: Sequence) -> Element:
    return Element((0,) * spec.k, vector(translation))


def generator_element(spec: GroupSpec, index: int) -> Element:
    if index < spec.k:
        e = [0] * spec.k
        e[index] = 1
        return Element(tuple(e), zero_vector(spec.n))
    return Element((0,) * spec.k, unit_vector(spec.n, index - spec.k))


def rank1_spec(lam, name: str = "") -> GroupSpec:
    """<t> x| Z[lam^+-1] with t acting as multiplication by lam."""
    return GroupSpec((RationalMatrix([[lam]]),), ("t", "a"), name)
