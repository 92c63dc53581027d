"""Digit rules, digit extraction, series evaluation, and exact cylinder geometry.

Two series representations of numbers are handled, both driven by a "digit
rule": a sequence of functions phi_n mapping a digit prefix (c_1, ..., c_n) to
a positive integer r_n (with r_0 = phi_0 a constant).  Digits must satisfy
c_n >= r_{n-1} + 1.

Positive form, representing x in (0, 1]:

    x = r_0/p_1 + sum_{n>=1} (r_0 r_1 ... r_n) /
                             ((p_1-1)p_1 (p_2-1)p_2 ... (p_n-1)p_n * p_{n+1})

Alternating form, representing x in (0, 1):

    x = r_0/(q_1-1) - r_0 r_1 / ((q_1-1)q_1 (q_2-1)) + ...
      = sum_{n>=0} (-1)^n (r_0 ... r_n) /
                   ((q_1-1)q_1 ... (q_n-1)q_n * (q_{n+1}-1))

The set of numbers sharing a digit prefix w = (c_1, ..., c_k) is an interval
("cylinder"): half-open (a, b] in the positive form, open (a, b) minus the
countable endpoint set in the alternating form.  Both have the same exact
diameter

    r_0 r_1 ... r_{k-1} / ((c_1-1)c_1 (c_2-1)c_2 ... (c_k-1)c_k).

Everything in this module is exact rational arithmetic; no floats anywhere.

Digit extraction is a derived recursion (obtained by factoring the series into
affine self-similar form; see positive_digits / alternating_digits).
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable, Sequence

from .errors import DomainError, ValidityError

# The universal exact value type: arbitrary-precision rationals in lowest terms.
ExactQ = Fraction

# A digit word is a plain tuple of digits (c_1, ..., c_k); () is the whole space.
DigitWord = tuple

__all__ = [
    "ExactQ",
    "DigitWord",
    "Sign",
    "DigitRule",
    "CylinderInterval",
    "ISPoint",
    "rule_value",
    "validate_word",
    "positive_digits",
    "alternating_digits",
    "partial_sum",
    "cylinder",
    "word_diameter",
    "pierce_notation_convert",
    "traditional_pierce_digits",
]


class Sign(enum.Enum):
    """Which of the two series forms an object refers to."""

    POSITIVE = "P"
    ALTERNATING = "P-"


@dataclass(frozen=True)
class DigitRule:
    """A digit rule: phi_0 plus the map from digit prefixes to r_n.

    kind is one of "luroth", "engel", "engel-mod", "pierce", "oppenheim",
    "custom".  Use the constructors below rather than instantiating directly.

      luroth:    r_n = 1 for all n
      engel:     phi_0 = 1, r_n = c_n - 1        (digits may repeat)
      engel-mod: phi_0 = 1, r_n = c_n            (digits strictly increase)
      pierce:    same rule as engel-mod; conventionally used with the
                 alternating form
      oppenheim: r_n = a*c_n + b (must stay >= 1)
      custom:    r_n = fn(prefix), any pure total function of the prefix
    """

    kind: str
    phi0: int = 1
    a: int = 0
    b: int = 0
    fn: Callable[[DigitWord], int] | None = None

    @classmethod
    def luroth(cls) -> "DigitRule":
        return cls("luroth")

    @classmethod
    def engel(cls) -> "DigitRule":
        return cls("engel")

    @classmethod
    def engel_mod(cls) -> "DigitRule":
        return cls("engel-mod")

    @classmethod
    def pierce(cls) -> "DigitRule":
        return cls("pierce")

    @classmethod
    def oppenheim(cls, a: int, b: int, phi0: int = 1) -> "DigitRule":
        if a < 0 or phi0 < 1:
            raise DomainError("oppenheim needs a >= 0 and phi0 >= 1")
        return cls("oppenheim", phi0=phi0, a=a, b=b)

    @classmethod
    def custom(cls, fn: Callable[[DigitWord], int], phi0: int = 1) -> "DigitRule":
        # fn must be pure and total on valid prefixes; memoized per prefix so
        # deep enumerations never re-evaluate shared prefixes
        if phi0 < 1:
            raise DomainError("phi0 must be >= 1")
        return cls("custom", phi0=phi0, fn=functools.lru_cache(maxsize=None)(fn))


def _step_r(rule: DigitRule, prefix: DigitWord, last_digit: int) -> int:
    """r value after appending last_digit (prefix includes it already).

    For the builtin kinds this depends only on the last digit; custom rules
    see the whole prefix.
    """
    k = rule.kind
    if k == "luroth":
        return 1
    if k == "engel":
        return last_digit - 1
    if k in ("engel-mod", "pierce"):
        return last_digit
    if k == "oppenheim":
        return rule.a * last_digit + rule.b
    if k == "custom":
        return rule.fn(prefix)
    raise ValueError(f"unknown rule kind {k!r}")


def rule_value(rule: DigitRule, prefix: Sequence[int]) -> int:
    """r_k for the given valid prefix of length k (r_0 = phi_0 for ())."""
    prefix = tuple(prefix)
    validate_word(rule, prefix)
    if not prefix:
        return rule.phi0
    return _step_r(rule, prefix, prefix[-1])


def validate_word(rule: DigitRule, word: Sequence[int]) -> None:
    """Raise ValidityError (with 1-based .index) unless every digit obeys c_i >= r_{i-1}+1."""
    word = tuple(word)
    r = rule.phi0
    if r < 1:
        raise ValidityError("phi0 must be >= 1", index=0)
    for i, c in enumerate(word, start=1):
        if not isinstance(c, int) or c < r + 1:
            raise ValidityError(
                f"digit {c!r} at position {i} violates c >= {r + 1}", index=i
            )
        r = _step_r(rule, word[:i], c)
        if r < 1:
            raise ValidityError(
                f"rule value {r} after position {i} is not a positive integer",
                index=i,
            )


@dataclass(frozen=True)
class ISPoint:
    """Signalling outcome: x is an endpoint of an alternating cylinder.

    Such numbers have no alternating representation.  `rank` is the position
    at which the recursion terminated; `digits` are the digits found before
    termination (length rank-1).
    """

    rank: int
    digits: DigitWord


@dataclass(frozen=True)
class CylinderInterval:
    """Exact endpoints and openness flags of a cylinder.

    Positive cylinders are (lo, hi]; alternating cylinders are (lo, hi) with
    the countable set of cylinder endpoints implicitly excluded (represented
    by the both-open flags, never materialized).
    """

    lo: ExactQ
    hi: ExactQ
    lo_included: bool
    hi_included: bool
    sign: Sign
    word: DigitWord

    @property
    def diameter(self) -> ExactQ:
        return self.hi - self.lo

    def contains(self, x: ExactQ) -> bool:
        if x < self.lo or x > self.hi:
            return False
        if x == self.lo:
            return self.lo_included
        if x == self.hi:
            return self.hi_included
        return True


def _check_domain_positive(x: Fraction) -> None:
    if not 0 < x <= 1:
        raise DomainError(f"x = {x} outside (0, 1]")


def _check_domain_alternating(x: Fraction) -> None:
    if not 0 < x < 1:
        raise DomainError(f"x = {x} outside (0, 1)")


def positive_digits(rule: DigitRule, x: ExactQ, n: int) -> DigitWord:
    """First n digits of x in (0, 1] under the positive form.

    Derivation: if x has first digit p and tail value y in (0, 1], the series
    factors as x = r/p + y * r/((p-1)p), so y = (x - r/p)(p-1)p/r and p is the
    unique digit with r/p < x <= r/(p-1), i.e. p = floor(r/x) + 1 (when r/x is
    an integer, x is the included supremum of the digit-(r/x + 1) cylinder).
    Rationals never terminate: an exact supremum leaves remainder exactly 1,
    after which digits stay minimal.
    """
    x = Fraction(x)
    _check_domain_positive(x)
    if n < 0:
        raise DomainError("n must be >= 0")
    a, b = x.numerator, x.denominator
    digits: list[int] = []
    r = rule.phi0
    for _ in range(n):
        p = (r * b) // a + 1
        # remainder (x - r/p)(p-1)p/r = (a*p - r*b)(p-1) / (b*r), still in (0, 1]
        a, b = (a * p - r * b) * (p - 1), b * r
        g = gcd(a, b)
        a //= g
        b //= g
        digits.append(p)
        r = _step_r(rule, tuple(digits), p)
        if r < 1:
            raise ValidityError(
                f"rule value {r} after position {len(digits)} is not positive",
                index=len(digits),
            )
    return tuple(digits)


def alternating_digits(rule: DigitRule, x: ExactQ, n: int) -> DigitWord | ISPoint:
    """First n digits of x in (0, 1) under the alternating form, or ISPoint.

    Analogous factoring: x = r/(q-1) - y * r/((q-1)q) with tail y in (0, 1),
    so y = (r/(q-1) - x)(q-1)q/r and q = floor(r/x) + 1.  When r/x is an
    integer, x is an endpoint of a cylinder (it has no representation); the
    ISPoint outcome reports the rank and the digits found so far.
    """
    x = Fraction(x)
    _check_domain_alternating(x)
    if n < 0:
        raise DomainError("n must be >= 0")
    a, b = x.numerator, x.denominator
    digits: list[int] = []
    r = rule.phi0
    for _ in range(n):
        if (r * b) % a == 0:
            return ISPoint(rank=len(digits) + 1, digits=tuple(digits))
        q = (r * b) // a + 1
        # remainder (r/(q-1) - x)(q-1)q/r = (r*b - a*(q-1))*q / (b*r), in (0, 1)
        a, b = (r * b - a * (q - 1)) * q, b * r
        g = gcd(a, b)
        a //= g
        b //= g
        digits.append(q)
        r = _step_r(rule, tuple(digits), q)
        if r < 1:
            raise ValidityError(
                f"rule value {r} after position {len(digits)} is not positive",
                index=len(digits),
            )
    return tuple(digits)


def partial_sum(rule: DigitRule, word: Sequence[int], sign: Sign) -> ExactQ:
    """Exact value of the first k series terms for the rank-k word.

    Positive: equals the infimum of the word's cylinder.  Alternating: equals
    the supremum for odd k and the infimum for even k (orientation flips each
    rank).  Computed by direct term-by-term summation of the series — kept
    independent of cylinder(), which composes affine maps instead, so the two
    routes cross-check each other.
    """
    word = tuple(word)
    validate_word(rule, word)
    if not word:
        raise ValidityError("word must be nonempty", index=None)
    total = Fraction(0)
    num = rule.phi0  # r_0 r_1 ... r_n running product
    den = 1  # (c_1-1)c_1 ... (c_n-1)c_n running product
    for ni, c in enumerate(word):
        if sign is Sign.POSITIVE:
            total += Fraction(num, den * c)
        else:
            term = Fraction(num, den * (c - 1))
            total += -term if ni % 2 else term
        num *= _step_r(rule, word[: ni + 1], c)
        den *= (c - 1) * c
    return total


def _affine(rule: DigitRule, word: DigitWord, sign: Sign):
    """(off, sc, r) for a valid word: the cylinder's affine description.

    The rank-k cylinder is the image of the tail space under y |-> off + sc*y
    (tail space (0, 1] positive, (0, 1) alternating); sc is signed for the
    alternating form (sign (-1)^k) and |sc| is the cylinder diameter.  r is
    the rule value after the word.  Assumes word already validated.
    """
    off = Fraction(0)
    sc = Fraction(1)
    r = rule.phi0
    for i, c in enumerate(word):
        if sign is Sign.POSITIVE:
            off += sc * Fraction(r, c)
            sc *= Fraction(r, (c - 1) * c)
        else:
            off += sc * Fraction(r, c - 1)
            sc *= Fraction(-r, (c - 1) * c)
        r = _step_r(rule, word[: i + 1], c)
    return off, sc, r


def cylinder(rule: DigitRule, word: Sequence[int], sign: Sign) -> CylinderInterval:
    """Exact cylinder of a nonempty valid word.

    Endpoints come from composing the rank-wise affine maps
    y |-> r/p + y*r/((p-1)p)   (positive, orientation kept) and
    y |-> r/(q-1) - y*r/((q-1)q)   (alternating, orientation flipped),
    so the diameter is exactly r_0...r_{k-1} / prod (c_i - 1)c_i for both.
    """
    word = tuple(word)
    validate_word(rule, word)
    if not word:
        raise ValidityError("word must be nonempty", index=None)
    off, sc, _ = _affine(rule, word, sign)
    if sign is Sign.POSITIVE:
        return CylinderInterval(off, off + sc, False, True, sign, word)
    lo, hi = (off + sc, off) if sc < 0 else (off, off + sc)
    return CylinderInterval(lo, hi, False, False, sign, word)


def word_diameter(rule: DigitRule, word: Sequence[int]) -> ExactQ:
    """Exact cylinder diameter of a valid nonempty word (same for both signs)."""
    word = tuple(word)
    validate_word(rule, word)
    if not word:
        raise ValidityError("word must be nonempty", index=None)
    num = rule.phi0
    den = 1
    for i, c in enumerate(word):
        den *= (c - 1) * c
        if i + 1 < len(word):
            num *= _step_r(rule, word[: i + 1], c)
    return Fraction(num, den)


def pierce_notation_convert(word: Sequence[int], direction: str) -> DigitWord:
    """Shift between the two digit notations for the alternating strictly-
    increasing-rule expansion.

    direction "perron-to-traditional" subtracts 1 from every digit (input
    must be a valid word for the pierce rule: strictly increasing, first
    digit >= 2); "traditional-to-perron" adds 1 (input must be strictly
    increasing with first digit >= 1).
    """
    word = tuple(word)
    if direction == "perron-to-traditional":
        validate_word(DigitRule.pierce(), word)
        return tuple(c - 1 for c in word)
    if direction == "traditional-to-perron":
        prev = 0
        for i, c in enumerate(word, start=1):
            if not isinstance(c, int) or c < 1 or c <= prev:
                raise ValidityError(
                    f"traditional digit {c!r} at position {i} must exceed {max(prev, 0)}",
                    index=i,
                )
            prev = c
        return tuple(c + 1 for c in word)
    raise DomainError(f"unknown direction {direction!r}")


def traditional_pierce_digits(x: ExactQ) -> DigitWord:
    """Finite greedy alternating-expansion digits of a rational x in (0, 1).

    a_1 = floor(1/x), x <- 1 - a_1 x, repeated until the remainder is 0;
    rationals always terminate and the digits strictly increase.
    """
    x = Fraction(x)
    _check_domain_alternating(x)
    a, b = x.numerator, x.denominator
    digits = []
    while a:
        d = b // a
        digits.append(d)
        # 1 - d*(a/b) = (b - d*a)/b, then denominators cancel against b
        a, b = b - d * a, b
        g = gcd(a, b)
        a //= g
        b //= g
    return tuple(digits)
