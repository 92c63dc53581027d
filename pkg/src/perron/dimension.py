"""Rank-k Hausdorff-dimension estimation for digit-defined sets.

A set of numbers is described by a hereditary digit predicate (any extension
of an incompatible word stays incompatible).  At rank k with digits capped at
C the compatible words give a cylinder cover of the set, and the estimator
solves the pressure equation

    sum over compatible rank-k words of |cylinder|**s = 1

for s by bisection; the root is a computable upper-dimension approximant
whose quality improves with rank and cap.  The true dimensions of the
limit-defined sets these predicates approximate are asymptotic statements
and are not computed here; only cap/rank-indexed approximants are reported,
always together with their rank and cap.

Exact cylinder diameters feed the floating-point pressure sums; diameters
enter as exp(s * (log num - log den)) so even astronomically small cylinders
contribute without intermediate underflow, and summation is compensated
(math.fsum).  Terms below the double-precision underflow threshold contribute
0.0; coverage of that regime is out of scope.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Sequence

from .core import DigitRule, DigitWord, ExactQ, Sign, _step_r, cylinder
from .errors import CapTooSmallWarning, DomainError

__all__ = [
    "DigitPredicate",
    "DimensionEstimate",
    "all_digits",
    "alphabet_restrict",
    "bounded_ratio",
    "growth_floor",
    "ratio_limit_window",
    "enumerate_compatible_bases",
    "pressure_root",
    "moran_dimension",
    "measure_at_rank",
]

_MAX_BISECT = 200


class DigitPredicate:
    """Hereditary compatibility test on digit words.

    classify(word) returns True (compatible) or False (incompatible); it must
    be hereditary: once a word is incompatible, every extension is too.  The
    enumeration below relies on that to prune whole subtrees.
    """

    def __init__(self, classify: Callable[[DigitWord], bool], description: str):
        self.classify = classify
        self.description = description

    def __call__(self, word: DigitWord) -> bool:
        return self.classify(word)

    def __repr__(self):
        return f"DigitPredicate({self.description})"


def all_digits() -> DigitPredicate:
    """No restriction beyond rule validity."""
    pred = DigitPredicate(lambda word: True, "all")
    pred.is_all = True
    return pred


def alphabet_restrict(allowed: Sequence[int]) -> DigitPredicate:
    """Every digit drawn from a fixed finite set."""
    allowed_set = frozenset(allowed)
    if not allowed_set:
        raise DomainError("allowed digit set must be nonempty")
    pred = DigitPredicate(
        lambda word: all(c in allowed_set for c in word),
        f"alphabet{sorted(allowed_set)}",
    )
    pred.allowed = tuple(sorted(allowed_set))  # enables the fast enumeration path
    return pred


def bounded_ratio(k: ExactQ) -> DigitPredicate:
    """Consecutive digit ratios c_{n+1}/c_n bounded by k (exact comparison)."""
    k = Fraction(k)
    if k <= 0:
        raise DomainError("ratio bound must be positive")

    def classify(word: DigitWord) -> bool:
        return all(word[i + 1] <= k * word[i] for i in range(len(word) - 1))

    return DigitPredicate(classify, f"ratio<={k}")


def growth_floor(psi: Callable[[int], ExactQ]) -> DigitPredicate:
    """Digit at 1-based position n at least psi(n), for all n."""

    def classify(word: DigitWord) -> bool:
        return all(c >= psi(n) for n, c in enumerate(word, start=1))

    return DigitPredicate(classify, "growth-floor")


def ratio_limit_window(alpha: float, delta: float) -> DigitPredicate:
    """|log c_{n+1} / log c_n - alpha| <= delta for all consecutive pairs.

    A prefix relaxation of sets defined by the limit of log-digit ratios:
    every word of the limit set eventually satisfies the window, and the
    predicate approximates such sets from outside at each rank.
    """
    if delta < 0:
        raise DomainError("delta must be >= 0")

    def classify(word: DigitWord) -> bool:
        for i in range(len(word) - 1):
            ratio = math.log(word[i + 1]) / math.log(word[i])
            if abs(ratio - alpha) > delta:
                return False
        return True

    return DigitPredicate(classify, f"ratio-window({alpha},{delta})")


def enumerate_compatible_bases(
    rule: DigitRule,
    predicate: DigitPredicate,
    rank: int,
    digit_cap: int,
) -> Iterator[DigitWord]:
    """All valid rank-`rank` words with digits <= digit_cap passing the predicate.

    Deterministic lexicographic order.  Warns CapTooSmallWarning (once) when
    the cap cuts off every admissible digit at some position, i.e. when a
    compatible prefix has no rule-admissible child <= digit_cap although
    admissible children exist beyond it.
    """
    if rank < 1:
        raise DomainError("rank must be >= 1")
    if digit_cap < rule.phi0 + 1:
        raise DomainError(f"digit_cap must be >= {rule.phi0 + 1}")
    allowed = getattr(predicate, "allowed", None)
    warned = [False]

    def warn_once():
        if not warned[0]:
            warned[0] = True
            warnings.warn(
                f"digit_cap {digit_cap} excludes all digits at some position",
                CapTooSmallWarning,
                stacklevel=3,
            )

    def descend(word: DigitWord, r: int) -> Iterator[DigitWord]:
        lo = r + 1
        if allowed is not None:
            candidates = [c for c in allowed if lo <= c <= digit_cap]
            if not candidates and any(c >= lo for c in allowed):
                warn_once()
        else:
            if lo > digit_cap:
                warn_once()
            candidates = range(lo, digit_cap + 1)
        for c in candidates:
            child = word + (c,)
            if not predicate(child):
                continue
            r_child = _step_r(rule, child, c)
            if r_child < 1:
                continue  # digit admissible but rule value degenerates: prune
            if len(child) == rank:
                yield child
            else:
                yield from descend(child, r_child)

    yield from descend((), rule.phi0)


@dataclass(frozen=True)
class DimensionEstimate:
    """Pressure-equation root at a given rank and digit cap.

    residual is |sum |cylinder|**s - 1| at the returned s; it is <= the
    requested tolerance whenever at least one base exists (for an empty base
    set s = 0 is reported by convention and the residual is the honest 1.0).
    """

    rank: int
    digit_cap: int
    s_value: float
    residual: float
    bases_count: int


def _log_diameter(rule: DigitRule, word: DigitWord, sign: Sign) -> float:
    d = cylinder(rule, word, sign).diameter
    return math.log(d.numerator) - math.log(d.denominator)


def pressure_root(
    rule: DigitRule,
    sign: Sign,
    predicate: DigitPredicate,
    rank: int,
    digit_cap: int,
    tol: float,
) -> DimensionEstimate:
    """Bisection root of sum |cylinder|**s = 1 over compatible rank-k bases.

    The sum is strictly decreasing in s; at s=0 it counts the bases (>= 1
    when any exist) and at s=1 it is a capped outer measure, strictly below 1
    because the cap always excludes cylinder mass.  Bisection therefore
    brackets on [0, 1.5] and stops when |sum - 1| <= tol.  One base forces
    s = 0 exactly; no bases reports s = 0 with bases_count 0.

    Diameters are computed through the sign-aware cylinder endpoints, so the
    positive and alternating estimates agree bit-for-bit exactly when the two
    affine endpoint routes produce equal diameters, which the equal-diameter
    law guarantees.
    """
    if tol <= 0:
        raise DomainError("tol must be positive")
    bases = list(enumerate_compatible_bases(rule, predicate, rank, digit_cap))
    if not bases:
        return DimensionEstimate(rank, digit_cap, 0.0, 1.0, 0)
    logs = [_log_diameter(rule, w, sign) for w in bases]

    def f(s: float) -> float:
        return math.fsum(math.exp(s * ld) for ld in logs) - 1.0

    lo, hi = 0.0, 1.5
    f_lo = f(lo)
    if abs(f_lo) <= tol:
        return DimensionEstimate(rank, digit_cap, 0.0, abs(f_lo), len(bases))
    if f_lo < 0:  # cannot happen: f(0) = bases_count - 1 >= 0
        raise DomainError("pressure sum below 1 at s = 0")
    for _ in range(_MAX_BISECT):
        mid = (lo + hi) / 2
        fm = f(mid)
        if abs(fm) <= tol:
            s, residual = mid, abs(fm)
            break
        if fm > 0:
            lo = mid
        else:
            hi = mid
    else:
        mid = (lo + hi) / 2
        s, residual = mid, abs(f(mid))
    return DimensionEstimate(rank, digit_cap, s, residual, len(bases))


def moran_dimension(ratios: Sequence[ExactQ], tol: float = 1e-12) -> float:
    """Unique s in [0, 1] with sum ratios**s = 1, by bisection.

    Independent of the pressure machinery on purpose (it is the oracle for
    pressure_root on multiplicative digit restrictions): ratios arrive as a
    plain list, terms are evaluated as float(ratio)**s, and the bracket is
    [0, 1].  Requires every ratio in (0, 1) exactly and sum of ratios <= 1
    (so the root lies in the bracket).
    """
    if tol <= 0:
        raise DomainError("tol must be positive")
    ratios = [Fraction(r) for r in ratios]
    if not ratios:
        raise DomainError("need at least one ratio")
    for r in ratios:
        if not 0 < r < 1:
            raise DomainError(f"ratio {r} outside (0, 1)")
    if sum(ratios) > 1:
        raise DomainError("ratios must sum to at most 1")
    floats = [float(r) for r in ratios]

    def f(s: float) -> float:
        return math.fsum(x**s for x in floats) - 1.0

    if abs(f(0.0)) <= tol:
        return 0.0
    if abs(f(1.0)) <= tol:
        return 1.0
    lo, hi = 0.0, 1.0
    for _ in range(_MAX_BISECT):
        mid = (lo + hi) / 2
        fm = f(mid)
        if abs(fm) <= tol:
            return mid
        if fm > 0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def measure_at_rank(
    rule: DigitRule,
    sign: Sign,
    predicate: DigitPredicate,
    rank: int,
    digit_cap: int | None,
) -> ExactQ:
    """Exact sum of compatible rank-k cylinder diameters (outer measure bound).

    With digit_cap None the sum is only computable in closed form for the
    unrestricted predicate, where rank-k cylinders tile the whole space and
    the telescoped total is exactly 1; any other predicate needs a finite
    cap.  Non-increasing in rank for hereditary predicates (children of a
    compatible word cover at most their parent).
    """
    if rank < 1:
        raise DomainError("rank must be >= 1")
    if digit_cap is None:
        if not getattr(predicate, "is_all", False):
            raise DomainError("digit_cap required for restricted predicates")
        return Fraction(1)
    total = Fraction(0)
    for word in enumerate_compatible_bases(rule, predicate, rank, digit_cap):
        total += cylinder(rule, word, sign).diameter
    return total
