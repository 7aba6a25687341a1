"""Exact dyadic/rational arithmetic, angles as rational turns, and the
number-theoretic predicates that gate invariant-set membership.

Everything in this module is exact: values are arbitrary-precision integers
and fractions, and every predicate is decided by integer arithmetic, never by
floating-point comparison.  Floats appear only in ``*_float`` display helpers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Union

RationalLike = Union[int, Fraction, "Dyadic"]

PYTHAGOREAN_SCAN_BOUND = 20  # largest exponent the brute-force witness will scan


class NotOnInvariantSet(ValueError):
    """A parameter failed a describability gate and is off the invariant set."""


class NoAdmissibleAngle(ValueError):
    """No describable substitute angle lies within the configured window."""


class ResourceBound(RuntimeError):
    """A brute-force or enumeration bound was exceeded."""


def as_fraction(x: RationalLike) -> Fraction:
    if isinstance(x, Dyadic):
        return x.as_fraction()
    return Fraction(x)


@dataclass(frozen=True)
class Dyadic:
    """An exact dyadic rational num / 2**exp.

    Canonical form: ``num`` odd, or ``num == 0 and exp == 0``.  Dyadics carry
    probabilities of the form n/2^N and phase fractions n/2^(N-1) exactly.
    """

    num: int
    exp: int

    def __post_init__(self) -> None:
        num, exp = self.num, self.exp
        if exp < 0:
            num <<= -exp
            exp = 0
        if num == 0:
            exp = 0
        else:
            while num % 2 == 0 and exp > 0:
                num //= 2
                exp -= 1
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "exp", exp)

    @classmethod
    def from_ratio(cls, numerator: int, power_of_two_exp: int) -> "Dyadic":
        return cls(numerator, power_of_two_exp)

    @classmethod
    def from_fraction(cls, fr: RationalLike) -> "Dyadic":
        fr = as_fraction(fr)
        den = fr.denominator
        k = den.bit_length() - 1
        if den != 1 << k:
            raise ValueError(f"{fr} is not dyadic (denominator {den})")
        return cls(fr.numerator, k)

    def as_fraction(self) -> Fraction:
        return Fraction(self.num, 1 << self.exp)

    def as_float(self) -> float:
        return self.num / (1 << self.exp)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Dyadic):
            return (self.num, self.exp) == (other.num, other.exp)
        if isinstance(other, (int, Fraction)):
            return self.as_fraction() == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.as_fraction())

    def __add__(self, other: RationalLike) -> "Dyadic":
        return Dyadic.from_fraction(self.as_fraction() + as_fraction(other))

    def __sub__(self, other: RationalLike) -> "Dyadic":
        return Dyadic.from_fraction(self.as_fraction() - as_fraction(other))

    def __mul__(self, other: RationalLike) -> "Dyadic":
        return Dyadic.from_fraction(self.as_fraction() * as_fraction(other))

    def __lt__(self, other: RationalLike) -> bool:
        return self.as_fraction() < as_fraction(other)

    def __le__(self, other: RationalLike) -> bool:
        return self.as_fraction() <= as_fraction(other)

    def __str__(self) -> str:
        fr = self.as_fraction()
        return f"{fr.numerator}/{fr.denominator}" if fr.denominator != 1 else str(fr.numerator)


@dataclass(frozen=True)
class ExactAngle:
    """An angle stored exactly as its fraction of a full turn, in [0, 1).

    Angles with irrational turn fractions are unrepresentable by construction;
    counterfactual exclusion is expressed through describability predicates,
    never through storing irrational values.
    """

    turns: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "turns", Fraction(self.turns) % 1)

    @classmethod
    def from_turns(cls, numerator: int, denominator: int = 1) -> "ExactAngle":
        return cls(Fraction(numerator, denominator))

    @classmethod
    def parse(cls, text: str) -> "ExactAngle":
        return cls(Fraction(text.strip()))

    def __add__(self, other: "ExactAngle") -> "ExactAngle":
        return ExactAngle(self.turns + other.turns)

    def __sub__(self, other: "ExactAngle") -> "ExactAngle":
        return ExactAngle(self.turns - other.turns)

    def __neg__(self) -> "ExactAngle":
        return ExactAngle(-self.turns)

    def __mul__(self, k: int) -> "ExactAngle":
        return ExactAngle(self.turns * k)

    __rmul__ = __mul__

    def radians_float(self) -> float:
        """Display-only float value; never used in predicates."""
        import math

        return 2.0 * math.pi * float(self.turns)

    def __str__(self) -> str:
        return f"{self.turns} turns"


ZERO_ANGLE = ExactAngle(Fraction(0))
HALF_TURN = ExactAngle(Fraction(1, 2))
QUARTER_TURN = ExactAngle(Fraction(1, 4))


def is_describable(x: RationalLike, n_bits: int) -> bool:
    """True iff x = n / 2**n_bits for some integer n.

    Equivalently: x's lowest-terms denominator divides 2**n_bits.  Monotone in
    n_bits.
    """
    if n_bits < 1:
        raise ValueError("n_bits must be >= 1")
    den = as_fraction(x).denominator
    return den & (den - 1) == 0 and den <= (1 << n_bits)


def dyadic_exponent(x: RationalLike) -> int | None:
    """Exponent k with lowest-terms denominator 2**k, or None if not dyadic."""
    den = as_fraction(x).denominator
    if den & (den - 1):
        return None
    return den.bit_length() - 1


# The full exceptional set of the rational-cosine theorem (Niven): for a
# rational fraction of a turn, cos is rational only on these eight residues.
_EXCEPTIONAL_COS = {
    Fraction(0): Fraction(1),
    Fraction(1, 2): Fraction(-1),
    Fraction(1, 4): Fraction(0),
    Fraction(3, 4): Fraction(0),
    Fraction(1, 6): Fraction(1, 2),
    Fraction(5, 6): Fraction(1, 2),
    Fraction(1, 3): Fraction(-1, 2),
    Fraction(2, 3): Fraction(-1, 2),
}


def cos_exact(angle: ExactAngle) -> Fraction | None:
    """Exact cosine of a rational-turn angle, or None when it is irrational.

    By the rational-cosine theorem, cos of a rational multiple of pi is
    rational exactly when it lies in {0, +-1/2, +-1}; the decision is made by
    the exceptional-set table, not by numerics.  (Proof sketch, usable as an
    algorithm: 2cos(2phi) = (2cos phi)^2 - 2, so a non-unit denominator of
    2cos(phi) grows without bound along the doubling sequence, while a
    rational turn fraction admits only finitely many doubled residues.)
    """
    return _EXCEPTIONAL_COS.get(angle.turns)


def sin_exact(angle: ExactAngle) -> Fraction | None:
    """Exact sine, via sin(2 pi t) = cos(2 pi (t - 1/4))."""
    return cos_exact(ExactAngle(angle.turns - Fraction(1, 4)))


def rational_sqrt(x: RationalLike) -> Fraction | None:
    """Exact square root of a rational if it is a perfect square, else None."""
    fr = as_fraction(x)
    if fr < 0:
        return None
    rn, rd = isqrt(fr.numerator), isqrt(fr.denominator)
    if rn * rn == fr.numerator and rd * rd == fr.denominator:
        return Fraction(rn, rd)
    return None


def pythagorean_solutions(k: int, *, scan_bound: int = PYTHAGOREAN_SCAN_BOUND) -> list[tuple[int, int]]:
    """Scan for positive solutions of a^2 + b^2 = (2^k)^2 with a, b >= 1.

    There are none (Euclid); the exhaustive scan is the executable witness of
    the obstruction that blocks a cosine and its sine from both being dyadic.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if k > scan_bound:
        raise ResourceBound(f"k={k} exceeds the configured scan bound {scan_bound}")
    target = 1 << (2 * k)
    found = []
    for a in range(1, (1 << k) + 1):
        b2 = target - a * a
        if b2 < 1:
            break
        b = isqrt(b2)
        if b * b == b2:
            found.append((a, b))
    return found


# Sine classification statuses used by the addition-obstruction engine.
_SINE_ZERO = "zero"
_SINE_DESCRIBABLE = "describable"
_SINE_IRRATIONAL = "irrational_sine"
_SINE_OBSTRUCTED = "pythagorean_obstruction"

REASON_DESCRIBABLE = "describable"
REASON_IRRATIONAL_SINE = "irrational_sine"
REASON_PYTHAGOREAN = "pythagorean_obstruction"


@dataclass(frozen=True)
class ObstructionVerdict:
    """Outcome of the angle-addition describability test."""

    excluded: bool
    reason: str

    @property
    def verdict(self) -> str:
        return "sum_excluded" if self.excluded else "both_admissible"


def _sine_status(cos_val: Fraction, n_bits: int) -> str:
    s2 = 1 - cos_val * cos_val
    if s2 == 0:
        return _SINE_ZERO
    s = rational_sqrt(s2)
    if s is None:
        return _SINE_IRRATIONAL
    if not is_describable(s, n_bits):
        return _SINE_OBSTRUCTED
    return _SINE_DESCRIBABLE


def simultaneous_describability(cos_a: RationalLike, cos_b: RationalLike, n_bits: int) -> ObstructionVerdict:
    """Decide whether cos(A+B) can still be describable by n_bits.

    Inputs are the two cosines, both required describable (the re-measurement
    argument).  The rule follows the addition formula
    cos(A+B) = cos A cos B - sin A sin B for angles with no functional
    relationship: a zero sine on either side is degenerate (both_admissible);
    otherwise an irrational or non-describable sine on either side excludes
    the sum.  For deliberately correlated angles the true sum-cosine can be
    rational even though both sines are irrational; this engine implements the
    independent-angles argument and reports exclusion in that case too.
    """
    ca, cb = as_fraction(cos_a), as_fraction(cos_b)
    for name, c in (("cos_a", ca), ("cos_b", cb)):
        if not -1 <= c <= 1:
            raise ValueError(f"{name}={c} outside [-1, 1]")
        if not is_describable(c, n_bits):
            raise ValueError(f"{name}={c} is not describable by {n_bits} bits")
    sa, sb = _sine_status(ca, n_bits), _sine_status(cb, n_bits)
    if _SINE_ZERO in (sa, sb):
        return ObstructionVerdict(False, REASON_DESCRIBABLE)
    if _SINE_IRRATIONAL in (sa, sb):
        return ObstructionVerdict(True, REASON_IRRATIONAL_SINE)
    if _SINE_OBSTRUCTED in (sa, sb):
        return ObstructionVerdict(True, REASON_PYTHAGOREAN)
    return ObstructionVerdict(False, REASON_DESCRIBABLE)


def combine_degenerate_cosine(cos_a: Fraction, cos_b: Fraction) -> Fraction:
    """Exact cos(A+B) for the degenerate (both_admissible) cases.

    Valid only when simultaneous_describability did not exclude the pair:
    then at least one sine is zero, or both angles have cosine zero.  Angles
    are taken in [0, pi] so sines are nonnegative.
    """
    ca, cb = as_fraction(cos_a), as_fraction(cos_b)
    sa2, sb2 = 1 - ca * ca, 1 - cb * cb
    if sa2 == 0 or sb2 == 0:
        # sin A = 0 (cos A = +-1): cos(A+B) = cos A * cos B, and symmetrically.
        return ca * cb
    if ca == 0 and cb == 0:
        return Fraction(-1)  # cos(A+B) = -sin A sin B = -1
    raise ValueError("combine_degenerate_cosine called on a non-degenerate pair")


def fraction_str(x: RationalLike) -> str:
    """Serialize a rational as 'numerator/denominator'."""
    fr = as_fraction(x)
    return f"{fr.numerator}/{fr.denominator}"
