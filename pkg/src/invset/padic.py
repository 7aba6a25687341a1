"""p-adic valuation, norm and metric on rationals; truncated p-adic integers;
the digit-wise homeomorphism onto the Cantor set C(p); distance probes.

C(p) is the Cantor set whose level-k iterate splits each interval into 2p-1
equal pieces and keeps every second one (p pieces); its similarity dimension
is log p / log(2p-1).  A truncated p-adic integer maps into C(p) by sending
digit a_k to the term 2*a_k/(2p-1)^(k+1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable

from .exactmath import RationalLike, ResourceBound, as_fraction, fraction_str

CANTOR_ITERATE_BOUND = 1 << 20  # max number of intervals cantor_iterates will build

Infinity = math.inf


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"p={p} is not prime; the p-adic metric needs a prime")


def _int_ord(n: int, p: int) -> int:
    k = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        k += 1
    return k


def ord_p(x: RationalLike, p: int):
    """The p-adic order: highest power of p dividing x (ord of a minus ord of
    b for x = a/b); +infinity for x = 0."""
    _require_prime(p)
    fr = as_fraction(x)
    if fr == 0:
        return Infinity
    return _int_ord(fr.numerator, p) - _int_ord(fr.denominator, p)


def padic_norm(x: RationalLike, p: int) -> Fraction:
    """|x|_p = p**(-ord_p(x)); 0 for x = 0."""
    o = ord_p(x, p)
    if o is Infinity:
        return Fraction(0)
    return Fraction(1, p**o) if o >= 0 else Fraction(p ** (-o))


def padic_dist(a: RationalLike, b: RationalLike, p: int) -> Fraction:
    """The ultrametric d_p(a, b) = |a - b|_p, exact."""
    return padic_norm(as_fraction(a) - as_fraction(b), p)


@dataclass(frozen=True)
class PadicInt:
    """A base-p digit sequence a_0..a_{K-1}, truncated at precision K.

    Results that depend on digits are K-truncations; equality is compared only
    up to the shared precision.
    """

    p: int
    digits: tuple[int, ...]

    def __post_init__(self) -> None:
        _require_prime(self.p)
        if len(self.digits) < 1:
            raise ValueError("at least one digit required")
        if any(not 0 <= d < self.p for d in self.digits):
            raise ValueError(f"digits must lie in 0..{self.p - 1}")
        object.__setattr__(self, "digits", tuple(self.digits))

    @property
    def precision(self) -> int:
        return len(self.digits)

    @classmethod
    def from_int(cls, n: int, p: int, precision: int = 16) -> "PadicInt":
        _require_prime(p)
        n %= p**precision
        digits = []
        for _ in range(precision):
            n, d = divmod(n, p)
            digits.append(d)
        return cls(p, tuple(digits))

    def value(self) -> int:
        """The truncated integer sum(a_k * p**k)."""
        return sum(d * self.p**k for k, d in enumerate(self.digits))

    def shared_prefix(self, other: "PadicInt") -> int:
        if self.p != other.p:
            raise ValueError("mixed primes")
        n = min(self.precision, other.precision)
        for i in range(n):
            if self.digits[i] != other.digits[i]:
                return i
        return n

    def agrees_with(self, other: "PadicInt") -> bool:
        """Equality up to the shared precision."""
        n = min(self.precision, other.precision)
        return self.shared_prefix(other) >= n


def cantor_map(z: PadicInt) -> Fraction:
    """K-digit truncation of the homeomorphism into C(p).

    Returns sum over k < K of 2*a_k/(2p-1)^(k+1); the image lies in the
    level-K interval selected by the digits.
    """
    q = 2 * z.p - 1
    total = Fraction(0)
    for k, d in enumerate(z.digits):
        total += Fraction(2 * d, q ** (k + 1))
    return total


@dataclass(frozen=True)
class CantorInterval:
    """A level-k interval of C(p), addressed by its digit path."""

    p: int
    level: int
    path: tuple[int, ...]
    left: Fraction
    right: Fraction

    def width(self) -> Fraction:
        return self.right - self.left

    def contains(self, x: RationalLike) -> bool:
        fx = as_fraction(x)
        return self.left <= fx <= self.right

    def record(self) -> dict:
        """JSON-serializable record with exact endpoints."""
        return {
            "p": self.p,
            "level": self.level,
            "path": list(self.path),
            "left": fraction_str(self.left),
            "right": fraction_str(self.right),
        }


def interval_for_path(p: int, path: Iterable[int]) -> CantorInterval:
    path = tuple(path)
    if any(not 0 <= c < p for c in path):
        raise ValueError(f"path entries must lie in 0..{p - 1}")
    q = 2 * p - 1
    left = Fraction(0)
    for k, c in enumerate(path):
        left += Fraction(2 * c, q ** (k + 1))
    width = Fraction(1, q ** len(path))
    return CantorInterval(p, len(path), path, left, left + width)


def interval_for(z: PadicInt, level: int) -> CantorInterval:
    """The level-l interval containing the image of z (l <= precision)."""
    if level > z.precision:
        raise ValueError("level exceeds the stored precision")
    return interval_for_path(z.p, z.digits[:level])


def cantor_iterates(p: int, level: int, *, bound: int = CANTOR_ITERATE_BOUND) -> list[CantorInterval]:
    """All p**level intervals of the level-th iterate, in path-lexicographic
    order.  p >= 2 here need not be prime: the keep-every-second-subinterval
    construction is pure geometry."""
    if p < 2:
        raise ValueError("p must be >= 2")
    if level < 0:
        raise ValueError("level must be >= 0")
    if p**level > bound:
        raise ResourceBound(f"{p}**{level} intervals exceed the bound {bound}")
    return [interval_for_path(p, path) for path in product(range(p), repeat=level)]


def similarity_dimension(p: int) -> float:
    """log p / log(2p-1); tends to 1 from below as p grows."""
    return math.log(p) / math.log(2 * p - 1)


@dataclass(frozen=True)
class ProbeReport:
    """Euclid-close versus p-adically-far demonstration record."""

    p: int
    a_value: int
    b_off: Fraction
    euclid_gap: Fraction
    padic_gap: Fraction

    @property
    def padic_gap_lower_bound(self) -> int:
        return self.p

    def record(self) -> dict:
        return {
            "p": self.p,
            "a_value": self.a_value,
            "b_off": fraction_str(self.b_off),
            "euclid_gap": fraction_str(self.euclid_gap),
            "padic_gap": fraction_str(self.padic_gap),
            "padic_gap_lower_bound": self.p,
        }


def euclid_padic_probe(a: PadicInt, b_off: RationalLike) -> ProbeReport:
    """Compare Euclidean and p-adic gaps between a p-adic integer and a point
    outside the p-adic integers.

    Precondition: ord_p(b_off) < 0, so b_off is a p-adic rational that is not
    a p-adic integer; then d_p(a, b_off) >= p always, however small the
    Euclidean gap on the coordinate line.  (No inverse map from arbitrary unit
    interval rationals is assumed; the probe works in p-adic coordinates.)
    """
    b = as_fraction(b_off)
    if ord_p(b, a.p) >= 0:
        raise ValueError(f"ord_{a.p}({b}) >= 0: probe point must lie outside the p-adic integers")
    av = a.value()
    euclid = abs(Fraction(av) - b)
    padic = padic_dist(av, b, a.p)
    return ProbeReport(a.p, av, b, euclid, padic)
