"""Bit-string sample spaces over a two-outcome regime alphabet and the
permutation operators that realize complex roots of unity on them.

A string holds 2**N labels from {first regime, negated regime}; serialized,
the first label is the leftmost character, 0 for the first regime and 1 for
its negation.  Internally labels are packed into one arbitrary-precision int
(bit j = label j), so rotations, pairwise quarter-turns, negation, selection
masks and label counts are all word-level operations.

Two operators act on strings:

* ``pair_shift`` rotates the labels left in pairs; 2**(N-1) shifts are the
  identity, so shifts realize the 2**(N-1)-th roots of unity.
* ``quarter_turn`` maps each adjacent pair (x, y) to (not-y, x); two
  applications negate every label and four are the identity, so it realizes
  the imaginary unit.

On the canonical string (four concatenated blocks generated from an all-first
block by repeated quarter-turns) one quarter-turn equals 2**(N-3) pair-shifts,
which ties the two groups together and lets a phase of n/2**(N-1) turns act as
n pair-shifts.  Amplitudes enter by flipping the first occurrences of one
label in the constructed order; the resulting first-label fraction is exactly
cos^2(theta/2) whenever that value is describable by N bits.  Parameters that
fail a describability gate raise NotOnInvariantSet - they are never rounded.

Strings with at most 2**24 labels are explicit; beyond that only the compact
orbit descriptor is stored and only descriptor-closed operations are
available (the mathematics is representation-independent; equivalence of the
two representations is exercised in the tests where both exist).

Every value is immutable and every operation pure, so parameter sweeps are
embarrassingly parallel and merge deterministically.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache

from .exactmath import (
    Dyadic,
    ExactAngle,
    NotOnInvariantSet,
    ResourceBound,
    cos_exact,
    is_describable,
)

EXPLICIT_LABEL_LIMIT = 1 << 24


@dataclass(frozen=True)
class OrbitDescriptor:
    """Compact construction record: expanding it reproduces the string.

    ``rotation`` counts pair-shifts applied to the canonical string (mod
    2**(N-1)); ``first_count`` is the number of first-regime labels after the
    amplitude flips.
    """

    n_bits: int
    rotation: int
    first_count: int

    def __post_init__(self) -> None:
        half = 1 << (self.n_bits - 1)
        object.__setattr__(self, "rotation", self.rotation % half)
        if not 0 <= self.first_count <= (1 << self.n_bits):
            raise ValueError("first_count out of range")

    def record(self) -> dict:
        return {"n_bits": self.n_bits, "rotation": self.rotation, "theta_count": self.first_count}


@dataclass(frozen=True)
class BitString:
    """An ordered string of 2**n_bits two-valued labels.

    ``bits`` is the packed label int (None for descriptor-only strings);
    ``tag`` names the regime pair, e.g. "a" for regimes a / not-a.
    """

    n_bits: int
    bits: int | None
    tag: str = "a"
    descriptor: OrbitDescriptor | None = None

    def __post_init__(self) -> None:
        if self.n_bits < 3:
            raise ValueError("n_bits must be >= 3 so quarter-turns are pair-shift powers")
        if self.bits is None and self.descriptor is None:
            raise ValueError("descriptor-only strings need a descriptor")
        if self.bits is not None and not 0 <= self.bits < (1 << self.size):
            raise ValueError("packed labels out of range")

    @property
    def size(self) -> int:
        return 1 << self.n_bits

    @property
    def explicit(self) -> bool:
        return self.bits is not None


def regime_names(s: BitString) -> tuple[str, str]:
    return s.tag, f"not_{s.tag}"


def _full_mask(n_bits: int) -> int:
    return (1 << (1 << n_bits)) - 1


def _even_mask(length: int) -> int:
    # bits 0, 2, 4, ... of a length-bit word
    return ((1 << length) - 1) // 3


@lru_cache(maxsize=None)
def _canonical_bits(n_bits: int) -> int:
    quarter = 1 << (n_bits - 2)
    evens = ((1 << quarter) - 1) // 3
    ones = (1 << quarter) - 1
    return (evens << quarter) | (ones << (2 * quarter)) | ((evens << 1) << (3 * quarter))


def _rot_left(bits: int, labels: int, length: int) -> int:
    s = labels % length
    if s == 0:
        return bits
    return ((bits >> s) | ((bits & ((1 << s) - 1)) << (length - s))) & ((1 << length) - 1)


def _quarter_once(bits: int, length: int) -> int:
    full = (1 << length) - 1
    even = _even_mask(length)
    return (((bits >> 1) ^ full) & even) | ((bits & even) << 1)


def _lowest_set_mask(x: int, k: int) -> int:
    """Mask of the k lowest set bits of x (binary search on prefix popcount)."""
    if k == 0:
        return 0
    if x.bit_count() < k:
        raise ValueError("fewer set bits than requested")
    lo, hi = 1, x.bit_length()
    while lo < hi:
        mid = (lo + hi) // 2
        if (x & ((1 << mid) - 1)).bit_count() >= k:
            hi = mid
        else:
            lo = mid + 1
    return x & ((1 << lo) - 1)


def canonical_string(n_bits: int, tag: str = "a") -> BitString:
    """The canonical string: all-first block, then its first, second and third
    quarter-turns, concatenated.  Exactly half the labels are the first
    regime, and one quarter-turn equals 2**(n_bits-3) pair-shifts on it."""
    return sample_from_counts(n_bits, 1 << (n_bits - 1), 0, tag)


def sample_from_counts(n_bits: int, first_count: int, rotation: int = 0, tag: str = "a") -> BitString:
    """Construct the string with the given rotation and first-label count.

    This is the representation-level constructor: rotate the canonical string
    by ``rotation`` pair-shifts, then flip the first occurrences of one label
    until ``first_count`` labels are the first regime.
    """
    if n_bits < 3:
        raise ValueError("n_bits must be >= 3")
    length = 1 << n_bits
    half = length >> 1
    if not 0 <= first_count <= length:
        raise ValueError("first_count out of range")
    desc = OrbitDescriptor(n_bits, rotation, first_count)
    if length > EXPLICIT_LABEL_LIMIT:
        return BitString(n_bits, None, tag, desc)
    bits = _rot_left(_canonical_bits(n_bits), 2 * desc.rotation, length)
    if first_count >= half:
        mask = _lowest_set_mask(bits, first_count - half)
        bits ^= mask
    else:
        zeros = bits ^ ((1 << length) - 1)
        mask = _lowest_set_mask(zeros, half - first_count)
        bits |= mask
    return BitString(n_bits, bits, tag, desc)


def expand(s: BitString) -> BitString:
    """Materialize the explicit labels of a descriptor-only string."""
    if s.explicit:
        return s
    if s.size > EXPLICIT_LABEL_LIMIT:
        raise ResourceBound(f"2**{s.n_bits} labels exceed the explicit limit")
    d = s.descriptor
    return sample_from_counts(d.n_bits, d.first_count, d.rotation, s.tag)


def first_label_count(s: BitString) -> int:
    if s.explicit:
        return s.size - s.bits.bit_count()
    return s.descriptor.first_count


def fraction(s: BitString) -> Dyadic:
    """Probability that a randomly chosen label is the first regime: exact
    count over 2**N."""
    return Dyadic(first_label_count(s), s.n_bits)


def _shift_descriptor(desc: OrbitDescriptor | None, n_bits: int, n: int) -> OrbitDescriptor | None:
    if desc is None:
        return None
    length = 1 << n_bits
    if desc.first_count in (0, length):
        return desc  # constant string: rotation is invisible
    if desc.first_count == length >> 1:
        return replace(desc, rotation=desc.rotation + n)
    # Amplitude-flipped strings do not commute with rotation position-wise;
    # the result is a raw string.
    return None


def pair_shift(s: BitString, n: int = 1) -> BitString:
    """Rotate labels left by 2n positions (n pair-steps); order 2**(N-1)."""
    desc = _shift_descriptor(s.descriptor, s.n_bits, n)
    if not s.explicit:
        if desc is None:
            raise ResourceBound("explicit labels required to shift this string")
        return replace(s, descriptor=desc)
    return replace(s, bits=_rot_left(s.bits, 2 * (n % (s.size >> 1)), s.size), descriptor=desc)


def negate(s: BitString) -> BitString:
    """Flip every label; equals two quarter-turns and 2**(N-2) pair-shifts."""
    desc = s.descriptor
    if desc is not None:
        desc = OrbitDescriptor(
            desc.n_bits,
            desc.rotation + (1 << (s.n_bits - 2)),
            s.size - desc.first_count,
        )
    bits = None if s.bits is None else s.bits ^ _full_mask(s.n_bits)
    return replace(s, bits=bits, descriptor=desc)


def quarter_turn(s: BitString, n: int = 1) -> BitString:
    """Apply the pairwise (x, y) -> (not-y, x) operator n times.

    Order four; two applications negate the string.  On canonical-derived
    phase strings one application equals 2**(N-3) pair-shifts.
    """
    q = n % 4
    if q == 0:
        return s
    if q >= 2:
        s = negate(s)
        q -= 2
    if q == 0:
        return s
    desc = s.descriptor
    if desc is not None and desc.first_count == s.size >> 1:
        desc = replace(desc, rotation=desc.rotation + (1 << (s.n_bits - 3)))
    else:
        desc = None
    if not s.explicit:
        if desc is None:
            raise ResourceBound("explicit labels required to quarter-turn this string")
        return replace(s, descriptor=desc)
    return replace(s, bits=_quarter_once(s.bits, s.size), descriptor=desc)


def phase_string(n_bits: int, phi: ExactAngle, tag: str = "a") -> BitString:
    """The canonical string advanced by the phase phi.

    Admissible phases have phi (as a fraction of a full turn) equal to
    n/2**(N-1): exactly the phases whose exponential the pair-shift group can
    realize.
    """
    if not is_describable(phi.turns, n_bits - 1):
        raise NotOnInvariantSet(
            f"phase {phi} is not a multiple of 1/2**{n_bits - 1} of a turn"
        )
    rotation = int(phi.turns * (1 << (n_bits - 1)))
    return sample_from_counts(n_bits, 1 << (n_bits - 1), rotation, tag)


def sample(n_bits: int, theta: ExactAngle, phi: ExactAngle, tag: str = "a") -> BitString:
    """The string whose first-label fraction is cos^2(theta/2) at phase phi.

    Starting from the phase string, the first 2**(N-1)cos(theta) negated
    labels are flipped to the first regime when 0 <= theta <= pi/2, and the
    first -2**(N-1)cos(theta) first-regime labels are flipped the other way
    when pi/2 <= theta <= pi.  Gates: cos^2(theta/2) must be describable by N
    bits and the phase by N-1 bits.
    """
    turns = theta.turns
    if turns > Fraction(1, 2):
        turns = 1 - turns  # normalize into [0, pi]
    c = cos_exact(ExactAngle(turns))
    if c is None:
        raise NotOnInvariantSet(f"cos(theta) for theta={theta} is irrational")
    amp = (1 + c) / 2
    if not is_describable(amp, n_bits):
        raise NotOnInvariantSet(f"cos^2(theta/2)={amp} is not describable by {n_bits} bits")
    if not is_describable(phi.turns, n_bits - 1):
        raise NotOnInvariantSet(
            f"phase {phi} is not a multiple of 1/2**{n_bits - 1} of a turn"
        )
    rotation = int(phi.turns * (1 << (n_bits - 1)))
    return sample_from_counts(n_bits, int(amp * (1 << n_bits)), rotation, tag)


def sample_equivalent(x: BitString, y: BitString) -> bool:
    """Sample-space equality: same labels modulo order (label counts agree)."""
    if x.n_bits != y.n_bits:
        raise ValueError("length mismatch")
    return first_label_count(x) == first_label_count(y)


@dataclass(frozen=True)
class HilbertShadow:
    """Exact parameters of the unit vector a constructed string corresponds
    to: cos(theta/2)|first> + e^(i phi) sin(theta/2)|negated>."""

    amplitude_sq: Dyadic  # cos^2(theta/2)
    phase_turns: Dyadic  # phi as a fraction of a full turn
    phase_relevant: bool  # False for the pure states theta = 0, pi


def hilbert_shadow(s: BitString) -> HilbertShadow:
    """Read the Hilbert-vector parameters off a constructed string.

    The correspondence is an injection from constructions, not a surjection
    from raw strings: strings without an orbit descriptor are rejected.
    """
    d = s.descriptor
    if d is None:
        raise ValueError("raw string: no Hilbert correspondence without a construction descriptor")
    return HilbertShadow(
        amplitude_sq=Dyadic(d.first_count, s.n_bits),
        phase_turns=Dyadic(d.rotation, s.n_bits - 1),
        phase_relevant=d.first_count not in (0, s.size),
    )


def to_text(s: BitString) -> str:
    """Serialize: one character per label, first label leftmost, 0 = first
    regime, 1 = negated."""
    s = expand(s)
    return "".join("1" if (s.bits >> j) & 1 else "0" for j in range(s.size))


def from_text(line: str, tag: str = "a") -> BitString:
    line = line.strip()
    length = len(line)
    n_bits = length.bit_length() - 1
    if length != 1 << n_bits or n_bits < 3:
        raise ValueError("line length must be 2**N with N >= 3")
    if set(line) - {"0", "1"}:
        raise ValueError("labels must be 0 or 1")
    bits = sum(1 << j for j, ch in enumerate(line) if ch == "1")
    return BitString(n_bits, bits, tag, None)


def rotation_table(n_bits: int, shifts: tuple[int, ...] = (0, 1, 2, 4)) -> list[str]:
    """Serialized canonical string and selected pair-shifts of it."""
    base = canonical_string(n_bits)
    return [to_text(pair_shift(base, n)) for n in shifts]


@dataclass(frozen=True)
class TrajectoryBundle:
    """A trajectory at refinement level k together with the regime labels of
    its 2**N children at level k+1."""

    level: int
    parent: str
    children: BitString

    @property
    def attracted_count(self) -> int:
        return first_label_count(self.children)


def haar(b: TrajectoryBundle) -> Dyadic:
    """Counting-measure probability: the fraction of children attracted to
    the bundle's first regime."""
    return fraction(b.children)


def bundle_refine(b: TrajectoryBundle, chosen: str, next_labels: BitString) -> TrajectoryBundle:
    """Zoom one level deeper: follow the child attracted to ``chosen`` and
    label its own children."""
    if chosen not in regime_names(b.children):
        raise ValueError(f"{chosen!r} is not a regime of this bundle")
    return TrajectoryBundle(b.level + 1, chosen, next_labels)
