"""Composition of aligned bit strings into m-qubit sample spaces, exact joint
frequency tables, and the parameter correspondence with 2-qubit states.

The conditional rule is literal: row b takes its label from one source string
where the head label is the first regime and from the other where it is
negated.  The statistical assumptions behind the correspondence (head string
independent of the sources) are realized constructively: harness constructors
fill labels proportionally inside nested index blocks, so every joint
frequency equals its amplitude-squared prediction as an exact rational.
Whenever a conditional count fails to be an integer the joint amplitude is
not describable by N bits and NotOnInvariantSet is raised.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath

from .exactmath import ExactAngle, NotOnInvariantSet, cos_exact, is_describable
from .highprec import DEFAULT_PREC, to_mpf
from .samplespace import (
    BitString,
    canonical_string,
    first_label_count,
    negate,
    sample_from_counts,
)

_DEFAULT_TAGS = "abcdefgh"


def amplitude_of(theta: ExactAngle, n_bits: int) -> Fraction:
    """cos^2(theta/2) as an exact fraction, gated on describability by N bits.

    theta is normalized into [0, pi] first; its cosine must be rational (the
    rational-cosine exceptional set) and (1+cos)/2 must be of the form n/2^N.
    """
    turns = theta.turns
    if turns > Fraction(1, 2):
        turns = 1 - turns
    c = cos_exact(ExactAngle(turns))
    if c is None:
        raise NotOnInvariantSet(f"cos(theta) for theta={theta} is irrational")
    amp = (1 + c) / 2
    if not is_describable(amp, n_bits):
        raise NotOnInvariantSet(f"cos^2(theta/2)={amp} is not describable by {n_bits} bits")
    return amp


@dataclass(frozen=True)
class MultiSample:
    """m aligned bit strings of common length 2**N realizing an m-qubit
    sample space; row 1 is the independent source."""

    n_bits: int
    rows: tuple[BitString, ...]

    def __post_init__(self) -> None:
        if not self.rows:
            raise ValueError("at least one row required")
        for r in self.rows:
            if r.n_bits != self.n_bits:
                raise ValueError("row length mismatch")
        object.__setattr__(self, "rows", tuple(self.rows))

    @property
    def m(self) -> int:
        return len(self.rows)

    @property
    def size(self) -> int:
        return 1 << self.n_bits


def _require_explicit(*strings: BitString) -> None:
    for s in strings:
        if not s.explicit:
            raise ValueError("composition requires explicit labels")


def _select(mask: int, where_first: int, where_negated: int, full: int) -> int:
    return (where_first & (mask ^ full)) | (where_negated & mask)


def compose_pair(sa: BitString, sb1: BitString, sb2: BitString) -> MultiSample:
    """Reduce three strings to two: b_i = sb1_i where sa_i is the first
    regime, else sb2_i."""
    if not sa.n_bits == sb1.n_bits == sb2.n_bits:
        raise ValueError("length mismatch")
    _require_explicit(sa, sb1, sb2)
    full = (1 << sa.size) - 1
    bits = _select(sa.bits, sb1.bits, sb2.bits, full)
    # The composed row is generally not a single-angle construction; keep the
    # descriptor only in the degenerate equal-sources case.
    desc = sb1.descriptor if sb1.bits == sb2.bits else None
    row_b = BitString(sa.n_bits, bits, sb1.tag, desc)
    return MultiSample(sa.n_bits, (sa, row_b))


def compose_many(head: BitString, left: MultiSample, right: MultiSample) -> MultiSample:
    """Inductive m-qubit composition: rows 2..m take the left sample's values
    where the head label is the first regime and the right sample's values
    elsewhere.  Reduces to compose_pair at m = 2."""
    if left.m != right.m:
        raise ValueError("left/right arity mismatch")
    if not head.n_bits == left.n_bits == right.n_bits:
        raise ValueError("length mismatch")
    _require_explicit(head, *left.rows, *right.rows)
    full = (1 << head.size) - 1
    rows = [head]
    for lw, rw in zip(left.rows, right.rows):
        bits = _select(head.bits, lw.bits, rw.bits, full)
        desc = lw.descriptor if lw.bits == rw.bits else None
        rows.append(BitString(head.n_bits, bits, lw.tag, desc))
    return MultiSample(head.n_bits, tuple(rows))


def joint_counts(ms: MultiSample) -> dict[int, int]:
    """Exact outcome counts over the 2**m joint outcomes.

    Outcome index: bit per row, row 0 most significant, 0 = first regime.
    Counts sum to 2**N.
    """
    _require_explicit(*ms.rows)
    full = (1 << ms.size) - 1
    counts: dict[int, int] = {}
    for outcome in range(1 << ms.m):
        acc = full
        for j, row in enumerate(ms.rows):
            if (outcome >> (ms.m - 1 - j)) & 1:
                acc &= row.bits
            else:
                acc &= row.bits ^ full
        counts[outcome] = acc.bit_count()
    return counts


def joint_frequencies(ms: MultiSample) -> dict[int, Fraction]:
    return {o: Fraction(c, ms.size) for o, c in joint_counts(ms).items()}


def counts_csv(ms: MultiSample) -> str:
    """Frequency table as CSV: outcome bitmask, count, exact frequency."""
    lines = ["outcome,count,freq_numerator,freq_denominator"]
    for outcome, count in joint_counts(ms).items():
        fr = Fraction(count, ms.size)
        lines.append(f"{outcome},{count},{fr.numerator},{fr.denominator}")
    return "\n".join(lines) + "\n"


def marginal(ms: MultiSample, row: int) -> Fraction:
    return Fraction(first_label_count(ms.rows[row]), ms.size)


def row_descriptor_status(ms: MultiSample) -> list[bool]:
    """Which rows still carry a single-angle construction descriptor.

    Composed rows generally cannot be written as one amplitude-phase
    construction; this diagnostic exposes the reconstruction failure."""
    return [r.descriptor is not None for r in ms.rows]


def _fill(blocks: list[tuple[int, int]], amp: Fraction):
    """Per-block proportional fill: the first amp-share of every block gets
    the first-regime label.  Returns (negated-label bits, first-label blocks,
    negated-label blocks)."""
    bits = 0
    firsts: list[tuple[int, int]] = []
    seconds: list[tuple[int, int]] = []
    for lo, hi in blocks:
        w = hi - lo
        if w == 0:
            continue
        share = amp * w
        if share.denominator != 1:
            raise NotOnInvariantSet(
                f"conditional count {share} is not an integer: joint amplitude not describable"
            )
        c = share.numerator
        firsts.append((lo, lo + c))
        seconds.append((lo + c, hi))
        bits |= ((1 << (w - c)) - 1) << (lo + c)
    return bits, firsts, seconds


def _realize(amps: Sequence[Fraction], blocks: list[tuple[int, int]], full: int) -> list[int]:
    head_bits, firsts, seconds = _fill(blocks, amps[0])
    if len(amps) == 1:
        return [head_bits]
    h = (len(amps) - 1) // 2
    cover = firsts + seconds
    left = _realize(amps[1 : 1 + h], cover, full)
    right = _realize(amps[1 + h :], cover, full)
    rows = [head_bits]
    for lb, rb in zip(left, right):
        rows.append(_select(head_bits, lb, rb, full))
    return rows


def multi_sample(n_bits: int, thetas: Sequence[ExactAngle], tags: Sequence[str] | None = None) -> MultiSample:
    """Realize the m-qubit sample space for a full binary tree of 2**m - 1
    amplitude angles (phases do not affect label statistics; they live in the
    amplitude table)."""
    m = (len(thetas) + 1).bit_length() - 1
    if (1 << m) - 1 != len(thetas) or m < 1:
        raise ValueError("need 2**m - 1 angles")
    amps = [amplitude_of(t, n_bits) for t in thetas]
    length = 1 << n_bits
    rows_bits = _realize(amps, [(0, length)], (1 << length) - 1)
    if tags is None:
        tags = [_DEFAULT_TAGS[i] if i < len(_DEFAULT_TAGS) else f"q{i}" for i in range(m)]
    if len(tags) != m:
        raise ValueError(f"need {m} row tags")
    rows = tuple(BitString(n_bits, rb, tag, None) for rb, tag in zip(rows_bits, tags))
    return MultiSample(n_bits, rows)


def two_qubit_sample(params: "TwoQubitParams", n_bits: int) -> MultiSample:
    """Realize the 2-qubit correspondence through the literal composition
    rule, with source strings built to be exactly independent of the head."""
    amp1 = amplitude_of(params.theta1, n_bits)
    amp2 = amplitude_of(params.theta2, n_bits)
    amp3 = amplitude_of(params.theta3, n_bits)
    length = 1 << n_bits
    head_bits, firsts, seconds = _fill([(0, length)], amp1)
    cover = firsts + seconds
    sb1_bits, _, _ = _fill(cover, amp2)
    sb2_bits, _, _ = _fill(cover, amp3)
    head = BitString(n_bits, head_bits, "a", None)
    sb1 = BitString(n_bits, sb1_bits, "b", None)
    sb2 = BitString(n_bits, sb2_bits, "b", None)
    return compose_pair(head, sb1, sb2)


@dataclass(frozen=True)
class TwoQubitParams:
    """The six angular degrees of freedom of the 2-qubit construction."""

    theta1: ExactAngle
    theta2: ExactAngle
    theta3: ExactAngle
    phi1: ExactAngle
    phi2: ExactAngle
    phi3: ExactAngle

    @property
    def chi(self) -> tuple[ExactAngle, ExactAngle, ExactAngle]:
        """Relative phases of the three excited outcomes."""
        return (self.phi2, self.phi1, self.phi1 + self.phi3)


@dataclass(frozen=True)
class PredictedTwoQubit:
    """Amplitude-squared table and phases of the composed 2-qubit state."""

    probs: tuple[Fraction, Fraction, Fraction, Fraction]
    phases: tuple[ExactAngle, ExactAngle, ExactAngle, ExactAngle]


def _gate_phase(phi: ExactAngle, n_bits: int) -> ExactAngle:
    if not is_describable(phi.turns, n_bits - 1):
        raise NotOnInvariantSet(f"phase {phi} is not a multiple of 1/2**{n_bits - 1} of a turn")
    return phi


def two_qubit_predict(params: TwoQubitParams, n_bits: int) -> PredictedTwoQubit:
    """Probabilities (gamma_0^2 .. gamma_3^2) and phases (0, chi_1..chi_3)."""
    amp1 = amplitude_of(params.theta1, n_bits)
    amp2 = amplitude_of(params.theta2, n_bits)
    amp3 = amplitude_of(params.theta3, n_bits)
    for phi in (params.phi1, params.phi2, params.phi3):
        _gate_phase(phi, n_bits)
    probs = (
        amp1 * amp2,
        amp1 * (1 - amp2),
        (1 - amp1) * amp3,
        (1 - amp1) * (1 - amp3),
    )
    zero = ExactAngle(Fraction(0))
    chi1, chi2, chi3 = params.chi
    return PredictedTwoQubit(probs, (zero, chi1, chi2, chi3))


def amplitude_table(
    thetas: Sequence[ExactAngle], phis: Sequence[ExactAngle], n_bits: int
) -> list[tuple[Fraction, ExactAngle]]:
    """Symbolically expand the inductive m-qubit state: per outcome, the exact
    probability (product of cos^2/sin^2 half-angles) and accumulated phase.

    Outcome order matches joint_counts (row 0 most significant).  This is the
    brute-force oracle the string composition is tested against.
    """
    if len(thetas) != len(phis):
        raise ValueError("need equally many amplitude and phase angles")
    m = (len(thetas) + 1).bit_length() - 1
    if (1 << m) - 1 != len(thetas) or m < 1:
        raise ValueError("need 2**m - 1 angles")
    zero = ExactAngle(Fraction(0))

    def rec(th: Sequence[ExactAngle], ph: Sequence[ExactAngle]) -> list[tuple[Fraction, ExactAngle]]:
        amp = amplitude_of(th[0], n_bits)
        _gate_phase(ph[0], n_bits)
        if len(th) == 1:
            return [(amp, zero), (1 - amp, ph[0])]
        h = (len(th) - 1) // 2
        left = rec(th[1 : 1 + h], ph[1 : 1 + h])
        right = rec(th[1 + h :], ph[1 + h :])
        out = [(amp * p, phase) for p, phase in left]
        out += [((1 - amp) * p, ph[0] + phase) for p, phase in right]
        return out

    return rec(list(thetas), list(phis))


def amplitude_table_mp(
    theta_turns: Sequence[Fraction], phi_turns: Sequence[Fraction], prec: int = DEFAULT_PREC
) -> list[mpmath.mpc]:
    """Numeric complex amplitudes of the same expansion at high precision,
    for arbitrary (not necessarily admissible) angles."""
    m = (len(theta_turns) + 1).bit_length() - 1
    if (1 << m) - 1 != len(theta_turns) or len(theta_turns) != len(phi_turns):
        raise ValueError("need 2**m - 1 angles")

    with mpmath.workprec(prec):

        def rec(th: Sequence[Fraction], ph: Sequence[Fraction]) -> list[mpmath.mpc]:
            half = mpmath.pi * to_mpf(th[0], prec)
            c, s = mpmath.cos(half), mpmath.sin(half)
            e = mpmath.expjpi(2 * to_mpf(ph[0], prec))
            if len(th) == 1:
                return [mpmath.mpc(c), e * s]
            h = (len(th) - 1) // 2
            left = rec(th[1 : 1 + h], ph[1 : 1 + h])
            right = rec(th[1 + h :], ph[1 + h :])
            return [c * x for x in left] + [e * s * x for x in right]

        return rec(list(theta_turns), list(phi_turns))


def bell_sample_from_amplitude(amp: Fraction, n_bits: int) -> MultiSample:
    """Maximally entangled construction at exact agreement amplitude ``amp``:
    balanced head, second source the negation of the first."""
    if not 0 <= amp <= 1:
        raise ValueError("amplitude outside [0, 1]")
    if not is_describable(amp, n_bits):
        raise NotOnInvariantSet(f"agreement amplitude {amp} is not describable by {n_bits} bits")
    count = int(amp * (1 << n_bits))
    head = canonical_string(n_bits, "a")
    sb1 = sample_from_counts(n_bits, count, 0, "b")
    return compose_pair(head, sb1, negate(sb1))


def bell_sample(theta2: ExactAngle, n_bits: int) -> MultiSample:
    """Bell construction at relative orientation theta2 (cos^2(theta2/2) must
    be describable by N bits; the head amplitude is fixed at 1/2)."""
    return bell_sample_from_amplitude(amplitude_of(theta2, n_bits), n_bits)


def bell_agreement(ms: MultiSample) -> Fraction:
    counts = joint_counts(ms)
    return Fraction(counts[0b00] + counts[0b11], ms.size)


def bell_correlation(ms: MultiSample) -> Fraction:
    """Agreement minus disagreement; equals cos(theta2) exactly."""
    return 2 * bell_agreement(ms) - 1
