"""High-precision numeric helpers for oracles and nearest-angle substitution.

mpmath is used only on the numeric side of dual-route checks and for display;
no admissibility predicate depends on it.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath

DEFAULT_PREC = 240  # working precision in bits; comfortably above 200-bit targets


def to_mpf(fr: Fraction | int, prec: int = DEFAULT_PREC) -> mpmath.mpf:
    fr = Fraction(fr)
    with mpmath.workprec(prec):
        return mpmath.mpf(fr.numerator) / fr.denominator


def cos_turns(turns: Fraction, prec: int = DEFAULT_PREC) -> mpmath.mpf:
    """cos(2*pi*turns) at the given binary precision."""
    with mpmath.workprec(prec):
        return mpmath.cos(2 * mpmath.pi * to_mpf(turns, prec))


def sin_turns(turns: Fraction, prec: int = DEFAULT_PREC) -> mpmath.mpf:
    with mpmath.workprec(prec):
        return mpmath.sin(2 * mpmath.pi * to_mpf(turns, prec))


def acos_as_turns(x, prec: int = DEFAULT_PREC) -> mpmath.mpf:
    """Principal arccos, returned as a fraction of a full turn (in [0, 1/2])."""
    with mpmath.workprec(prec):
        if isinstance(x, Fraction):
            x = to_mpf(x, prec)
        return mpmath.acos(x) / (2 * mpmath.pi)


def expi_turns(turns: Fraction, prec: int = DEFAULT_PREC) -> mpmath.mpc:
    """exp(2*pi*i*turns)."""
    with mpmath.workprec(prec):
        return mpmath.expjpi(2 * to_mpf(turns, prec))


def mpf_to_fraction(x: mpmath.mpf, bits: int = 180) -> Fraction:
    """Fixed-point rationalization of an mpf (error at most 2**-(bits+1))."""
    with mpmath.workprec(max(bits + 40, DEFAULT_PREC)):
        n = int(mpmath.nint(x * (1 << bits)))
    return Fraction(n, 1 << bits)


def best_rational_approx(x: mpmath.mpf, max_denominator: int) -> Fraction:
    """Closest rational with bounded denominator to a high-precision value."""
    return mpf_to_fraction(x).limit_denominator(max_denominator)


def nearest_describable(x: mpmath.mpf, n_bits: int) -> Fraction:
    """Closest value of the form n/2**n_bits to a high-precision value."""
    with mpmath.workprec(DEFAULT_PREC):
        n = int(mpmath.nint(x * (1 << n_bits)))
    return Fraction(n, 1 << n_bits)
