"""Bit strings as finite stand-ins for qubit states.

A sample space here is an ordered string of 2**N two-valued labels.  Two
permutation operators give these strings complex structure: the pair-shift
(rotate left in pairs, order 2**(N-1)) plays the role of a phase factor, and
the quarter-turn (pairwise (x, y) -> (not-y, x), order 4) plays the role of
the imaginary unit.  Run: python demos/01_roots_of_unity_strings.py
"""

from fractions import Fraction

from invset import (
    ExactAngle,
    NotOnInvariantSet,
    canonical_string,
    fraction,
    hilbert_shadow,
    is_describable,
    pair_shift,
    phase_string,
    quarter_turn,
    sample,
    to_text,
)

N = 4
base = canonical_string(N)

print(f"canonical string at N={N} (0 = first regime, 1 = negated):")
print(" ", to_text(base))

print("\npair-shifts realize 2**(N-1)-th roots of unity:")
for n in (1, 2, 4, 8):
    print(f"  shift^{n}: {to_text(pair_shift(base, n))}")
print("  shift^8 is the identity: one full phase of 2*pi")

print("\nthe quarter-turn is an eighth-period shift on the canonical string:")
print("  i(S)      ", to_text(quarter_turn(base)))
print("  shift^2(S)", to_text(pair_shift(base, 2)))
print("  i^2 negates every label, i^4 is the identity")

print("\nphases must be describable: phi/2pi = n/2**(N-1)")
phi = ExactAngle(Fraction(3, 8))
print(f"  phi = {phi}: string {to_text(phase_string(N, phi))}")
try:
    phase_string(N, ExactAngle(Fraction(1, 3)))
except NotOnInvariantSet as exc:
    print(f"  phi = 1/3 turns -> {exc}")

print("\namplitudes enter by flipping the first occurrences of one label:")
theta = ExactAngle(Fraction(1, 6))  # cos(theta) = 1/2, cos^2(theta/2) = 3/4
s = sample(N, theta, phi)
print(f"  theta = {theta} (cos^2(theta/2) = 3/4): {to_text(s)}")
print(f"  first-label fraction: {fraction(s)} (exact)")

shadow = hilbert_shadow(s)
print("\nthe construction reads back as a unit-vector shadow:")
print(f"  amplitude^2 = {shadow.amplitude_sq}, phase = {shadow.phase_turns} turns")

print("\ndescribability is the whole admission criterion:")
for x, n in ((Fraction(3, 8), 3), (Fraction(3, 8), 2), (Fraction(1, 3), 20)):
    print(f"  {x} describable by {n} bits? {is_describable(x, n)}")
