"""State-space distance is p-adic, not Euclidean.

The state space carries a Cantor set C(p) (keep p of 2p-1 subintervals per
level), homeomorphic to the p-adic integers digit by digit.  Two points that
look close on the line can be far apart p-adically - exactly when one of them
falls off the set.  Run: python demos/02_padic_cantor_geometry.py
"""

from fractions import Fraction

from invset import (
    PadicInt,
    cantor_iterates,
    cantor_map,
    euclid_padic_probe,
    interval_for,
    ord_p,
    padic_dist,
    similarity_dimension,
)

print("the 2-adic distance counts shared low-order digits:")
seq = [1, 1 + 2, 1 + 2 + 4, 1 + 2 + 4 + 8, 1 + 2 + 4 + 8 + 16]
for a, b in zip(seq[1:], seq):
    print(f"  d_2({a}, {b}) = {padic_dist(a, b, 2)}")
print("  the partial sums form a Cauchy sequence 2-adically")

print("\norders on rationals:", f"ord_2(8) = {ord_p(8, 2)},",
      f"ord_2(1/2) = {ord_p(Fraction(1, 2), 2)},",
      f"ord_3(18/5) = {ord_p(Fraction(18, 5), 3)}")

print("\nCantor iterates: keep every second of 2p-1 subintervals")
for p in (2, 3):
    iv = cantor_iterates(p, 1)
    spans = ", ".join(f"[{i.left}, {i.right}]" for i in iv)
    print(f"  p={p}, level 1: {spans}")
    print(f"        similarity dimension log {p}/log {2*p-1} = {similarity_dimension(p):.4f}")

print("\ndigits map into nested intervals (the homeomorphism, truncated):")
z = PadicInt(2, (1, 1, 0, 1))
print(f"  digits {z.digits} -> point {cantor_map(z)}")
for level in range(1, 5):
    iv = interval_for(z, level)
    print(f"  level {level}: [{iv.left}, {iv.right}]")

print("\ntwo integers sharing l leading digits sit at distance p^-l")
a, b = PadicInt(2, (1, 0, 1, 1)), PadicInt(2, (1, 0, 0, 1))
print(f"  {a.digits} vs {b.digits}: shared prefix {a.shared_prefix(b)},",
      f"d_2 = {padic_dist(a.value(), b.value(), 2)}")

print("\nEuclid-close but p-adically far: the off-set probe")
for p, a_int, b_off in ((2, 1, Fraction(5, 4)), (5, 3, Fraction(16, 5))):
    r = euclid_padic_probe(PadicInt.from_int(a_int, p, 6), b_off)
    print(f"  p={p}: |{r.a_value} - {r.b_off}| = {r.euclid_gap} on the line,",
          f"but d_{p} = {r.padic_gap} >= p")
print("  a perturbation off the set is never small in the p-adic metric")
