"""Exact arithmetic in iterated square-root extensions of Q.

A tower adjoins square roots one at a time.  Before any step is created, a
recursive square detector decides whether the radicand is already a square
in the tower; if so, the existing root is returned (a degree-1 adjunction)
with its sign pinned against a certified complex enclosure.  Hence the tower
degree is exactly 2^(number of proper steps).
"""

from torsionlab.towers import SignCharacter, Tower, in_span, subfield_span

t = Tower()
i = t.adjoin_sqrt(-1, "i")
s2 = t.adjoin_sqrt(2, "sqrt2")
s3 = t.adjoin_sqrt(3, "sqrt3")
print("degree of Q(i, sqrt2, sqrt3):", t.degree)

# sqrt6 is already there: the adjunction is derived, not a new step.
s6 = t.adjoin_sqrt(6, "sqrt6")
print("sqrt6 == sqrt2 * sqrt3:", s6 == s2 * s3, "| degree still", t.degree)

# Branch policy: the principal square root of -2 is +i sqrt2 (argument pi/2).
m2 = t.adjoin_sqrt(-2, "sqrt_minus2")
print("sqrt(-2) == i sqrt2:", m2 == i * s2)

# Nested radicals are fine: the detector finds sqrt(3 + 2 sqrt2) = 1 + sqrt2.
y = t.sqrt(3 + 2 * s2)
print("sqrt(3 + 2 sqrt2) =", y)

# Field arithmetic is exact; every nonzero element inverts.
zeta8 = (1 + i) * s2 / 2
print("zeta8^8 =", (zeta8**8).rational_value())
print("1/zeta8 * zeta8 =", ((1 / zeta8) * zeta8).rational_value())

# Membership in a designated subfield is linear algebra over the radical
# product basis: Q(sqrt6) inside Q(sqrt2, sqrt3) misses sqrt2.
basis = subfield_span([s6])
print("dim Q(sqrt6):", len(basis), "| sqrt2 in Q(sqrt6):", in_span(s2, basis) is not None)

# Certified rectangles enclose every element; exact identities are double
# checked numerically.
print("enclosure of sqrt(1+sqrt2) squared contains 1+sqrt2:",
      (t.adjoin_sqrt(1 + s2, "nested") ** 2).enclosure(80).intersects((1 + s2).enclosure(80)))

# A sign character (step -> +-1) extends to a field automorphism exactly
# when it fixes every radicand: negating sqrt2 breaks the nested step above.
print("negate sqrt3 only:", SignCharacter(t, {2: -1}).is_automorphism())
print("negate sqrt2 (breaks 1+sqrt2 radicand):", SignCharacter(t, {1: -1}).is_automorphism())
