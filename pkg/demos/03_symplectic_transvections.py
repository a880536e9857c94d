"""The symplectic form, similitude multipliers, and transvections.

The alternating form is fixed in block shape [[0, -I], [I, 0]] on the basis
a_1..a_g, b_1..b_g, so that pairing(a_i, b_i) = -1.  Transvections
v -> v + m * pairing(v, a) * a expand to explicit symplectic matrices; their
fourth powers generate the key subquotient at genus 2.
"""

from torsionlab import (
    SymplecticSpace,
    Transvection,
    congruence_level,
    is_symplectic,
    transvection_matrix,
    weil_subset_basis,
)
from torsionlab.quotients import SatoOracle

space = SymplecticSpace(genus=2, level=3)

# A transvection along a basis direction, with exponent 4: this is one of
# the four matrices whose classes form a basis of Gamma(4) modulo the
# commutator subgroup.
v = tuple(space.basis_vector("a", 1))
t4 = transvection_matrix(Transvection(v, 4), space)
print("T_a1^4 =", t4)
print("similitude multiplier:", is_symplectic(t4, space))
print("congruence level (largest n with m = 1 mod 2^n):", congruence_level(t4))

# The membership oracle for the commutator subgroup at level 3: inside
# Gamma(4) with the (i, i+g) and (i+g, i) entries divisible by 8.
oracle = SatoOracle(genus=2, level=3)
print("T_a1^4 in the commutator subgroup:", oracle.is_member(t4))
print("its square in the commutator subgroup:", oracle.is_member(t4 * t4))

# 2-torsion points of the Jacobian correspond to even subsets of branch
# points; the fixed basis uses consecutive pairs and tails.
for key, subset in sorted(weil_subset_basis(5).items()):
    print(key, "->", sorted(subset))

# Conjugating T_b1^4 by the plain transvection T_a1 shifts it by T_a1^4
# modulo the commutator subgroup: the induced operator on the 4-dimensional
# quotient deviates from the identity by a rank-1 map.
from torsionlab.quotients import transvection_conjugation_check

for report in transvection_conjugation_check():
    print(report.claim, report.status)
