"""Exact matrices over Z/2^k and abelian 2-group classification.

Everything in this library runs on two small exact kernels: square matrices
with entries reduced modulo a power of two, and the classification of a
finite abelian 2-group from its element-order census.  This script walks
through both.
"""

from torsionlab import ModMatrix, abelian_type_from_census, mat_inverse, mat_mul

# Matrices carry their modulus exponent ("level"); entries live in [0, 2^k).
# Level 5 means arithmetic mod 32.
sigma = ModMatrix([[1, -2], [0, 1]], level=5)
tau = ModMatrix([[1, 0], [2, 1]], level=5)
print("sigma =", sigma)
print("tau   =", tau)

# Products follow the column-vector convention: (a*b) applies b first.
word = mat_mul(mat_mul(tau, mat_inverse(sigma)), mat_mul(mat_inverse(tau), sigma))
print("tau sigma^-1 tau^-1 sigma mod 32 =", word)
# The reduced entries [[29, 8], [24, 21]] are [[-3, 8], [-8, 21]] mod 32.

# Inverses exist exactly when the determinant is odd; they are computed by
# lifting the mod-2 inverse with Newton steps.
m = ModMatrix([[13, 8], [8, 5]], level=4)
print("m * m^-1 =", mat_mul(m, mat_inverse(m)))

# Abelian 2-groups are classified by how many elements have order <= 2^j.
# The census {order: count} of (Z/2)^3 has seven involutions:
print(abelian_type_from_census({1: 1, 2: 7}, 8))

# The census of Z/2 x (Z/8)^2, the abelianization appearing at genus 1:
census = {1: 1, 2: 7, 4: 24, 8: 96}
t = abelian_type_from_census(census, 128)
print(t, "of order", t.order)

# Classification is idempotent: regenerating the census from the type and
# classifying again returns the same invariant factors.
assert abelian_type_from_census(t.census(), t.order) == t
print("census regeneration round-trips")
