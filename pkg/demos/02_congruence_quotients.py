"""Enumerating Gamma(2)/Gamma(2^m) and computing its abelianization.

The principal congruence quotients are enumerated as explicit matrix sets by
BFS closure of seed generators.  The closure is never trusted blindly: its
order must match 2^((m-1)(2g^2+g)) or the enumeration fails loudly.  From the
explicit set we take commutator subgroups (normal closures of generator-pair
commutators) and classify quotient types from coset-order censuses.
"""

from torsionlab import AbelianType
from torsionlab.quotients import (
    abelianization,
    commutator_subgroup,
    enumerate_gamma2,
    verify_commutator_formula,
    verify_mod32_congruences,
)

# Genus 1 mod 16: the group has order 2^9 = 512.
q = enumerate_gamma2(1, 4)
print("order of Gamma(2)/Gamma(16):", q.order)

# Its commutator subgroup mod 16 is cyclic of order 4 ...
c = commutator_subgroup(q)
print("commutator subgroup order:", c.order)

# ... so the abelianization has order 128.  The census classifier identifies
# the type Z/2 x (Z/8)^2.
ab, census = abelianization(q, c)
print("abelianization:", ab, "census:", census)
assert ab == AbelianType((8, 8, 2))

# The genus-1 commutator word has an exact closed form; the composition
# order that realizes it is pinned by this check, not assumed.
for report in verify_commutator_formula(6):
    print(report.claim, report.status)

# Three congruences mod 32 push the commutator subgroup down to Gamma(16):
# the two displayed products land on sigma^8 and tau^8, the fourth power on
# the scalar 17.
for report in verify_mod32_congruences():
    print(report.claim, report.status, report.witness["realized_pairing"])

# The genus-2 run (order 2^20, Sato oracle comparison, type
# (Z/2)^6 x (Z/4)^4) takes ~20s; run it from the command line:
#     verify lemma31 --g 2
print("genus-2 suite: run `verify lemma31 --g 2`")
