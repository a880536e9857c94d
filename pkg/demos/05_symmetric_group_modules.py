"""Symmetric groups acting on pair bases over F2 and Z/4.

The pair space on M letters has basis [i,j] = [j,i]; permutations act by
relabeling.  Brute-force scans over the whole space pin down the unique
embeddings of the standard representation, and a Z/4-valued functional cuts
out the rank-2 module at genus 1.
"""

from torsionlab.symrep import (
    PairBasisSpace,
    kernel_of_phi,
    phi_functional,
    prop33_suite,
    prop34_generators,
    psi_action,
    spanning_set_odd,
    transposition,
    verify_prop34,
)

# Relabeling [1,3] by the transposition (1 2) gives [2,3].
s = PairBasisSpace(3, 2)
print("(1 2).[1,3] =", psi_action(transposition(3, 1, 2), s.basis_vector(1, 3), s))

# At d = 5 the vectors fixed by the stabilizer of 1 are scanned exhaustively
# (2^10 vectors); exactly three are nonzero, and only the row sum
# v_1 = sum_j [1,j] spans a standard-representation copy.
for report in prop33_suite(5):
    print(report.claim, report.status)
print("spanning set v_i = sum_(j != i) [i,j]:", [v.tolist() for v in spanning_set_odd(5)][:2], "...")

# Over Z/4 with three letters, the functional Phi sums the coefficients; its
# kernel is the free rank-2 module generated by the three listed elements.
print("|ker Phi| =", len(kernel_of_phi()))
for g in prop34_generators():
    print("generator", g.tolist(), "Phi =", phi_functional(g))
for report in verify_prop34():
    print(report.claim, report.status)
