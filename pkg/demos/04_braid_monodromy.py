"""Pure braids acting on the double cover: the homology matrices.

Pure braid generators act on the free group by the Artin rules; rewriting
the images inside the index-2 even-weight subgroup (the hyperelliptic double
cover) and abelianizing yields integer symplectic matrices.  The full twist
comes out as -1 for an odd number of strands, and +1 with its partial twist
-1 for an even number.
"""

from torsionlab.braid import (
    BraidWord,
    FreeWord,
    artin_apply,
    full_twist,
    homology_rep,
    invariant_form,
    pure_generator,
)

# The Artin rule: sigma_1 sends x_1 to x_1 x_2 x_1^-1 and x_2 to x_1.
w = BraidWord.of(3, [1])
print("sigma_1 . x1 =", artin_apply(w, FreeWord.of(1)).letters)

# Pure generators conjugate only the strands they braid around.
a24 = pure_generator(2, 4, 4)
print("A_{2,4} word:", a24.letters)
print("A_{1,2} fixes x3:", artin_apply(pure_generator(1, 2, 3), FreeWord.of(3)).letters)

# Homology of the double cover: basis classes x_i x_(i+1).  Each pure word
# maps to an integer matrix; products of words map to products of matrices.
m = homology_rep(pure_generator(1, 2, 3), 3)
print("rep(A_{1,2}) at d=3:\n", m)

# The full twist generates the center; its image is a scalar.
for d in (3, 4, 5, 6):
    rep = homology_rep(full_twist(d), d)
    print(f"d={d}: full twist ->", "+1" if rep[0][0] == 1 else "-1")
    if d % 2 == 0:
        prime = homology_rep(full_twist(d, d - 1), d)
        print(f"d={d}: partial twist ->", "+1" if prime[0][0] == 1 else "-1")

# The invariant alternating form is recovered from the generator images by
# solving M^T J M = J; the solution space is one-dimensional and unimodular.
print("invariant form at d=5:\n", invariant_form(5))
