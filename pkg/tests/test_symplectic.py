"""The alternating form, similitude multipliers, and transvections."""

import random

import numpy as np
import pytest

from torsionlab import (
    ModMatrix,
    StructuralError,
    SymplecticSpace,
    Transvection,
    congruence_level,
    is_symplectic,
    transvection_matrix,
    weil_subset_basis,
)
from torsionlab.quotients import sigma_tau
from torsionlab.symplectic import permutation_action_mod2


def test_gram_normalization():
    space = SymplecticSpace(genus=2, level=3)
    a1 = space.basis_vector("a", 1)
    b1 = space.basis_vector("b", 1)
    assert space.pairing(a1, b1) == (-1) % 8
    assert space.pairing(b1, a1) == 1
    assert space.pairing(a1, space.basis_vector("b", 2)) == 0


def test_identity_multiplier():
    space = SymplecticSpace(genus=1, level=4)
    assert is_symplectic(ModMatrix.identity(2, 4), space) == 1


@pytest.mark.parametrize("level", [1, 2, 3, 4, 5])
def test_sigma_tau_symplectic(level):
    space = SymplecticSpace(genus=1, level=level)
    sigma, tau = sigma_tau(level)
    assert is_symplectic(sigma, space) == 1
    assert is_symplectic(tau, space) == 1


def test_similitude_scaling():
    space = SymplecticSpace(genus=1, level=4)
    for lam in (3, 5, 7, 15):
        m = ModMatrix([[1, 0], [0, lam]], 4)
        assert is_symplectic(m, space) == lam
    assert is_symplectic(ModMatrix([[2, 0], [0, 1]], 4), space) is None


def test_congruence_level_examples():
    assert congruence_level(ModMatrix.identity(2, 4)) == 4
    sigma, _ = sigma_tau(5)
    assert congruence_level(sigma) == 1
    assert congruence_level(ModMatrix.scalar(17, 2, 5)) == 4


def test_congruence_level_submultiplicative():
    rng = random.Random(5)
    space = SymplecticSpace(genus=1, level=5)
    sigma, tau = sigma_tau(5)
    words = [sigma, tau, sigma**2, tau**4, sigma * tau]
    for m in words:
        for n in words:
            assert congruence_level(m * n) >= min(congruence_level(m), congruence_level(n))


def test_transvection_exponent_zero():
    space = SymplecticSpace(genus=2, level=3)
    t = Transvection((1, 0, 0, 0), 0)
    assert transvection_matrix(t, space) == ModMatrix.identity(4, 3)


def test_transvection_symplectic_all_directions():
    rng = random.Random(123)
    for g in (1, 2):
        for level in (1, 2, 3, 4, 5):
            space = SymplecticSpace(genus=g, level=level)
            directions = [tuple(space.basis_vector(k, i)) for k in "ab" for i in range(1, g + 1)]
            directions += [
                tuple(rng.randrange(1 << level) for _ in range(2 * g)) for _ in range(5)
            ]
            for v in directions:
                for exp in (1, 2, 4):
                    m = transvection_matrix(Transvection(v, exp), space)
                    assert is_symplectic(m, space) == 1


def test_transvection_exponent_additivity():
    space = SymplecticSpace(genus=2, level=3)
    v = (1, 0, 1, 1)
    for m, n in [(1, 1), (2, 3), (1, 4)]:
        lhs = transvection_matrix(Transvection(v, m), space) * transvection_matrix(
            Transvection(v, n), space
        )
        assert lhs == transvection_matrix(Transvection(v, m + n), space)


def test_transvection_a1_reduces_to_transposition():
    # the image of T_a1 mod 2 is the permutation action of (1 2) at genus 2
    space = SymplecticSpace(genus=2, level=1)
    v = tuple(space.basis_vector("a", 1))
    t = transvection_matrix(Transvection(v, 1), space)
    perm_12 = permutation_action_mod2((2, 1, 3, 4, 5), 5)
    assert t == perm_12


def test_fourth_power_slots_mod8():
    # T_(a_i)^4 has 4 in exactly one of the (i, i+g)/(i+g, i) slots mod 8
    space = SymplecticSpace(genus=2, level=3)
    g = 2
    for kind in "ab":
        for i in (1, 2):
            v = tuple(space.basis_vector(kind, i))
            m = transvection_matrix(Transvection(v, 4), space).to_array()
            slots = [m[i - 1, g + i - 1] % 8, m[g + i - 1, i - 1] % 8]
            assert sorted(slots) == [0, 4]
            off = m - np.eye(4, dtype=np.int64)
            assert (np.count_nonzero(off % 8)) == 1


def test_weil_subset_basis():
    subsets = weil_subset_basis(5)
    assert subsets[("a", 1)] == frozenset({1, 2})
    assert subsets[("b", 2)] == frozenset({4, 5})
    assert weil_subset_basis(3)[("b", 1)] == frozenset({2, 3})
    with pytest.raises(StructuralError):
        weil_subset_basis(2)


def test_permutation_action_is_homomorphism_mod2():
    # composing transpositions matches matrix products
    d = 5
    p1 = (2, 1, 3, 4, 5)
    p2 = (1, 3, 2, 4, 5)
    composed = tuple(p1[p2[i] - 1] for i in range(d))
    lhs = permutation_action_mod2(p1, d) * permutation_action_mod2(p2, d)
    assert lhs == permutation_action_mod2(composed, d)
