"""Pair-basis modules, the Z/4 functional, and the parity combinatorics."""

import numpy as np
import pytest

from torsionlab.symrep import (
    PairBasisSpace,
    StandardModule,
    all_permutations,
    even_sum_subspace_check,
    f2_rank,
    kernel_of_phi,
    phi_functional,
    prop33_suite,
    prop34_generators,
    psi_action,
    spanning_set_odd,
    standard_rep_mod2_of_V,
    transposition,
    verify_prop34,
)


def test_psi_action_examples():
    s = PairBasisSpace(3, 2)
    v = s.basis_vector(1, 3)
    assert (psi_action((1, 2, 3), v, s) == v).all()
    # (1 2) sends [1,3] to [2,3]
    assert (psi_action(transposition(3, 1, 2), v, s) == s.basis_vector(2, 3)).all()
    # the 3-cycle 1->2->3->1 on [1,2]' + 2[2,3]' over Z/4
    s4 = PairBasisSpace(3, 4)
    cyc = (2, 3, 1)
    w = (s4.basis_vector(1, 2) + 2 * s4.basis_vector(2, 3)) % 4
    expected = (s4.basis_vector(2, 3) + 2 * s4.basis_vector(3, 1)) % 4
    assert (psi_action(cyc, w, s4) == expected).all()


def test_psi_action_is_group_action():
    s = PairBasisSpace(5, 2)
    rng = np.random.default_rng(11)
    perms = all_permutations(5)
    for _ in range(20):
        p = perms[rng.integers(len(perms))]
        q = perms[rng.integers(len(perms))]
        v = rng.integers(0, 2, size=s.dim)
        composed = tuple(p[q[i] - 1] for i in range(5))
        lhs = psi_action(composed, v, s)
        rhs = psi_action(p, psi_action(q, v, s), s)
        assert (lhs == rhs).all()


def test_standard_module_relations_odd():
    std = StandardModule(5)
    vs = [std.v(i) for i in range(1, 6)]
    assert f2_rank(vs) == 4
    assert not (sum(vs) % 2).any()


def test_standard_module_relations_even():
    std = StandardModule(6)
    # v_(s,t) + v_(s,j) = v_(t,j) for distinct s, t, j
    for s, t, j in [(1, 2, 3), (2, 5, 6), (1, 6, 4)]:
        lhs = (std.v_pair(s, t) + std.v_pair(s, j)) % 2
        assert (lhs == std.v_pair(t, j)).all()
    # sum over j != i of v_(i,j) = 0
    for i in range(1, 7):
        total = sum(std.v_pair(i, j) for j in range(1, 7) if j != i) % 2
        assert not total.any()
    assert f2_rank([std.v_pair(1, j) for j in range(2, 7)]) == 4


def test_spanning_set_odd_unique_relation():
    # the kernel of the spanning map is exactly the all-ones vector
    vs = spanning_set_odd(5)
    assert f2_rank(vs) == 4
    assert not (sum(vs) % 2).any()


@pytest.mark.parametrize("d", [5, 6, 7])
def test_prop33(d):
    assert all(r.status == "pass" for r in prop33_suite(d))


def test_prop34_details():
    gens = prop34_generators()
    assert all(phi_functional(g) == 0 for g in gens)
    kernel = kernel_of_phi()
    assert len(kernel) == 16
    assert all(r.status == "pass" for r in verify_prop34())


def test_phi_invariance_exhaustive():
    s = PairBasisSpace(3, 4)
    import itertools

    for p in all_permutations(3):
        for coords in itertools.product(range(4), repeat=3):
            v = np.array(coords, dtype=np.int64)
            assert phi_functional(psi_action(p, v, s)) == phi_functional(v)


@pytest.mark.parametrize("d,g", [(4, 1), (6, 2)])
def test_parity_checks(d, g):
    reports = even_sum_subspace_check(d)
    assert all(r.status == "pass" for r in reports)


@pytest.mark.parametrize("g", [1, 2, 3])
def test_faithfulness(g):
    assert all(r.status == "pass" for r in standard_rep_mod2_of_V(g))
