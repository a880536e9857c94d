"""Enumeration, commutator subgroups, and the genus-1 closed forms."""

import numpy as np
import pytest

from torsionlab import AbelianType, CapacityError, IncompleteGeneratorsError, ModMatrix
from torsionlab.quotients import (
    SatoOracle,
    abelianization,
    closed_form_commutator,
    closure_keys,
    commutator_subgroup,
    commutator_word_matrix,
    enumerate_gamma2,
    enumerate_gamma2_cached,
    gamma2_order,
    layer_generation_check,
    layer_subgroup_keys,
    minus_one_decomposition_check,
    sigma_tau,
    verify_commutator_formula,
    verify_mod32_congruences,
)


def int_product(mats):
    out = [[1, 0], [0, 1]]
    for m in mats:
        out = [
            [sum(out[i][k] * m[k][j] for k in range(2)) for j in range(2)]
            for i in range(2)
        ]
    return out


def int_power(m, n):
    if n < 0:
        m = [[m[1][1], -m[0][1]], [-m[1][0], m[0][0]]]
        n = -n
    return int_product([m] * n) if n else [[1, 0], [0, 1]]


@pytest.mark.parametrize("m,expected", [(2, 8), (3, 64), (4, 512), (5, 4096)])
def test_genus1_orders(m, expected):
    q = enumerate_gamma2_cached(1, m)
    assert q.order == expected == gamma2_order(1, m)


def test_layer_orders_by_direct_enumeration():
    # |Gamma(2^n)/Gamma(2^(n+1))| = 2^3 at genus 1 for n = 1, 2, 3
    for n in (1, 2, 3):
        q = enumerate_gamma2_cached(1, n + 1)
        assert len(layer_subgroup_keys(q, n)) == 8


def test_incomplete_generators_detected():
    sigma, tau = sigma_tau(3)
    with pytest.raises(IncompleteGeneratorsError):
        enumerate_gamma2(1, 3, seed_generators=[sigma])


def test_capacity_cap_honored():
    with pytest.raises(CapacityError):
        enumerate_gamma2(1, 4, cap_elements=100)
    with pytest.raises(CapacityError):
        enumerate_gamma2(2, 4)  # beyond the supported level range


def test_commutator_subgroup_genus1():
    q = enumerate_gamma2_cached(1, 4)
    c = commutator_subgroup(q)
    assert c.order == 4
    word = ModMatrix(commutator_word_matrix(1, 1).astype(np.int64), 4)
    cyclic = {word**k for k in range(4)}
    assert {m for m in c.matrices()} == cyclic


def test_commutator_of_abelian_group_trivial():
    # the layer Gamma(4)/Gamma(8) with its own generators is abelian
    sigma, tau = sigma_tau(3)
    seeds = [sigma**2, tau**2, ModMatrix.scalar(5, 2, 3)]
    keys = closure_keys(seeds)
    from torsionlab.quotients import QuotientGroup

    q = QuotientGroup(genus=1, level=3, keys=keys, generators=tuple(seeds))
    c = commutator_subgroup(q)
    assert c.order == 1


def test_abelianization_genus1():
    q = enumerate_gamma2_cached(1, 4)
    ab, census = abelianization(q)
    assert ab == AbelianType((8, 8, 2))
    assert sum(census.values()) == 128


def test_abelianization_of_abelian_group_is_itself():
    sigma, _ = sigma_tau(4)
    seeds = [sigma]
    keys = closure_keys(seeds)
    from torsionlab.quotients import QuotientGroup

    q = QuotientGroup(genus=1, level=4, keys=keys, generators=tuple(seeds))
    ab, _ = abelianization(q)
    assert ab == AbelianType((8,))  # sigma has order 8 mod 16


def test_commutator_word_matches_closed_form():
    # the word at 2-power exponents, expanded exactly over Z by an oracle
    sigma = [[1, -2], [0, 1]]
    tau = [[1, 0], [2, 1]]
    for m, n in [(1, 1), (2, 1), (1, 2), (3, 4), (6, 6)]:
        a = int_power(sigma, 1 << (m - 1))
        b = int_power(tau, 1 << (n - 1))
        a_inv = int_power(sigma, -(1 << (m - 1)))
        b_inv = int_power(tau, -(1 << (n - 1)))
        oracle = int_product([b, a_inv, b_inv, a])
        assert (commutator_word_matrix(m, n) == np.array(oracle, dtype=object)).all()
        assert (closed_form_commutator(m, n) == np.array(oracle, dtype=object)).all()


def test_closed_form_examples():
    assert closed_form_commutator(1, 1).tolist() == [[-3, 8], [-8, 21]]
    assert closed_form_commutator(2, 1).tolist() == [[-7, 32], [-16, 73]]
    assert closed_form_commutator(1, 2).tolist() == [[-7, 16], [-32, 73]]


def test_verify_commutator_formula():
    reports = verify_commutator_formula(6)
    assert all(r.status == "pass" for r in reports)


def test_mod32_congruences():
    reports = verify_mod32_congruences()
    assert all(r.status == "pass" for r in reports)
    witness = reports[0].witness
    # the product carrying sigma^2 lands on the sigma^8 class, and vice versa;
    # the two products exhaust {sigma^8, tau^8} mod 32
    sigma, tau = sigma_tau(5)
    assert witness["sigma_heavy_product"] == (sigma**8).serialize()
    assert witness["tau_heavy_product"] == (tau**8).serialize()
    assert witness["fourth_power"] == ModMatrix.scalar(17, 2, 5).serialize()


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_layer_generation(n):
    reports = layer_generation_check(1, n)
    assert all(r.status == "pass" for r in reports)


def test_minus_one_decomposition():
    reports = minus_one_decomposition_check(4)
    assert all(r.status == "pass" for r in reports)


def test_genus1_level5_abelianization_stable():
    q5 = enumerate_gamma2_cached(1, 5)
    ab5, _ = abelianization(q5)
    assert ab5 == AbelianType((8, 8, 2))


def test_sato_oracle_membership():
    from torsionlab.quotients import _genus2_transvections

    oracle = SatoOracle(genus=2, level=3)
    t = _genus2_transvections(3)
    # 4th powers of transvections are in Gamma(4) with a 4 in an off slot
    assert not oracle.is_member(t["a1^4"])
    assert not oracle.is_member(t["b2^4"])
    assert oracle.is_member(ModMatrix.identity(4, 3))
    # squares of the 4th powers have the off slots divisible by 8
    assert oracle.is_member(t["a1^4"] * t["a1^4"])


def test_genus2_level2_layer_order():
    # |Gamma(2)/Gamma(4)| = 2^10 at genus 2
    q = enumerate_gamma2_cached(2, 2)
    assert q.order == 1 << 10
