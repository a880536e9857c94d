"""Tower degrees, Galois structure, sign characters, and the dyadic identities."""

from fractions import Fraction

import pytest

from torsionlab.abelian import AbelianType
from torsionlab.curves import CurveSpec, DEFAULT_FIXTURES, GENERIC_FIXTURES
from torsionlab.thm1 import (
    build_theorem1_tower,
    expected_galois_structure,
    higher_radicands,
    minus_one_character,
    thm1_suite,
    verify_minus_one_action,
    verify_remark13_identities,
)


def test_expected_structures():
    assert expected_galois_structure(1) == AbelianType((8, 8, 2))
    assert expected_galois_structure(2) == AbelianType((4, 4, 4, 4, 2, 2, 2, 2, 2, 2))


def test_higher_radicands_genus1():
    spec = CurveSpec.of(0, 1, 3)
    rad = higher_radicands(spec)
    assert rad == {1: 12, 2: -18, 3: 6}
    # the product of the three radicands is minus the fourth power of
    # gamma_12 gamma_13 gamma_23
    assert rad[1] * rad[2] * rad[3] == -((1 * 3 * 2) ** 4)


def test_higher_radicands_genus2_dependency():
    spec = CurveSpec(GENERIC_FIXTURES[5])
    rad = higher_radicands(spec)
    total = Fraction(1)
    for v in rad.values():
        total *= v
    gam_prod = Fraction(1)
    from torsionlab.curves import gamma_values

    gam = gamma_values(spec)
    for i in range(1, 6):
        for j in range(i + 1, 6):
            gam_prod *= gam[(i, j)]
    assert total == gam_prod**2


def test_genus1_tower_structure():
    result = build_theorem1_tower(CurveSpec(GENERIC_FIXTURES[3]))
    assert not result.degenerate
    assert result.relative_degree == 128
    assert result.structure == AbelianType((8, 8, 2))
    assert result.filtration == {"sqrt_level": 2, "fourth_level": 4}


def test_genus2_last_fourth_root_is_dependent():
    # the 2g+1-st higher radical is a product of the others (times an
    # element of the gamma layer): its adjunction must come back derived
    result = build_theorem1_tower(CurveSpec(GENERIC_FIXTURES[5]))
    log = dict(result.adjunction_log)
    assert all(log[f"sqrt_rad{k}"] == 1 for k in range(1, 6))
    assert all(log[f"root4_rad{k}"] == 2 for k in range(1, 5))
    assert log["root4_rad5"] == 1


def test_genus1_default_fixture_is_degenerate():
    result = build_theorem1_tower(CurveSpec(DEFAULT_FIXTURES[3]))
    assert result.degenerate
    assert result.relative_degree == 32


def test_genus2_default_fixture_is_degenerate():
    result = build_theorem1_tower(CurveSpec(DEFAULT_FIXTURES[5]))
    assert result.degenerate
    assert any("gamma layer collapsed" in r for r in result.degeneracy_reasons)


def test_genus1_sign_action():
    result = build_theorem1_tower(CurveSpec(GENERIC_FIXTURES[3]))
    reports = verify_minus_one_action(result)
    assert all(r.status == "pass" for r in reports)
    char = minus_one_character(result)
    # the eighth-root steps are negated, the fourth-root steps are fixed
    for idx in result.higher_step_indices["eighth"]:
        assert char.sign(idx) == -1
    for idx in result.higher_step_indices["fourth"]:
        assert char.sign(idx) == 1


def test_mutated_character_violates_dependent_generator():
    result = build_theorem1_tower(CurveSpec(GENERIC_FIXTURES[3]))
    flip = result.higher_step_indices["eighth"][0]
    mutated = minus_one_character(result, flip_step=flip)
    assert mutated.is_automorphism()
    # the derived third generator no longer follows the parity pattern
    g3 = result.generators[3]
    assert mutated.apply(g3) != -g3


@pytest.mark.parametrize("g", [1])
def test_thm1_suite_fast(g):
    assert all(r.status == "pass" for r in thm1_suite(g))


def test_remark13_identities():
    reports = verify_remark13_identities()
    assert all(r.status == "pass" for r in reports)
    by_claim = {r.claim: r for r in reports}
    assert by_claim["remark13.eighth-power"].witness["radicand"] == 12
    assert by_claim["remark13.decoration-identities"].witness["product"] == 4
    assert by_claim["remark13.decoration-identities"].witness["total"] == 8


@pytest.mark.parametrize("d,degree,structure", [
    (4, 128, (8, 8, 2)),
    (6, 1 << 14, (4, 4, 4, 4, 2, 2, 2, 2, 2, 2)),
])
def test_even_degree_tower_structure(d, degree, structure):
    # even-degree models use the product-form gamma values; the generic
    # degrees and the -1 action are the same as for the odd models
    result = build_theorem1_tower(CurveSpec(GENERIC_FIXTURES[d]))
    assert not result.degenerate
    assert result.relative_degree == degree
    assert result.structure == AbelianType(structure)
    reports = verify_minus_one_action(result)
    assert all(r.status == "pass" for r in reports)


def test_even_degree_default_fixture_degenerate():
    result = build_theorem1_tower(CurveSpec(DEFAULT_FIXTURES[4]))
    assert result.degenerate and result.relative_degree == 32
