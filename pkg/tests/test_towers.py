"""Tower arithmetic, square detection, membership, and sign characters."""

import random
from fractions import Fraction

import pytest

from torsionlab.errors import StructuralError
from torsionlab.towers import SignCharacter, Tower, in_span, span_basis, subfield_span


def test_proper_adjunction_degrees():
    t = Tower()
    t.adjoin_sqrt(-1, "i")
    t.adjoin_sqrt(2, "sqrt2")
    t.adjoin_sqrt(3, "sqrt3")
    assert t.degree == 8
    assert [a.degree for a in t.adjunctions] == [2, 2, 2]
    # degree multiplicativity: each step doubles
    t.adjoin_sqrt(5, "sqrt5")
    assert t.degree == 16


def test_derived_adjunctions():
    t = Tower()
    s2 = t.adjoin_sqrt(2, "sqrt2")
    s3 = t.adjoin_sqrt(3, "sqrt3")
    s6 = t.adjoin_sqrt(6, "sqrt6")
    assert t.adjunctions[-1].degree == 1
    assert s6 == s2 * s3
    # rational squares collapse to rationals
    s4 = t.adjoin_sqrt(4, "sqrt4")
    assert s4 == 2
    assert t.degree == 4


def test_membership_classical():
    # sqrt2 is not in Q(sqrt3)
    t = Tower()
    t.adjoin_sqrt(3, "sqrt3")
    assert t.sqrt(t.rational(2)) is None
    s2 = t.adjoin_sqrt(2, "sqrt2")
    assert not t.in_prefix(s2, 1)
    assert t.in_prefix(t.root(0), 1)


def test_membership_product_relation():
    # sqrt(g12) * sqrt(g13) lies in Q(sqrt(g12*g13))
    g12, g13 = Fraction(3), Fraction(7)
    t = Tower()
    prod_root = t.adjoin_sqrt(g12 * g13, "sqrt_prod")
    s12 = t.adjoin_sqrt(g12, "sqrt_g12")
    s13 = t.sqrt(t.rational(g13))
    assert s13 is not None
    combined = s12 * s13
    assert t.in_prefix(combined, 1), "the product collapses into the first step"
    assert combined == prod_root or combined == -prod_root


def test_nested_radical_square_detection():
    t = Tower()
    t.adjoin_sqrt(2, "sqrt2")
    s2 = t.root(0)
    y = t.sqrt(3 + 2 * s2)
    assert y is not None and y * y == 3 + 2 * s2
    assert y == 1 + s2 or y == -(1 + s2)
    assert t.sqrt(1 + s2) is None


def test_field_axioms_sampled():
    rng = random.Random(41)
    t = Tower()
    t.adjoin_sqrt(-1, "i")
    t.adjoin_sqrt(2, "sqrt2")
    t.adjoin_sqrt(5, "sqrt5")

    def random_element():
        coeffs = {}
        for _ in range(3):
            sup = frozenset(k for k in range(3) if rng.random() < 0.5)
            coeffs[sup] = Fraction(rng.randrange(-4, 5), rng.randrange(1, 4))
        from torsionlab.towers import TowerElement

        return TowerElement(t, coeffs)

    for _ in range(15):
        a, b, c = random_element(), random_element(), random_element()
        assert a * (b + c) == a * b + a * c
        assert (a + b) * c == a * c + b * c
        assert a * b == b * a
        if not a.is_zero():
            assert (b / a) * a == b


def test_inversion_of_nonzero_elements():
    t = Tower()
    i = t.adjoin_sqrt(-1, "i")
    s2 = t.adjoin_sqrt(2, "sqrt2")
    zeta8 = (1 + i) * s2 / 2
    assert zeta8 * zeta8 == i
    assert (1 / zeta8) * zeta8 == 1
    assert zeta8**8 == 1
    with pytest.raises(ZeroDivisionError):
        _ = 1 / t.zero()


def test_principal_branch_of_derived_roots():
    t = Tower()
    i = t.adjoin_sqrt(-1, "i")
    s2 = t.adjoin_sqrt(2, "sqrt2")
    m2 = t.adjoin_sqrt(-2, "sqrt_minus2")
    # principal sqrt(-2) = +i sqrt(2), argument pi/2
    assert m2 == i * s2
    e = m2.enclosure(64)
    assert e.im.lo > 0


def test_enclosures_confirm_identities():
    t = Tower()
    t.adjoin_sqrt(2, "sqrt2")
    s2 = t.root(0)
    y = t.adjoin_sqrt(1 + s2, "nested")
    lhs = (y**2).enclosure(80)
    rhs = (1 + s2).enclosure(80)
    assert lhs.intersects(rhs)


def test_span_and_subfield():
    t = Tower()
    t.adjoin_sqrt(2, "sqrt2")
    t.adjoin_sqrt(3, "sqrt3")
    s2, s3 = t.root(0), t.root(1)
    basis = span_basis([t.one(), s2, s3, s2 * s3])
    assert len(basis) == 4
    coords = in_span(2 + 3 * s2, basis)
    assert coords is not None
    field = subfield_span([s2 * s3])
    assert len(field) == 2  # Q(sqrt6) inside Q(sqrt2, sqrt3)
    assert in_span(s2, field) is None


def test_sign_character_consistency():
    t = Tower()
    t.adjoin_sqrt(2, "sqrt2")
    t.adjoin_sqrt(3, "sqrt3")
    y = t.adjoin_sqrt(1 + t.root(0), "nested")  # radicand involves sqrt2
    # negating sqrt3 alone is fine
    assert SignCharacter(t, {1: -1}).is_automorphism()
    # negating sqrt2 breaks the nested radicand 1 + sqrt2
    assert not SignCharacter(t, {0: -1}).is_automorphism()


def test_gamma_antisymmetry():
    from torsionlab.curves import CurveSpec, gamma_values

    for roots in [(0, 1, 3), (0, 1, 3, 7), (0, 3, 10, 29, 102), (0, 1, 3, 7, 12, 20)]:
        spec = CurveSpec.of(*roots)
        gam = gamma_values(spec)
        for (i, j), v in gam.items():
            assert gam[(j, i)] == -v


def test_tower_membership_interface():
    from torsionlab.towers import tower_membership

    t = Tower()
    t.adjoin_sqrt(2, "sqrt2")
    t.adjoin_sqrt(3, "sqrt3")
    s2, s3 = t.root(0), t.root(1)
    # prefix query: sqrt2 lies in the first step's subtower, sqrt3 does not
    assert tower_membership(t, s2, subtower_steps=1).member
    res = tower_membership(t, s3, subtower_steps=1)
    assert not res.member and res.certificate["support"] == [[1]]
    # generated-subfield query with coordinate certificate
    res = tower_membership(t, 5 * s2 * s3 + 1, generators=[s2 * s3])
    assert res.member and res.certificate["coordinates"] is not None
    res = tower_membership(t, s2, generators=[s2 * s3])
    assert not res.member and "failed_system_pivots" in res.certificate
    with pytest.raises(StructuralError):
        tower_membership(t, s2)


def test_square_detector_completeness_random():
    # soundness is asserted inside sqrt (any returned root is squared and
    # compared); completeness is the property the degree certificates rest
    # on, so hammer it: squares of random elements must always be detected
    rng = random.Random(2718)
    t = Tower()
    t.adjoin_sqrt(-1, "i")
    t.adjoin_sqrt(2, "sqrt2")
    t.adjoin_sqrt(1 + t.root(1), "nested")
    t.adjoin_sqrt(5, "sqrt5")
    from torsionlab.towers import TowerElement

    for trial in range(60):
        coeffs = {}
        for _ in range(rng.randrange(1, 4)):
            sup = frozenset(k for k in range(4) if rng.random() < 0.4)
            coeffs[sup] = Fraction(rng.randrange(-5, 6), rng.randrange(1, 5))
        y = TowerElement(t, coeffs)
        if y.is_zero():
            continue
        x = y * y
        r = t.sqrt(x)
        assert r is not None, f"missed the square of {y!r}"
        assert r == y or r == -y


def test_sqrt_non_squares_rejected():
    t = Tower()
    t.adjoin_sqrt(2, "sqrt2")
    t.adjoin_sqrt(3, "sqrt3")
    s2, s3 = t.root(0), t.root(1)
    for x in (t.rational(5), s2 + 1, s2 * s3 + 2, 7 * s3):
        r = t.sqrt(x)
        if r is not None:
            assert r * r == x  # would be a (surprising but valid) root
            assert False, f"{x!r} unexpectedly a square"
