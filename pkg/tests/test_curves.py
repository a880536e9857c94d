"""Gamma values, the curve isomorphism, and division-polynomial torsion."""

from fractions import Fraction

import pytest

from torsionlab.curves import (
    CurveSpec,
    DEFAULT_FIXTURES,
    Poly,
    division_polynomials,
    gamma_values,
    halving_x_coordinates,
    order4_x_polynomial,
    roots_polynomial,
    verify_curve_isomorphism,
    verify_elliptic_4torsion,
)
from torsionlab.errors import StructuralError
from torsionlab.towers import Tower


def test_gamma_values_cubic():
    spec = CurveSpec.of(0, 1, 3)
    gam = gamma_values(spec)
    assert gam[(1, 2)] == 1 and gam[(1, 3)] == 3 and gam[(2, 3)] == 2
    assert gam[(2, 1)] == -1


def test_gamma_values_quartic():
    spec = CurveSpec.of(0, 1, 3, 7)
    gam = gamma_values(spec)
    assert gam[(1, 2)] == (1 - 0) * (7 - 3)  # = 4
    assert gam[(1, 3)] == (3 - 0) * (7 - 1)
    assert gam[(2, 1)] == -gam[(1, 2)]


def test_degenerate_roots_rejected():
    with pytest.raises(StructuralError):
        CurveSpec.of(0, 1, 1)


def test_beta_squared_worked_example():
    # 1/6 - 1/7 = 1/42 and gamma_12 / beta^2 = 4/168 = 1/42
    spec = CurveSpec(DEFAULT_FIXTURES[4])
    a4 = spec.alpha(4)
    q = (a4 - spec.alpha(1)) * (a4 - spec.alpha(2)) * (a4 - spec.alpha(3))
    assert q == 168
    lhs = Fraction(1, 6) - Fraction(1, 7)
    assert lhs == Fraction(1, 42) == gamma_values(spec)[(1, 2)] / q


@pytest.mark.parametrize("d", [4, 6])
def test_curve_isomorphism(d):
    assert all(r.status == "pass" for r in verify_curve_isomorphism(CurveSpec(DEFAULT_FIXTURES[d])))


def test_division_polynomial_degrees():
    f = roots_polynomial((Fraction(0), Fraction(1), Fraction(3)))
    psi = division_polynomials(f, upto=8)
    # psi_n has x-degree (n^2-1)/2 for odd n, (n^2-4)/2 for even n
    for n in (3, 5, 7):
        assert psi[n][0].degree == (n * n - 1) // 2
        assert psi[n][1] == 0
    for n in (2, 4, 6, 8):
        assert psi[n][1] == 1
        assert psi[n][0].degree == (n * n - 4) // 2


def test_order4_polynomial_against_halving_oracle():
    # the halving construction is the independent route to the same roots
    spec = CurveSpec.of(0, 1, 3)
    f = roots_polynomial(spec.roots)
    g4 = order4_x_polynomial(f)
    assert g4.degree == 6 and g4.coeffs[-1] == 2
    tower = Tower()
    tower.adjoin_sqrt(-1, "i")
    for i in range(1, 4):
        for j in range(i + 1, 4):
            tower.adjoin_sqrt(spec.alpha(j) - spec.alpha(i), f"sqrt_{i}{j}")
    xs = halving_x_coordinates(tower, spec.roots, spec)
    assert len(xs) == 6
    for x in xs:
        assert g4(x).is_zero()


def test_halving_formula_explicit():
    # x-coordinates above e_1 = 0 are +-sqrt(3) for roots (0, 1, 3)
    spec = CurveSpec.of(0, 1, 3)
    tower = Tower()
    tower.adjoin_sqrt(-1, "i")
    for i in range(1, 4):
        for j in range(i + 1, 4):
            tower.adjoin_sqrt(spec.alpha(j) - spec.alpha(i), f"sqrt_{i}{j}")
    xs = halving_x_coordinates(tower, spec.roots, spec)
    s3 = tower.sqrt(tower.rational(3))
    assert xs[0] in (s3, -s3) and xs[1] in (s3, -s3)


def test_elliptic_4torsion_suite():
    reports = verify_elliptic_4torsion()
    assert all(r.status == "pass" for r in reports)
    by_claim = {r.claim: r for r in reports}
    assert by_claim["cor12.4tors.tower-degree"].witness["degree"] == 8


def test_poly_arithmetic():
    x = Poly.x()
    p = (x - Poly.const(1)) * (x + Poly.const(1))
    assert p == x**2 - Poly.const(1)
    assert p(Fraction(3)) == 8
