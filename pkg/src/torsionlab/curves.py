"""Root fixtures, gamma values, the odd/even curve isomorphism, and 4-torsion.

A CurveSpec is a list of d distinct rationals specializing the branch points
of y^2 = prod(x - alpha_i).  The gamma values attached to index pairs are
alpha_j - alpha_i for odd d, and (alpha_j - alpha_i) * prod over the other
first-(2g+1) indices of (alpha_d - alpha_l) for even d.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import StructuralError
from .reports import VerificationReport, check
from .towers import Tower, TowerElement, in_span, subfield_span

DEFAULT_FIXTURES = {
    3: (Fraction(0), Fraction(1), Fraction(3)),
    4: (Fraction(0), Fraction(1), Fraction(3), Fraction(7)),
    5: (Fraction(0), Fraction(1), Fraction(3), Fraction(7), Fraction(12)),
    6: (Fraction(0), Fraction(1), Fraction(3), Fraction(7), Fraction(12), Fraction(20)),
}

# fixtures whose gamma values have multiplicatively independent odd square
# classes; these realize the generic radical-tower degrees.  For odd d the
# gamma values are the root differences themselves.
GENERIC_FIXTURES = {
    3: (Fraction(0), Fraction(3), Fraction(10)),
    4: (Fraction(0), Fraction(1), Fraction(2), Fraction(7)),
    5: (Fraction(0), Fraction(3), Fraction(10), Fraction(29), Fraction(102)),
    6: (Fraction(0), Fraction(1), Fraction(2), Fraction(5), Fraction(19), Fraction(88)),
}


@dataclass(frozen=True)
class CurveSpec:
    """d distinct rational branch points; genus g = floor((d-1)/2)."""

    roots: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.roots) < 3:
            raise StructuralError("need at least 3 branch points")
        if len(set(self.roots)) != len(self.roots):
            raise StructuralError("branch points must be pairwise distinct")

    @classmethod
    def of(cls, *roots) -> CurveSpec:
        return cls(tuple(Fraction(r) for r in roots))

    @property
    def d(self) -> int:
        return len(self.roots)

    @property
    def genus(self) -> int:
        return (self.d - 1) // 2

    def alpha(self, i: int) -> Fraction:
        return self.roots[i - 1]


def gamma_values(spec: CurveSpec) -> dict[tuple[int, int], Fraction]:
    """All ordered gamma values on indices 1..2g+1; antisymmetric under swap."""
    g = spec.genus
    out: dict[tuple[int, int], Fraction] = {}
    for i in range(1, 2 * g + 2):
        for j in range(1, 2 * g + 2):
            if i == j:
                continue
            value = spec.alpha(j) - spec.alpha(i)
            if spec.d == 2 * g + 2:
                for l in range(1, 2 * g + 2):
                    if l not in (i, j):
                        value *= spec.alpha(spec.d) - spec.alpha(l)
            if value == 0:
                raise StructuralError(f"gamma_({i},{j}) vanishes: degenerate roots")
            out[(i, j)] = value
    return out


# -- polynomials over Q ---------------------------------------------------------


class Poly:
    """Dense univariate polynomial with Fraction coefficients, low degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[Fraction | int]):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls) -> Poly:
        return cls([0, 1])

    @classmethod
    def const(cls, c) -> Poly:
        return cls([c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __add__(self, other: Poly) -> Poly:
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(
            [
                (self.coeffs[i] if i < len(self.coeffs) else 0)
                + (other.coeffs[i] if i < len(other.coeffs) else 0)
                for i in range(n)
            ]
        )

    def __neg__(self) -> Poly:
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other: Poly | Fraction | int) -> Poly:
        if isinstance(other, (Fraction, int)):
            return Poly([c * other for c in self.coeffs])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs))
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Poly:
        out = Poly([1])
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __call__(self, x):
        out = None
        for c in reversed(self.coeffs):
            out = c if out is None else out * x + c
        if out is None:
            return Fraction(0) if not isinstance(x, TowerElement) else x.tower.zero()
        return out

    def __repr__(self) -> str:
        return f"Poly({list(self.coeffs)})"


def roots_polynomial(roots: Sequence[Fraction]) -> Poly:
    out = Poly([1])
    for r in roots:
        out = out * Poly([-r, 1])
    return out


# -- the odd/even curve isomorphism ----------------------------------------------


def verify_curve_isomorphism(spec: CurveSpec) -> list[VerificationReport]:
    """The substitution carrying the even-degree curve onto the odd-degree one.

    With A = alpha_d and Q = prod(A - alpha_l), the checks are exact:
    (i) the pullback of the odd-curve equation under x' = 1/(A - x),
    y' = y / (beta (A - x)^(g+1)) equals (y^2 - f(x)) times the nonzero factor
    -1/(Q (A - x)^(2g+2)), where beta^2 = -Q (the quadratic twist constant the
    map realizes; with +Q the image lands on the twisted curve).
    (ii) 1/(A - alpha_j) - 1/(A - alpha_i) = gamma_(i,j)/Q for all pairs, so
    beta * sqrt of the difference generates the same extension as sqrt(gamma).
    """
    if spec.d not in (4, 6):
        raise StructuralError("the isomorphism check runs at even d in {4, 6}")
    g = spec.genus
    d = spec.d
    a_top = spec.alpha(d)
    q_val = Fraction(1)
    for l in range(1, d):
        q_val *= a_top - spec.alpha(l)
    gammas = gamma_values(spec)
    # (ii): exact rational identity for every pair
    pair_ok = True
    witness_pairs = []
    for i in range(1, d):
        for j in range(i + 1, d):
            lhs = 1 / (a_top - spec.alpha(j)) - 1 / (a_top - spec.alpha(i))
            rhs = gammas[(i, j)] / q_val
            witness_pairs.append({"pair": [i, j], "difference": lhs, "gamma_over_betasq": rhs})
            if lhs != rhs:
                pair_ok = False
    reports = [
        check(
            f"thm23.d{d}.beta-squared-identity",
            "thm23.curve-iso",
            pair_ok,
            beta_squared=q_val,
            pairs=witness_pairs,
        )
    ]
    # (i): checked at sample points exceeding the cleared degree bound, with
    # y^2 treated as a free value w (the identity is linear in w)
    beta_sq = -q_val
    f_poly = roots_polynomial(spec.roots)
    c = [1 / (a_top - spec.alpha(i)) for i in range(1, d)]
    samples = []
    ok = True
    x0 = Fraction(2)
    tested = 0
    while tested < 2 * d + 4:
        if any(x0 == r for r in spec.roots) or x0 == a_top:
            x0 += 1
            continue
        for w in (Fraction(0), Fraction(1), f_poly(x0)):
            xp = 1 / (a_top - x0)
            ypsq = w / (beta_sq * (a_top - x0) ** (2 * g + 2))
            lhs = ypsq - _prod(xp - ci for ci in c)
            factor = Fraction(-1) / (q_val * (a_top - x0) ** (2 * g + 2))
            rhs = (w - f_poly(x0)) * factor
            if lhs != rhs:
                ok = False
            if w == f_poly(x0) and lhs != 0:
                ok = False
        samples.append(str(x0))
        tested += 1
        x0 += 1
    reports.append(
        check(
            f"thm23.d{d}.pullback-identity",
            "thm23.curve-iso",
            ok,
            beta_squared_for_map=beta_sq,
            factor="-1/(Q*(A-x)^(2g+2))",
            sample_points=samples,
            degree_bound=2 * d + 3,
            note="the map lands on the stated curve with beta^2 = -Q; +Q gives its quadratic twist",
        )
    )
    return reports


def _prod(items) -> Fraction:
    out = Fraction(1)
    for x in items:
        out *= x
    return out


# -- division polynomials ---------------------------------------------------------


def division_polynomials(f: Poly, upto: int = 8) -> dict[int, tuple[Poly, int]]:
    """psi_n for y^2 = f(x) (monic cubic), as (polynomial, power of y).

    Seeds psi_2, psi_3, psi_4 use the standard b-invariant formulas; higher
    indices come from the doubling recurrences with y^2 reduced to f.
    """
    if f.degree != 3 or f.coeffs[3] != 1:
        raise StructuralError("division polynomials are set up for monic cubics")
    a6, a4, a2, _ = f.coeffs
    b2 = 4 * a2
    b4 = 2 * a4
    b6 = 4 * a6
    b8 = 4 * a2 * a6 - a4 * a4
    x = Poly.x()
    psi: dict[int, tuple[Poly, int]] = {
        0: (Poly([0]), 0),
        1: (Poly([1]), 0),
        2: (Poly([2]), 1),
        3: (
            3 * x**4 + b2 * x**3 + 3 * b4 * x**2 + 3 * b6 * x + Poly.const(b8),
            0,
        ),
        4: (
            (
                2 * x**6
                + b2 * x**5
                + 5 * b4 * x**4
                + 10 * b6 * x**3
                + 10 * b8 * x**2
                + (b2 * b8 - b4 * b6) * x
                + Poly.const(b4 * b8 - b6 * b6)
            )
            * 2,
            1,
        ),
    }

    def mul(a: tuple[Poly, int], b: tuple[Poly, int]) -> tuple[Poly, int]:
        p = a[0] * b[0]
        k = a[1] + b[1]
        if k >= 2:
            p = p * f ** (k // 2)
        return (p, k % 2)

    def sub(a: tuple[Poly, int], b: tuple[Poly, int]) -> tuple[Poly, int]:
        if a[1] != b[1]:
            raise StructuralError("mismatched y-parity in division polynomial recurrence")
        return (a[0] - b[0], a[1])

    for n in range(5, upto + 1):
        m = n // 2
        if n % 2 == 1:
            psi[n] = sub(mul(psi[m + 2], mul(psi[m], mul(psi[m], psi[m]))),
                         mul(psi[m - 1], mul(psi[m + 1], mul(psi[m + 1], psi[m + 1]))))
        else:
            num = sub(mul(psi[m + 2], mul(psi[m - 1], psi[m - 1])),
                      mul(psi[m - 2], mul(psi[m + 1], psi[m + 1])))
            prod = mul(psi[m], num)
            # prod = psi_n * psi_2 with y^2 already reduced: its polynomial
            # part is 2 f P_n, so divide exactly by 2f and restore the y
            p, k = prod
            if k != 0:
                raise StructuralError("even division polynomial has stray y parity")
            psi[n] = (_exact_div(p * Fraction(1, 2), f), 1)
    return psi


def _exact_div(p: Poly, q: Poly) -> Poly:
    """Exact polynomial division; raises if a remainder survives."""
    if not q.coeffs:
        raise StructuralError("division by the zero polynomial")
    rem = list(p.coeffs)
    out = [Fraction(0)] * max(0, len(rem) - len(q.coeffs) + 1)
    while len(rem) >= len(q.coeffs) and any(rem):
        shift = len(rem) - len(q.coeffs)
        c = rem[-1] / q.coeffs[-1]
        out[shift] = c
        for i, qc in enumerate(q.coeffs):
            rem[shift + i] -= c * qc
        while rem and rem[-1] == 0:
            rem.pop()
    if any(rem):
        raise StructuralError("polynomial division left a remainder")
    return Poly(out)


def order4_x_polynomial(f: Poly) -> Poly:
    """psi_4 / psi_2: the degree-6 polynomial whose roots are order-4 x-coordinates."""
    psi = division_polynomials(f, upto=4)
    p4, k4 = psi[4]
    assert k4 == 1
    return p4 * Fraction(1, 2)


def halving_x_coordinates(
    tower: Tower, roots: Sequence[TowerElement | Fraction], spec: CurveSpec
) -> list[TowerElement]:
    """e_i +- sqrt((e_i - e_j)(e_i - e_k)): the halving formulas for 2-torsion."""
    e = [tower.rational(r) for r in spec.roots]
    out = []
    for i in range(3):
        j, k = [t for t in range(3) if t != i]
        radicand = (spec.roots[i] - spec.roots[j]) * (spec.roots[i] - spec.roots[k])
        s = tower.principal_sqrt(tower.rational(radicand))
        if s is None:
            raise StructuralError("halving square root is missing from the tower")
        out.extend([e[i] + s, e[i] - s])
    return out


def verify_elliptic_4torsion(spec: CurveSpec | None = None) -> list[VerificationReport]:
    """Order-4 coordinates lie in Q(i, sqrt of root differences), and conversely.

    The degree-6 factor of the 4-division polynomial is the independent
    oracle; its roots are compared with the halving formulas, and membership
    both ways runs through the tower's linear algebra.
    """
    if spec is None:
        spec = CurveSpec(DEFAULT_FIXTURES[3])
    if spec.d != 3:
        raise StructuralError("the 4-torsion check runs on cubic models")
    f = roots_polynomial(spec.roots)
    g4 = order4_x_polynomial(f)

    tower = Tower()
    tower.adjoin_sqrt(-1, "zeta4")
    diff_roots = {}
    for i in range(1, 4):
        for j in range(i + 1, 4):
            radicand = spec.alpha(j) - spec.alpha(i)
            diff_roots[(i, j)] = tower.adjoin_sqrt(radicand, f"sqrt_e{j}-e{i}")
    reports = [
        check(
            "cor12.4tors.tower-degree",
            "cor12.level4",
            tower.degree == 8,
            degree=tower.degree,
            adjunctions=[(a.label, a.degree) for a in tower.adjunctions],
        )
    ]
    xs = halving_x_coordinates(tower, spec.roots, spec)
    # oracle comparison: each halving value is a root of psi_4/psi_2
    all_roots = all(g4(x).is_zero() for x in xs)
    distinct = all(
        not (a - b).is_zero() for a, b in itertools.combinations(xs, 2)
    )
    # complete factorization over the tower: 2 * prod(x - r) = g4,
    # expanded symbolically with tower coefficients
    coeff_elems = [tower.rational(1)]
    for r in xs:
        new = [tower.zero() for _ in range(len(coeff_elems) + 1)]
        for idx, c in enumerate(coeff_elems):
            new[idx + 1] = new[idx + 1] + c
            new[idx] = new[idx] - c * r
        coeff_elems = new
    expanded_matches = all(
        (coeff_elems[k] * 2) == tower.rational(g4.coeffs[k] if k < len(g4.coeffs) else 0)
        for k in range(7)
    )
    reports.append(
        check(
            "cor12.4tors.division-polynomial-roots",
            "cor12.level4",
            all_roots and distinct and expanded_matches,
            degree=g4.degree,
            oracle_leading=g4.coeffs[-1],
        )
    )
    # y-coordinates of the order-4 points also lie in the tower
    ys = []
    y_ok = True
    for x in xs:
        val = f(x)
        y = tower.sqrt(val)
        if y is None:
            y_ok = False
        else:
            ys.append(y)
    reports.append(check("cor12.4tors.y-coordinates", "cor12.level4", y_ok, count=len(ys)))
    # conversely each sqrt of a root difference lies in the coordinate field
    coords = xs + ys
    basis = subfield_span(coords, cap_dim=tower.degree)
    conversely = True
    memberships = {}
    for (i, j), root in diff_roots.items():
        sol = in_span(root, basis)
        memberships[f"sqrt(e{j}-e{i})"] = None if sol is None else "member"
        if sol is None:
            conversely = False
    reports.append(
        check(
            "cor12.4tors.converse-membership",
            "cor12.level4",
            conversely,
            coordinate_field_dimension=len(basis),
            memberships=memberships,
        )
    )
    return reports


def thm23_suite(g: int) -> list[VerificationReport]:
    """Curve-side checks joined with the parity combinatorics."""
    from .symrep import thm23_parity_suite

    reports = thm23_parity_suite(g)
    if g in (1, 2):
        spec = CurveSpec(DEFAULT_FIXTURES[2 * g + 2])
        reports.extend(verify_curve_isomorphism(spec))
    return reports
