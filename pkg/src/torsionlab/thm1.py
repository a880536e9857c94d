"""Radical-tower constructions for the maximal abelian 2-power torsion field.

Over the cyclotomic base (Q(i, sqrt2), extended by a 16th root of unity at
genus 1), the tower adjoins the square roots of all gamma values and then the
higher radicals: fourth roots of prod_(j != i) gamma_(i,j) at genus >= 2, and
the three eighth roots of gamma products at genus 1.  Proper-adjunction
certificates give the exact relative degree; the Galois structure over the
base follows from the degrees of the Kummer filtration subfields, and the
scalar -1 acts through an explicit sign character on the steps.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .abelian import AbelianType
from .curves import CurveSpec, GENERIC_FIXTURES, gamma_values
from .errors import BranchError, StructuralError
from .reports import VerificationReport, check
from .towers import SignCharacter, Tower, TowerElement


def expected_galois_structure(g: int) -> AbelianType:
    """(Z/2)^(2g^2-g) x (Z/4)^(2g) for g >= 2; Z/2 x (Z/8)^2 for g = 1."""
    if g == 1:
        return AbelianType((8, 8, 2))
    return AbelianType(tuple([4] * (2 * g) + [2] * (2 * g * g - g)))


def _adjoin_base(tower: Tower, g: int) -> int:
    """Adjoin the 2-power roots of unity entering the generator arithmetic."""
    i = tower.adjoin_sqrt(-1, "zeta4")
    sqrt2 = tower.adjoin_sqrt(2, "sqrt2")
    if g == 1:
        zeta8 = (1 + i) * sqrt2 / 2
        tower.named["zeta8"] = zeta8
        tower.adjoin_sqrt(zeta8, "zeta16")
    return tower.nsteps()


def higher_radicands(spec: CurveSpec) -> dict[int, Fraction]:
    """Radicands of the higher generators: products over one row of gammas.

    Genus >= 2: P_i = prod_(j != i) gamma_(i,j) for i = 1..2g+1 (fourth
    roots).  Genus 1: the three products gamma_(i,j) gamma_(i,k) gamma_(j,k)^2
    in cyclic order (eighth roots).
    """
    g = spec.genus
    gam = gamma_values(spec)
    if g >= 2:
        out = {}
        for i in range(1, 2 * g + 2):
            p = Fraction(1)
            for j in range(1, 2 * g + 2):
                if j != i:
                    p *= gam[(i, j)]
            out[i] = p
        return out
    return {
        1: gam[(1, 2)] * gam[(1, 3)] * gam[(2, 3)] ** 2,
        2: gam[(2, 3)] * gam[(2, 1)] * gam[(3, 1)] ** 2,
        3: gam[(3, 1)] * gam[(3, 2)] * gam[(1, 2)] ** 2,
    }


@dataclass
class TheoremTowerResult:
    """The built tower plus its certified degree and structure data."""

    spec: CurveSpec
    tower: Tower
    base_steps: int
    gamma_roots: dict[tuple[int, int], TowerElement]
    gamma_step_indices: list[int]
    generators: dict[int, TowerElement]
    higher_step_indices: dict[str, list[int]]
    relative_degree: int
    expected_order: int
    filtration: dict[str, int]
    structure: AbelianType | None
    degenerate: bool
    degeneracy_reasons: list[str] = field(default_factory=list)

    @property
    def adjunction_log(self) -> list[tuple[str, int]]:
        return [(a.label, a.degree) for a in self.tower.adjunctions]


def _filtration_degrees(spec: CurveSpec, precision: int) -> dict[str, int]:
    """Degrees over the base of the Kummer filtration subfields."""
    g = spec.genus
    rad = higher_radicands(spec)
    out = {}
    t1 = Tower(precision)
    base1 = _adjoin_base(t1, g)
    for k, r in rad.items():
        t1.adjoin_sqrt(r, f"sqrt_rad{k}")
    out["sqrt_level"] = t1.nsteps() - base1
    if g == 1:
        t2 = Tower(precision)
        base2 = _adjoin_base(t2, g)
        for k, r in rad.items():
            s = t2.adjoin_sqrt(r, f"sqrt_rad{k}")
            t2.adjoin_sqrt(s, f"root4_rad{k}")
        out["fourth_level"] = t2.nsteps() - base2
    return out


def build_theorem1_tower(spec: CurveSpec, precision: int = 64) -> TheoremTowerResult:
    """Construct the abelian-extension tower and certify degrees and structure.

    Degeneracies of the specialization (collapsed gamma classes or dependent
    higher radicals beyond the one generic dependency) are detected by the
    proper-adjunction certificates and flagged, never silently accepted.
    """
    g = spec.genus
    if g not in (1, 2):
        raise StructuralError("the tower construction runs at genus 1 or 2")
    tower = Tower(precision)
    base_steps = _adjoin_base(tower, g)
    gam = gamma_values(spec)
    gamma_roots = {}
    gamma_steps = []
    for i in range(1, 2 * g + 2):
        for j in range(i + 1, 2 * g + 2):
            before = tower.nsteps()
            gamma_roots[(i, j)] = tower.adjoin_sqrt(gam[(i, j)], f"sqrt_gamma_{i}_{j}")
            if tower.nsteps() > before:
                gamma_steps.append(tower.nsteps() - 1)
    gamma_proper = len(gamma_steps)

    rad = higher_radicands(spec)
    generators: dict[int, TowerElement] = {}
    higher_steps: dict[str, list[int]] = {"sqrt": [], "fourth": [], "eighth": []}
    for k, r in rad.items():
        before = tower.nsteps()
        s = tower.adjoin_sqrt(r, f"sqrt_rad{k}")
        if tower.nsteps() > before:
            higher_steps["sqrt"].append(tower.nsteps() - 1)
        before = tower.nsteps()
        q4 = tower.adjoin_sqrt(s, f"root4_rad{k}")
        if tower.nsteps() > before:
            higher_steps["fourth"].append(tower.nsteps() - 1)
        if g == 1:
            before = tower.nsteps()
            q8 = tower.adjoin_sqrt(q4, f"root8_rad{k}")
            if tower.nsteps() > before:
                higher_steps["eighth"].append(tower.nsteps() - 1)
            generators[k] = q8
        else:
            generators[k] = q4

    relative_degree = tower.degree_over(base_steps)
    expected_order = expected_galois_structure(g).order
    reasons = []
    if gamma_proper != g * (2 * g + 1):
        reasons.append(
            f"gamma layer collapsed: {gamma_proper} proper adjunctions of {g * (2 * g + 1)}"
        )
    if relative_degree != expected_order:
        reasons.append(
            f"relative degree {relative_degree} differs from the generic {expected_order}"
        )

    filtration = _filtration_degrees(spec, precision)
    structure: AbelianType | None = None
    total = relative_degree.bit_length() - 1
    if not reasons:
        if g >= 2:
            r4 = filtration["sqrt_level"]
            r2 = total - 2 * r4
            if r2 >= 0:
                structure = AbelianType(tuple([4] * r4 + [2] * r2))
        else:
            r8 = filtration["sqrt_level"]
            r4 = filtration["fourth_level"] - 2 * r8
            r2 = total - 3 * r8 - 2 * r4
            if r4 >= 0 and r2 >= 0:
                structure = AbelianType(tuple([8] * r8 + [4] * r4 + [2] * r2))
        if structure is None or structure != expected_galois_structure(g):
            reasons.append(f"filtration structure {structure} differs from the generic one")

    return TheoremTowerResult(
        spec=spec,
        tower=tower,
        base_steps=base_steps,
        gamma_roots=gamma_roots,
        gamma_step_indices=gamma_steps,
        generators=generators,
        higher_step_indices=higher_steps,
        relative_degree=relative_degree,
        expected_order=expected_order,
        filtration=filtration,
        structure=structure,
        degenerate=bool(reasons),
        degeneracy_reasons=reasons,
    )


def _dependency_identity(spec: CurveSpec) -> bool:
    """The generic multiplicative dependency among the higher radicands."""
    g = spec.genus
    gam = gamma_values(spec)
    rad = higher_radicands(spec)
    total = Fraction(1)
    for r in rad.values():
        total *= r
    pairs_product = Fraction(1)
    for i in range(1, 2 * g + 2):
        for j in range(i + 1, 2 * g + 2):
            pairs_product *= gam[(i, j)]
    if g >= 2:
        return total == pairs_product**2
    return total == -(pairs_product**4)


# -- the sign character of the scalar -1 ------------------------------------------


def minus_one_character(result: TheoremTowerResult, flip_step: int | None = None) -> SignCharacter:
    """Negate every gamma root; negate the top radicals exactly when g is odd."""
    g = result.spec.genus
    signs = {idx: -1 for idx in result.gamma_step_indices}
    if g % 2 == 1:
        top = "eighth" if g == 1 else "fourth"
        for idx in result.higher_step_indices[top]:
            signs[idx] = -1
    if flip_step is not None:
        signs[flip_step] = -signs.get(flip_step, 1)
    return SignCharacter(result.tower, signs)


def _action_matches(result: TheoremTowerResult, char: SignCharacter) -> tuple[bool, dict]:
    """Check the sign pattern on every listed generator, derived ones included."""
    g = result.spec.genus
    expected_top = 1 if g % 2 == 0 else -1
    detail = {}
    ok = True
    for (i, j), root in result.gamma_roots.items():
        got = char.apply(root)
        match = got == -root
        detail[f"sqrt_gamma_{i}_{j}"] = "negated" if match else "violated"
        ok = ok and match
    for k, gen in result.generators.items():
        got = char.apply(gen)
        match = got == (gen if expected_top == 1 else -gen)
        detail[f"generator_{k}"] = ("fixed" if expected_top == 1 else "negated") if match else "violated"
        ok = ok and match
    return ok, detail


def verify_minus_one_action(result: TheoremTowerResult) -> list[VerificationReport]:
    """The -1 sign character is a consistent automorphism with the stated parity."""
    g = result.spec.genus
    char = minus_one_character(result)
    reports = [
        check(
            f"thm1.g{g}.sign-character-automorphism",
            "thm1c",
            char.is_automorphism(),
            signs={str(k): v for k, v in sorted(char.signs.items())},
        )
    ]
    ok, detail = _action_matches(result, char)
    reports.append(
        check(
            f"thm1.g{g}.sign-action-pattern",
            "thm1c",
            ok,
            parity="fixes top radicals" if g % 2 == 0 else "negates top radicals",
            action=detail,
        )
    )
    # base roots of unity are fixed
    base_fixed = all(
        char.apply(result.tower.root(i)) == result.tower.root(i)
        for i in range(result.base_steps)
    )
    reports.append(check(f"thm1.g{g}.base-fixed", "thm1c", base_fixed))
    # mutation: flipping one top radical still extends to an automorphism but
    # violates the pattern on the dependent generator
    top = "eighth" if g == 1 else "fourth"
    flip = result.higher_step_indices[top][0]
    mutated = minus_one_character(result, flip_step=flip)
    mutated_ok, mutated_detail = _action_matches(result, mutated)
    reports.append(
        check(
            f"thm1.g{g}.mutated-character-rejected",
            "thm1c",
            mutated.is_automorphism() and not mutated_ok,
            flipped_step=flip,
            violations=[k for k, v in mutated_detail.items() if v == "violated"],
        )
    )
    return reports


def thm1_suite(g: int, roots=None, precision: int = 64) -> list[VerificationReport]:
    """Tower degrees, structure, dependency identity, and the -1 action."""
    if g not in (1, 2):
        raise StructuralError("the tower suite runs at genus 1 or 2")
    if roots is None:
        spec = CurveSpec(GENERIC_FIXTURES[2 * g + 1])
    else:
        spec = CurveSpec(tuple(Fraction(r) for r in roots))
    result = build_theorem1_tower(spec, precision)
    reports = [
        check(
            f"thm1.g{g}.not-degenerate",
            "thm1.generic",
            not result.degenerate,
            reasons=result.degeneracy_reasons,
            fixture=[str(r) for r in spec.roots],
            adjunctions=result.adjunction_log,
        ),
        check(
            f"thm1.g{g}.relative-degree",
            "thm1.degree",
            result.relative_degree == result.expected_order,
            relative_degree=result.relative_degree,
            expected=result.expected_order,
        ),
        check(
            f"thm1.g{g}.galois-structure",
            "thm1.structure",
            result.structure == expected_galois_structure(g),
            structure=str(result.structure),
            expected=str(expected_galois_structure(g)),
            filtration=result.filtration,
        ),
        check(
            f"thm1.g{g}.radicand-dependency",
            "thm1.dependency",
            _dependency_identity(spec),
        ),
    ]
    if not result.degenerate:
        reports.extend(verify_minus_one_action(result))
    return reports


# -- the dyadic-tree identities at the default cubic fixture ------------------------


def verify_remark13_identities(spec: CurveSpec | None = None) -> list[VerificationReport]:
    """Exact radical identities pinning compatible 4th and 8th roots at d = 3.

    Builds the tower Q(zeta16, 8th roots of gamma_13, sqrt(sqrt(gamma_12) +
    sqrt(gamma_13)), 4th root of -gamma_23) for the fixture (0, 1, 3) and
    checks the quotient identity, the product/sum identities of the level-2
    decorations, and the eighth power of the first higher generator.
    """
    if spec is None:
        spec = CurveSpec.of(0, 1, 3)
    if spec.d != 3:
        raise StructuralError("the dyadic identities are the d = 3 computation")
    gam = gamma_values(spec)
    g12, g13, g23 = gam[(1, 2)], gam[(1, 3)], gam[(2, 3)]
    tower = Tower()
    i_root = tower.adjoin_sqrt(-1, "zeta4")
    sqrt2 = tower.adjoin_sqrt(2, "sqrt2")
    zeta8 = (1 + i_root) * sqrt2 / 2
    tower.adjoin_sqrt(zeta8, "zeta16")
    reports: list[VerificationReport] = []
    try:
        s12 = tower.adjoin_sqrt(g12, "sqrt_g12")
        s13 = tower.adjoin_sqrt(g13, "sqrt_g13")
        s23 = tower.adjoin_sqrt(g23, "sqrt_g23")
        q13 = tower.adjoin_sqrt(s13, "root4_g13")
        e13 = tower.adjoin_sqrt(q13, "root8_g13")
        q12 = tower.adjoin_sqrt(s12, "root4_g12")
        e12 = tower.adjoin_sqrt(q12, "root8_g12")
        lam = tower.adjoin_sqrt(s12 + s13, "sqrt_lambda")
        m23 = tower.adjoin_sqrt(tower.rational(-g23), "sqrt_minus_g23")
        f23 = tower.adjoin_sqrt(m23, "root4_minus_g23")
    except BranchError as exc:
        return [
            VerificationReport(
                claim="remark13.branch-compatibility",
                paper_ref="remark13",
                status="fail",
                witness={"branch_error": str(exc)},
            )
        ]
    # branch compatibility: each 2^n-th root squares into the enclosure of the
    # next one down
    compat = True
    for low, high in ((s13, q13), (q13, e13), (s12, q12), (q12, e12), (m23, f23)):
        sq = high * high
        if sq != low:
            compat = False
        if not sq.enclosure(96).intersects(low.enclosure(96)):
            compat = False
    reports.append(
        check(
            "remark13.branch-compatibility",
            "remark13",
            compat,
            chains=["gamma_13", "gamma_12", "-gamma_23"],
        )
    )
    # the quotient identity: root4(-g23) e12 e13 equals
    # sqrt(-g23) sqrt_lambda e12 e13 / B1 with B1 = root4(-g23) sqrt_lambda
    b1 = f23 * lam
    lhs = f23 * e12 * e13
    rhs = (m23 * lam * e12 * e13) / b1
    exact = lhs == rhs
    numeric = lhs.enclosure(96).intersects(rhs.enclosure(96))
    reports.append(
        check(
            "remark13.equation3",
            "remark13.eq3",
            exact and numeric,
            b1_nonzero=not b1.is_zero(),
        )
    )
    # the level-2 decoration identities
    psi2 = g12 + g13 + 2 * s12 * s13
    psi2p = g12 + g13 - 2 * s12 * s13
    prod_ok = psi2 * psi2p == (g12 - g13) ** 2
    sum_ok = psi2 + psi2p == 2 * (g12 + g13)
    reports.append(
        check(
            "remark13.decoration-identities",
            "remark13.psi",
            prod_ok and sum_ok,
            product=(g12 - g13) ** 2,
            total=2 * (g12 + g13),
        )
    )
    # eighth power of the first higher generator: root8(g12 g13 g23^2)
    root4_2 = f23 / zeta8  # principal 4th root of -2 divided by zeta8 is 2^(1/4)
    gen = root4_2 * e13 * e12
    radicand = g12 * g13 * g23**2
    power_ok = (gen**8) == tower.rational(radicand)
    positive = gen.enclosure(96).im.contains(Fraction(0)) and gen.enclosure(96).re.lo > 0
    reports.append(
        check(
            "remark13.eighth-power",
            "thm1b.generators",
            power_ok and positive,
            radicand=radicand,
            other_radicands=[v for k, v in sorted(higher_radicands(spec).items())],
        )
    )
    return reports
