"""Symmetric-group modules on unordered-pair bases over F2 and Z/4.

The pair space on M letters has basis vectors [i,j] = [j,i] indexed by
2-element subsets of {1..M}; S_M permutes the labels.  The standard module
is the (d-1)- or (d-2)-dimensional representation carried by the permutation
module, and the brute-force searches below pin down how it embeds into the
pair space.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import StructuralError
from .reports import VerificationReport, check


def all_permutations(m: int) -> list[tuple[int, ...]]:
    return [tuple(p) for p in itertools.permutations(range(1, m + 1))]


def transposition(m: int, a: int, b: int) -> tuple[int, ...]:
    perm = list(range(1, m + 1))
    perm[a - 1], perm[b - 1] = b, a
    return tuple(perm)


@dataclass(frozen=True)
class PairBasisSpace:
    """Free module over Z/ring on unordered pairs of {1..M}."""

    m: int
    ring: int  # 2 or 4

    def __post_init__(self) -> None:
        if self.m < 3 or self.ring not in (2, 4):
            raise StructuralError("pair space needs M >= 3 and ring Z/2 or Z/4")

    @property
    def pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(1, self.m + 1) for j in range(i + 1, self.m + 1)]

    @property
    def dim(self) -> int:
        return self.m * (self.m - 1) // 2

    def index(self, i: int, j: int) -> int:
        if i == j or not (1 <= i <= self.m and 1 <= j <= self.m):
            raise StructuralError(f"no pair [{i},{j}] in a space on {self.m} letters")
        i, j = min(i, j), max(i, j)
        return self.pairs.index((i, j))

    def zero(self) -> np.ndarray:
        return np.zeros(self.dim, dtype=np.int64)

    def basis_vector(self, i: int, j: int) -> np.ndarray:
        v = self.zero()
        v[self.index(i, j)] = 1
        return v

    def pair_permutation(self, perm: Sequence[int]) -> np.ndarray:
        """Index permutation induced on pairs: [i,j] -> [perm(i), perm(j)]."""
        if sorted(perm) != list(range(1, self.m + 1)):
            raise StructuralError("perm must be a permutation of 1..M")
        out = np.empty(self.dim, dtype=np.int64)
        for idx, (i, j) in enumerate(self.pairs):
            out[idx] = self.index(perm[i - 1], perm[j - 1])
        return out


def psi_action(perm: Sequence[int], v: np.ndarray, space: PairBasisSpace) -> np.ndarray:
    """Coordinates permuted by the induced action on unordered pairs."""
    sigma = space.pair_permutation(perm)
    out = space.zero()
    out[sigma] = v % space.ring
    return out


@dataclass(frozen=True)
class StandardModule:
    """The standard representation of S_d over F2 in explicit coordinates.

    For d odd: the permutation module modulo the diagonal, spanned by the
    images v_i of the coordinate vectors, with the single relation sum = 0.
    For d even: the even-weight submodule modulo the diagonal, spanned by
    v_(i,j) = class of e_i + e_j.
    """

    d: int

    @property
    def dim(self) -> int:
        return self.d - 1 if self.d % 2 else self.d - 2

    def _canonical(self, x: np.ndarray) -> np.ndarray:
        x = x % 2
        if x[-1]:
            x = (x + 1) % 2
        return x[:-1]

    def v(self, i: int) -> np.ndarray:
        if self.d % 2 == 0:
            raise StructuralError("v_i is the odd-d spanning set")
        e = np.zeros(self.d, dtype=np.int64)
        e[i - 1] = 1
        return self._canonical(e)

    def v_pair(self, i: int, j: int) -> np.ndarray:
        if self.d % 2:
            raise StructuralError("v_(i,j) is the even-d spanning set")
        e = np.zeros(self.d, dtype=np.int64)
        e[i - 1] += 1
        e[j - 1] += 1
        return self._canonical(e)


def f2_rank(vectors: Iterable[np.ndarray]) -> int:
    work = []
    for v in vectors:
        x = 0
        for k, b in enumerate(np.asarray(v) % 2):
            if b:
                x |= 1 << k
        work.append(x)
    rank = 0
    while work:
        pivot = next((i for i, v in enumerate(work) if v), None)
        if pivot is None:
            break
        pv = work.pop(pivot)
        bit = pv.bit_length() - 1
        work = [v ^ pv if v >> bit & 1 else v for v in work]
        rank += 1
    return rank


def _fixed_masks(space: PairBasisSpace, generators: list[tuple[int, ...]]) -> np.ndarray:
    """Exhaustive scan: all F2 vectors fixed by every generator, as bitmasks."""
    n = space.dim
    masks = np.arange(1 << n, dtype=np.int64)
    keep = np.ones(len(masks), dtype=bool)
    for perm in generators:
        sigma = space.pair_permutation(perm)
        permuted = np.zeros(len(masks), dtype=np.int64)
        for src in range(n):
            dst = int(sigma[src])
            permuted |= ((masks >> src) & 1) << dst
        keep &= permuted == masks
    return masks[keep]


def _mask_to_vec(mask: int, space: PairBasisSpace) -> np.ndarray:
    return np.array([(mask >> k) & 1 for k in range(space.dim)], dtype=np.int64)


def _vec_to_mask(v: np.ndarray) -> int:
    out = 0
    for k, b in enumerate(np.asarray(v) % 2):
        if b:
            out |= 1 << int(k)
    return out


def spanning_set_odd(d: int) -> list[np.ndarray]:
    """v_i = sum_(j != i) [i,j] over F2, for i = 1..d."""
    space = PairBasisSpace(d, 2)
    out = []
    for i in range(1, d + 1):
        v = space.zero()
        for j in range(1, d + 1):
            if j != i:
                v[space.index(i, j)] = 1
        out.append(v)
    return out


def primed_class_even(space: PairBasisSpace, i: int, j: int, d: int) -> np.ndarray:
    """[i,j]' in single-index coordinates: [i,j] + sum over l of [d, l]."""
    v = space.basis_vector(i, j)
    for l in range(1, d):
        if l not in (i, j):
            v = (v + space.basis_vector(d, l)) % 2
    return v


def verify_prop33_odd(d: int) -> list[VerificationReport]:
    """Brute-force uniqueness of the odd-d spanning set inside the pair space."""
    if d not in (5, 7):
        raise StructuralError("the odd-degree search runs at d = 5 or 7")
    space = PairBasisSpace(d, 2)
    stab_gens = [transposition(d, a, a + 1) for a in range(2, d)]
    fixed = _fixed_masks(space, stab_gens)
    nonzero = [m for m in fixed.tolist() if m]
    u1 = _vec_to_mask(spanning_set_odd(d)[0])
    u2_vec = space.zero()
    for s in range(2, d + 1):
        for t in range(s + 1, d + 1):
            u2_vec[space.index(s, t)] = 1
    u2 = _vec_to_mask(u2_vec)
    reports = [
        check(
            f"prop33.d{d}.fixed-vectors",
            "prop33.odd",
            sorted(nonzero) == sorted([u1, u2, u1 ^ u2]),
            count=len(nonzero),
        )
    ]

    def family(mask: int) -> list[np.ndarray]:
        v1 = _mask_to_vec(mask, space)
        return [v1] + [psi_action(transposition(d, 1, i), v1, space) for i in range(2, d + 1)]

    # candidate (ii): the v_i cannot sum to zero
    fam2 = family(u2)
    total2 = sum(fam2) % 2
    reports.append(
        check(f"prop33.d{d}.candidate-ii-excluded", "prop33.odd", total2.any())
    )
    # candidate (iii): invariant, so the family is 1-dimensional
    fam3 = family(u1 ^ u2)
    all_equal = all((f == fam3[0]).all() for f in fam3)
    reports.append(
        check(f"prop33.d{d}.candidate-iii-excluded", "prop33.odd", all_equal and d - 1 > 1)
    )
    # candidate (i): spans the standard module
    fam1 = family(u1)
    span_ok = f2_rank(fam1) == d - 1
    sum_zero = not (sum(fam1) % 2).any()
    expected = spanning_set_odd(d)
    matches = all((a == b).all() for a, b in zip(fam1, expected))
    # equivariance: psi(sigma) v_i = v_sigma(i) on transposition generators
    equivariant = True
    for a in range(1, d):
        perm = transposition(d, a, a + 1)
        for i in range(1, d + 1):
            img = psi_action(perm, expected[i - 1], space)
            if not (img == expected[perm[i - 1] - 1]).all():
                equivariant = False
    # kernel of the spanning map equals the diagonal, as for the standard module
    kernel_dim = d - f2_rank(expected)
    reports.append(
        check(
            f"prop33.d{d}.spanning-set",
            "prop33.odd",
            span_ok and sum_zero and matches and equivariant and kernel_dim == 1,
            rank=f2_rank(fam1),
            kernel_dim=kernel_dim,
        )
    )
    std = StandardModule(d)
    reports.append(
        check(
            f"prop33.d{d}.standard-module-iso",
            "prop33.odd",
            std.dim == d - 1 and f2_rank([std.v(i) for i in range(1, d + 1)]) == d - 1,
            std_dim=std.dim,
        )
    )
    return reports


def verify_prop33_even(d: int = 6) -> list[VerificationReport]:
    """Brute-force uniqueness of the even-d spanning set; d = 6."""
    if d != 6:
        raise StructuralError("the even-degree search runs at d = 6")
    space = PairBasisSpace(d, 2)
    stab_gens = [transposition(d, 1, d)] + [transposition(d, a, a + 1) for a in range(2, d - 1)]
    fixed = _fixed_masks(space, stab_gens)
    reports = [
        check("prop33.d6.fixed-count", "prop33.even", len(fixed) == 8, count=int(len(fixed)))
    ]
    # the three orbit sums: [1,6];  sum([1,j]+[6,j]);  sum of inner pairs
    w_a = space.basis_vector(1, 6)
    w_b = space.zero()
    for j in range(2, d):
        w_b = (w_b + space.basis_vector(1, j) + space.basis_vector(6, j)) % 2
    w_c = space.zero()
    for s in range(2, d):
        for t in range(s + 1, d):
            w_c = (w_c + space.basis_vector(s, t)) % 2
    fixed_set = set(fixed.tolist())
    expected_fixed = set()
    for c1 in (0, 1):
        for c2 in (0, 1):
            for c3 in (0, 1):
                v = (c1 * w_a + c2 * w_b + c3 * w_c) % 2
                expected_fixed.add(_vec_to_mask(v))
    reports.append(
        check("prop33.d6.orbit-basis", "prop33.even", fixed_set == expected_fixed)
    )

    def term_count(mask: int) -> int:
        return bin(mask).count("1")

    def relation_holds(cand: np.ndarray) -> bool:
        # family v_(i,j) = psi(sigma)(cand) for sigma moving (1, 6) to (i, j)
        fam: dict[tuple[int, int], np.ndarray] = {}
        for perm in all_permutations(d):
            key = tuple(sorted((perm[0], perm[5])))
            img = psi_action(perm, cand, space)
            if key in fam and not (fam[key] == img).all():
                return False  # not well-defined
            fam[key] = img
        for s, t, j in itertools.permutations(range(1, d + 1), 3):
            a = fam[tuple(sorted((s, t)))]
            b = fam[tuple(sorted((s, j)))]
            c = fam[tuple(sorted((t, j)))]
            if ((a + b - c) % 2).any():
                return False
        for i in range(1, d + 1):
            total = space.zero()
            for j in range(1, d + 1):
                if j != i:
                    total = (total + fam[tuple(sorted((i, j)))]) % 2
            if total.any():
                return False
        return True

    # parity, nontriviality, and full-sum exclusions leave w_b, w_c, w_b + w_c
    survivors = []
    excluded_odd = []
    for mask in fixed_set:
        if mask == 0:
            continue
        if term_count(mask) % 2 == 1:
            excluded_odd.append(mask)
            continue
        cand = _mask_to_vec(mask, space)
        if relation_holds(cand):
            survivors.append(mask)
    reports.append(
        check(
            "prop33.d6.odd-terms-excluded",
            "prop33.even",
            all(term_count(m) % 2 == 1 for m in excluded_odd)
            and _vec_to_mask(w_a) in excluded_odd,
            excluded=len(excluded_odd),
        )
    )
    reports.append(
        check(
            "prop33.d6.unique-survivor",
            "prop33.even",
            survivors == [_vec_to_mask(w_b)],
            survivors=survivors,
        )
    )
    # the survivor is sum of primed classes [1,j]' for j = 2..5
    primed_sum = space.zero()
    for j in range(2, d):
        primed_sum = (primed_sum + primed_class_even(space, 1, j, d)) % 2
    reports.append(
        check("prop33.d6.primed-coordinates", "prop33.even", (primed_sum == w_b).all())
    )
    # the family spans a (d-2)-dimensional module
    fam = [w_b] + [
        psi_action(transposition(d, 1, i), w_b, space) for i in range(2, d)
    ]
    reports.append(
        check("prop33.d6.span-dimension", "prop33.even", f2_rank(fam) == d - 2, rank=f2_rank(fam))
    )
    return reports


# -- the rank-2 Z/4 module at genus 1 -----------------------------------------


PHI_SPACE = PairBasisSpace(3, 4)


def phi_functional(v: np.ndarray) -> int:
    """Sum of the three pair coordinates in Z/4; S3-invariant."""
    return int(np.sum(v)) % 4


def prop34_generators() -> list[np.ndarray]:
    """[1,2]'+[1,3]'+2[2,3]', and its two cyclic rotations."""
    s = PHI_SPACE
    g1 = (s.basis_vector(1, 2) + s.basis_vector(1, 3) + 2 * s.basis_vector(2, 3)) % 4
    g2 = (s.basis_vector(2, 3) + s.basis_vector(2, 1) + 2 * s.basis_vector(3, 1)) % 4
    g3 = (s.basis_vector(3, 1) + s.basis_vector(3, 2) + 2 * s.basis_vector(1, 2)) % 4
    return [g1, g2, g3]


def _all_z4_vectors() -> Iterable[np.ndarray]:
    for coords in itertools.product(range(4), repeat=3):
        yield np.array(coords, dtype=np.int64)


def kernel_of_phi() -> list[np.ndarray]:
    return [v for v in _all_z4_vectors() if phi_functional(v) == 0]


def generated_submodule(gens: list[np.ndarray], ring: int = 4) -> set[tuple[int, ...]]:
    out = set()
    for coeffs in itertools.product(range(ring), repeat=len(gens)):
        v = sum(c * g for c, g in zip(coeffs, gens)) % ring
        out.add(tuple(int(x) for x in v))
    return out


def verify_prop34() -> list[VerificationReport]:
    """ker Phi has order 16 and equals the span of the three listed generators."""
    s = PHI_SPACE
    gens = prop34_generators()
    kernel = kernel_of_phi()
    span = generated_submodule(gens)
    in_kernel = all(phi_functional(g) == 0 for g in gens)
    kernel_set = {tuple(int(x) for x in v) for v in kernel}
    # free of rank 2 over Z/4: order 16 with exactly 4 elements killed by 2
    two_torsion = sum(1 for v in kernel if not ((2 * v) % 4).any())
    doubled = ((2 * (s.basis_vector(1, 2) + s.basis_vector(1, 3) + s.basis_vector(2, 3))) % 4)
    invariant = all(
        phi_functional(psi_action(p, v, s)) == phi_functional(v)
        for p in all_permutations(3)
        for v in _all_z4_vectors()
    )
    return [
        check("prop34.kernel-order", "prop34", len(kernel) == 16, order=len(kernel)),
        check("prop34.generators-in-kernel", "prop34", in_kernel),
        check(
            "prop34.generated-order",
            "prop34",
            len(span) == 16 and span == kernel_set,
            generated=len(span),
        ),
        check("prop34.free-rank2", "prop34", two_torsion == 4, two_torsion=two_torsion),
        check(
            "prop34.doubled-sum-excluded",
            "prop34",
            phi_functional(doubled) == 2,
            phi_value=phi_functional(doubled),
        ),
        check("prop34.phi-invariant", "prop34", invariant),
    ]


# -- parity combinatorics for the 4-torsion description ------------------------


def gamma_class(space: PairBasisSpace, i: int, j: int, d: int) -> np.ndarray:
    """Class of gamma_(i,j) in the pair space on d letters: [i,j] + sum [d,l]."""
    return primed_class_even(space, i, j, d)


def even_sum_subspace_check(d: int) -> list[VerificationReport]:
    """Even weight of gamma classes, odd weight of the beta^2 class, span dim."""
    if d not in (4, 6):
        raise StructuralError("the parity check runs at d = 4 or 6")
    g = (d - 2) // 2
    space = PairBasisSpace(d, 2)
    gammas = {}
    for i in range(1, d):
        for j in range(i + 1, d):
            gammas[(i, j)] = gamma_class(space, i, j, d)
    weights = {ij: int(np.sum(v)) for ij, v in gammas.items()}
    beta_sq = space.zero()
    for i in range(1, d):
        beta_sq = (beta_sq + space.basis_vector(d, i)) % 2
    beta_weight = int(np.sum(beta_sq))
    span_dim = f2_rank(list(gammas.values()))
    return [
        check(
            f"thm23.d{d}.gamma-classes-even",
            "thm23.parity",
            all(w == 2 * g and w % 2 == 0 for w in weights.values()),
            weights=sorted(set(weights.values())),
        ),
        check(
            f"thm23.d{d}.beta-class-odd",
            "thm23.parity",
            beta_weight == 2 * g + 1 and beta_weight % 2 == 1,
            weight=beta_weight,
        ),
        check(
            f"thm23.d{d}.gamma-span",
            "thm23.parity",
            span_dim == 2 * g * g + g,
            dimension=span_dim,
            count=len(gammas),
        ),
    ]


# -- faithfulness and transvection images --------------------------------------


def _odd_module_vectors(d: int) -> list[np.ndarray]:
    return spanning_set_odd(d)


def _coordinates_in_span(vectors: list[np.ndarray], target: np.ndarray) -> np.ndarray | None:
    """F2 solve: target as a combination of the given vectors."""
    a = (np.array(vectors, dtype=np.int64) % 2).T.copy()
    b = (target % 2).copy()
    rows, cols = a.shape
    pivot_cols = []
    x = np.concatenate([a, b[:, None]], axis=1)
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if x[i, c] % 2), None)
        if pivot is None:
            continue
        x[[r, pivot]] = x[[pivot, r]]
        for i in range(rows):
            if i != r and x[i, c] % 2:
                x[i] = (x[i] + x[r]) % 2
        pivot_cols.append(c)
        r += 1
    for i in range(r, rows):
        if x[i, -1] % 2:
            return None
    sol = np.zeros(cols, dtype=np.int64)
    for idx, c in enumerate(pivot_cols):
        sol[c] = x[idx, -1] % 2
    return sol


def action_matrix_on_span(
    perm: Sequence[int], basis: list[np.ndarray], space: PairBasisSpace
) -> np.ndarray:
    """Matrix of psi(perm) on the F2 span, in the given basis."""
    cols = []
    for v in basis:
        img = psi_action(perm, v, space)
        sol = _coordinates_in_span(basis, img)
        if sol is None:
            raise StructuralError("the span is not invariant under the permutation")
        cols.append(sol)
    return np.array(cols, dtype=np.int64).T % 2


def standard_rep_mod2_of_V(g: int) -> list[VerificationReport]:
    """Faithfulness of the induced action, and the transvection image at d=5."""
    reports: list[VerificationReport] = []
    if g == 1:
        s = PHI_SPACE
        kernel = kernel_of_phi()
        trivial = []
        for p in all_permutations(3):
            if p == (1, 2, 3):
                continue
            if all((psi_action(p, v, s) == v).all() for v in kernel):
                trivial.append(p)
        reports.append(
            check("thm23.g1.psi-faithful", "prop34.faithful", not trivial, kernel=trivial)
        )
        # the doubled spanning sums lie in V = ker Phi
        doubles = [
            (2 * s.basis_vector(1, 2) + 2 * s.basis_vector(1, 3)) % 4,
            (2 * s.basis_vector(2, 3) + 2 * s.basis_vector(1, 2)) % 4,
            (2 * s.basis_vector(3, 1) + 2 * s.basis_vector(3, 2)) % 4,
        ]
        reports.append(
            check(
                "thm23.g1.mod2-spanning",
                "prop34.standard",
                all(phi_functional(v) == 0 for v in doubles),
            )
        )
        return reports
    if g == 2:
        for d in (5, 6):
            space = PairBasisSpace(d, 2)
            if d % 2:
                basis_all = _odd_module_vectors(d)
                basis = basis_all[: d - 1]
            else:
                w_b1 = space.zero()
                for j in range(2, d):
                    w_b1 = (w_b1 + space.basis_vector(1, j) + space.basis_vector(6, j)) % 2
                basis_all = [w_b1] + [
                    psi_action(transposition(d, 1, i), w_b1, space) for i in range(2, d)
                ]
                basis = basis_all[: d - 2]
            trivial = []
            for p in all_permutations(d):
                if p == tuple(range(1, d + 1)):
                    continue
                if all((psi_action(p, v, space) == v).all() for v in basis):
                    trivial.append(p)
            reports.append(
                check(
                    f"thm23.d{d}.psi-faithful",
                    "lemma32.faithful",
                    not trivial,
                    nontrivial_kernel_size=len(trivial),
                )
            )
            if d == 5:
                a = action_matrix_on_span(transposition(d, 1, 2), basis, space)
                dev_rank = f2_rank(list((a - np.eye(len(basis), dtype=np.int64)) % 2))
                reports.append(
                    check(
                        "thm23.d5.transposition-transvection",
                        "lemma32.transvection",
                        dev_rank == 1,
                        deviation_rank=dev_rank,
                        matrix=a.tolist(),
                    )
                )
        return reports
    if g == 3:
        d = 7
        space = PairBasisSpace(d, 2)
        basis = _odd_module_vectors(d)[: d - 1]
        trivial = []
        for p in all_permutations(d):
            if p == tuple(range(1, d + 1)):
                continue
            if all((psi_action(p, v, space) == v).all() for v in basis):
                trivial.append(p)
        reports.append(
            check("thm23.d7.psi-faithful", "lemma32.faithful", not trivial)
        )
        return reports
    raise StructuralError("faithfulness checks run at g = 1, 2, 3")


def prop33_suite(d: int) -> list[VerificationReport]:
    if d in (5, 7):
        return verify_prop33_odd(d)
    if d == 6:
        return verify_prop33_even(d)
    raise StructuralError("prop33 runs at d in {5, 6, 7}")


def thm23_parity_suite(g: int) -> list[VerificationReport]:
    return even_sum_subspace_check(2 * g + 2) + standard_rep_mod2_of_V(g)
