"""Pure braid words, the Artin action, and the double-cover homology matrices.

A braid word is a sequence of signed Artin generators sigma_i acting on the
free group on x_1..x_d by x_i -> x_i x_(i+1) x_i^-1, x_(i+1) -> x_i.  The
hyperelliptic double cover is realized algebraically: the index-2 subgroup of
even-weight words (Schreier transversal {1, x_1}), with the squares x_j^2
killed in homology and, for even d, the relation coming from x_1...x_d = 1
on the sphere.  The basis of H_1 is the classes of x_i x_(i+1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import StructuralError
from .modring import ModMatrix
from .reports import VerificationReport, check


def reduce_free(word: Sequence[int]) -> tuple[int, ...]:
    """Free reduction: cancel adjacent x x^-1 pairs."""
    out: list[int] = []
    for letter in word:
        if letter == 0:
            raise StructuralError("letter 0 is not a generator")
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def invert_free(word: Sequence[int]) -> tuple[int, ...]:
    return tuple(-l for l in reversed(word))


@dataclass(frozen=True)
class FreeWord:
    """Freely reduced word in x_1..x_d; letters are +-i."""

    letters: tuple[int, ...]

    @classmethod
    def of(cls, *letters: int) -> FreeWord:
        return cls(reduce_free(letters))

    def __mul__(self, other: FreeWord) -> FreeWord:
        return FreeWord(reduce_free(self.letters + other.letters))

    def inverse(self) -> FreeWord:
        return FreeWord(invert_free(self.letters))

    def weight(self) -> int:
        return sum(1 if l > 0 else -1 for l in self.letters)


@dataclass(frozen=True)
class BraidWord:
    """Freely reduced word in the Artin generators sigma_1..sigma_(d-1)."""

    strands: int
    letters: tuple[int, ...]

    @classmethod
    def of(cls, strands: int, letters: Sequence[int]) -> BraidWord:
        reduced = reduce_free(letters)
        for l in reduced:
            if not 1 <= abs(l) <= strands - 1:
                raise StructuralError(f"generator {l} out of range for {strands} strands")
        return cls(strands, reduced)

    def __mul__(self, other: BraidWord) -> BraidWord:
        if self.strands != other.strands:
            raise StructuralError("strand counts differ")
        return BraidWord(self.strands, reduce_free(self.letters + other.letters))

    def inverse(self) -> BraidWord:
        return BraidWord(self.strands, invert_free(self.letters))

    def __pow__(self, n: int) -> BraidWord:
        w = BraidWord(self.strands, ())
        base = self if n >= 0 else self.inverse()
        for _ in range(abs(n)):
            w = w * base
        return w

    def permutation(self) -> tuple[int, ...]:
        """Underlying permutation of the strands, 1-based images."""
        perm = list(range(1, self.strands + 1))
        for l in reversed(self.letters):
            i = abs(l)
            perm[i - 1], perm[i] = perm[i], perm[i - 1]
        return tuple(perm)

    def is_pure(self) -> bool:
        return self.permutation() == tuple(range(1, self.strands + 1))


def _apply_artin_letter(letter: int, word: tuple[int, ...]) -> tuple[int, ...]:
    i = abs(letter)
    out: list[int] = []
    if letter > 0:
        images = {i: (i, i + 1, -i), i + 1: (i,)}
    else:
        images = {i: (i + 1,), i + 1: (-(i + 1), i, i + 1)}
    for l in word:
        k = abs(l)
        img = images.get(k, (k,))
        out.extend(img if l > 0 else invert_free(img))
    return reduce_free(out)


def artin_apply(w: BraidWord, f: FreeWord) -> FreeWord:
    """Left action of the braid word: the rightmost braid letter acts first."""
    word = f.letters
    for letter in reversed(w.letters):
        word = _apply_artin_letter(letter, word)
    return FreeWord(word)


def pure_generator(i: int, j: int, d: int) -> BraidWord:
    """A_(i,j) = (sigma_(j-1)..sigma_(i+1)) sigma_i^2 (sigma_(i+1)..sigma_(j-1))^-1."""
    if not 1 <= i < j <= d:
        raise StructuralError(f"need 1 <= i < j <= d, got ({i},{j},{d})")
    prefix = tuple(range(j - 1, i, -1))
    letters = prefix + (i, i) + tuple(-k for k in reversed(prefix))
    word = BraidWord.of(d, letters)
    assert word.is_pure()
    return word


def full_twist(d: int, through: int | None = None) -> BraidWord:
    """A_(1,2) (A_(1,3) A_(2,3)) ... up to the final column index ``through``."""
    if through is None:
        through = d
    w = BraidWord(d, ())
    for j in range(2, through + 1):
        for i in range(1, j):
            w = w * pure_generator(i, j, d)
    return w


# -- the double cover and its homology ----------------------------------------


def schreier_vector(word: tuple[int, ...], d: int) -> np.ndarray:
    """Abelianized rewriting of an even-weight word over the Schreier generators.

    Transversal {1, x_1}; generators a_j = x_j x_1^-1 and b_j = x_1 x_j, with
    the trivial a_1 dropped.  Layout: a_2..a_d then b_1..b_d (length 2d-1).
    """
    v = np.zeros(2 * d, dtype=np.int64)
    coset = 0
    for l in word:
        k = abs(l)
        if l > 0:
            if coset == 0:
                v[k - 1] += 1
            else:
                v[d + k - 1] += 1
            coset ^= 1
        else:
            coset ^= 1
            if coset == 0:
                v[k - 1] -= 1
            else:
                v[d + k - 1] -= 1
    if coset != 0:
        raise StructuralError("word has odd weight: not in the double-cover subgroup")
    return v[1:]


def homology_relations(d: int) -> list[np.ndarray]:
    """Classes killed in H_1 of the closed curve: the x_j^2, plus the sphere
    relation x_1...x_d = 1 when d is even."""
    rels = [schreier_vector((j, j), d) for j in range(1, d + 1)]
    if d % 2 == 0:
        rels.append(schreier_vector(tuple(range(1, d + 1)), d))
    return rels


def homology_basis_words(d: int) -> list[FreeWord]:
    top = d - 2 if d % 2 == 0 else d - 1
    return [FreeWord.of(i, i + 1) for i in range(1, top + 1)]


def _solve_unimodular(rows: list[np.ndarray], v: np.ndarray) -> list[Fraction]:
    """Solve sum_k c_k rows[k] = v exactly over Q."""
    n = len(rows)
    a = [[Fraction(int(rows[r][c])) for r in range(n)] for c in range(len(v))]
    b = [Fraction(int(x)) for x in v]
    pivots = []
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        b[r], b[pivot] = b[pivot], b[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        b[r] *= inv
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
                b[i] -= f * b[r]
        pivots.append(c)
        r += 1
    for i in range(len(a)):
        if all(x == 0 for x in a[i]) and b[i] != 0:
            raise StructuralError("class is not expressible: homology solve failed")
    sol = [Fraction(0)] * n
    for idx, c in enumerate(pivots):
        sol[c] = b[idx]
    return sol


def _homology_system(d: int) -> tuple[list[np.ndarray], int]:
    rels = homology_relations(d)
    basis = [schreier_vector(w.letters, d) for w in homology_basis_words(d)]
    rows = rels + basis
    assert len(rows) == 2 * d - 1
    det = _int_det_fraction(rows)
    if abs(det) != 1:
        raise StructuralError(f"basis classes are not unimodular (det {det})")
    return rows, len(rels)


def _int_det_fraction(rows: list[np.ndarray]) -> int:
    a = [[Fraction(int(x)) for x in row] for row in rows]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if a[i][c] != 0), None)
        if pivot is None:
            return 0
        if pivot != c:
            a[c], a[pivot] = a[pivot], a[c]
            det = -det
        det *= a[c][c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    assert det.denominator == 1
    return int(det)


def homology_rep(w: BraidWord, d: int | None = None) -> np.ndarray:
    """Integer matrix of the braid word on H_1 of the hyperelliptic cover.

    Columns are the images of the basis classes x_i x_(i+1); the word must be
    pure.  The result is exact over Z, invertible, and a homomorphism in the
    sense rep(w1 w2) = rep(w1) rep(w2).
    """
    if d is None:
        d = w.strands
    if w.strands != d:
        raise StructuralError("strand count mismatch")
    if not w.is_pure():
        raise StructuralError("homology representation is defined for pure words only")
    rows, nrels = _homology_system(d)
    cols = []
    for u in homology_basis_words(d):
        image = artin_apply(w, u)
        if image.weight() != u.weight():
            raise StructuralError("Artin image left the even-weight subgroup")
        sol = _solve_unimodular(rows, schreier_vector(image.letters, d))
        coeffs = sol[nrels:]
        assert all(x.denominator == 1 for x in sol)
        cols.append([int(x) for x in coeffs])
    return np.array(cols, dtype=object).T


def invariant_form(d: int) -> np.ndarray:
    """The alternating matrix J preserved by every generator image.

    Solves M^T J M = J over Q across all A_(i,j) images; the solution space
    must be 1-dimensional, and the primitive integral representative is
    returned (unimodular: the intersection form of the curve).
    """
    if d not in (3, 4, 5, 6):
        raise StructuralError("invariant form is computed for d in 3..6")
    reps = [
        homology_rep(pure_generator(i, j, d), d)
        for i in range(1, d + 1)
        for j in range(i + 1, d + 1)
    ]
    n = len(reps[0])
    # unknowns: strictly upper-triangular entries of alternating J
    unknowns = [(i, j) for i in range(n) for j in range(i + 1, n)]
    idx = {u: k for k, u in enumerate(unknowns)}

    def j_of(coeffs: list[Fraction]) -> list[list[Fraction]]:
        j = [[Fraction(0)] * n for _ in range(n)]
        for (a, b), k in idx.items():
            j[a][b] = coeffs[k]
            j[b][a] = -coeffs[k]
        return j

    equations: list[list[Fraction]] = []
    for m in reps:
        for r in range(n):
            for s in range(n):
                row = [Fraction(0)] * len(unknowns)
                for (a, b), k in idx.items():
                    # coefficient of J_(a,b) in (M^T J M - J)_(r,s)
                    coeff = Fraction(int(m[a][r]) * int(m[b][s]) - int(m[b][r]) * int(m[a][s]))
                    if (a, b) == (min(r, s), max(r, s)):
                        coeff -= Fraction(1) if (r, s) == (a, b) else Fraction(-1)
                    row[k] = coeff
                equations.append(row)
    null = _nullspace(equations, len(unknowns))
    if len(null) != 1:
        raise StructuralError(f"invariant form space has dimension {len(null)}, expected 1")
    coeffs = null[0]
    denom = 1
    for x in coeffs:
        denom = denom * x.denominator // np.gcd(denom, x.denominator)
    ints = [int(x * denom) for x in coeffs]
    g = 0
    for x in ints:
        g = int(np.gcd(g, x))
    ints = [x // g for x in ints]
    j = np.array(j_of([Fraction(x) for x in ints]), dtype=object)
    for m in reps:
        assert (m.T @ j @ m == j).all()
    return j


def _nullspace(equations: list[list[Fraction]], nvars: int) -> list[list[Fraction]]:
    rows = [row[:] for row in equations if any(x != 0 for x in row)]
    pivot_cols: list[int] = []
    r = 0
    for c in range(nvars):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivot_cols.append(c)
        r += 1
        if r == len(rows):
            break
    free = [c for c in range(nvars) if c not in pivot_cols]
    basis = []
    for fc in free:
        v = [Fraction(0)] * nvars
        v[fc] = Fraction(1)
        for ri, c in enumerate(pivot_cols):
            v[c] = -rows[ri][fc]
        basis.append(v)
    return basis


# -- the Prop 2.2 suite ---------------------------------------------------------


def _f2_rank_int(masks: list[int]) -> int:
    work = list(masks)
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


def verify_prop22(d: int) -> list[VerificationReport]:
    """Generator images mod 2 and mod 4, and the full/partial twist values."""
    if d not in (3, 4, 5, 6):
        raise StructuralError("the braid suite runs at d in 3..6")
    g = (d - 1) // 2 if d % 2 else (d - 2) // 2
    n = 2 * g
    pairs = [(i, j) for i in range(1, d + 1) for j in range(i + 1, d + 1)]
    reps = {ij: homology_rep(pure_generator(*ij, d), d) for ij in pairs}
    eye = np.eye(n, dtype=object)
    mod2_ok = all(((m - eye) % 2 == 0).all() for m in reps.values())
    reports = [
        check(f"prop22.d{d}.images-in-gamma2", "prop22a", mod2_ok, generators=len(pairs))
    ]
    # mod-4 span: write image = I + 2B, rank of the B's over F2
    masks = []
    vec_of = {}
    for ij, m in reps.items():
        b = ((m - eye) // 2) % 2
        mask = 0
        for k, x in enumerate(np.array(b, dtype=np.int64).ravel()):
            if x:
                mask |= 1 << k
        masks.append(mask)
        vec_of[ij] = mask
    rank = _f2_rank_int(masks)
    expected_dim = 2 * g * g + g
    reports.append(
        check(
            f"prop22.d{d}.mod4-span",
            "prop22a",
            rank == expected_dim,
            rank=rank,
            expected=expected_dim,
        )
    )
    # mod-4 group closure has the full order 2^(2g^2+g)
    mod4 = [ModMatrix(np.array(m, dtype=np.int64) % 4, 2) for m in reps.values()]
    from .quotients import closure_keys

    closure = closure_keys(mod4, cap_elements=1 << 16)
    reports.append(
        check(
            f"prop22.d{d}.mod4-order",
            "prop22a",
            len(closure) == 1 << expected_dim,
            order=int(len(closure)),
        )
    )
    if d % 2 == 1:
        reports.append(
            check(
                f"prop22.d{d}.mod4-independent",
                "lemma23.independence",
                rank == len(pairs),
                generators=len(pairs),
            )
        )
    sigma_rep = homology_rep(full_twist(d), d)
    if d % 2 == 1:
        reports.append(
            check(
                f"prop22.d{d}.full-twist",
                "prop22b",
                (sigma_rep == -eye).all(),
                matrix=sigma_rep.tolist(),
            )
        )
    else:
        sigma_prime_rep = homology_rep(full_twist(d, d - 1), d)
        reports.append(
            check(
                f"prop22.d{d}.full-twist",
                "prop22c",
                (sigma_rep == eye).all(),
                matrix=sigma_rep.tolist(),
            )
        )
        reports.append(
            check(
                f"prop22.d{d}.partial-twist",
                "prop22c",
                (sigma_prime_rep == -eye).all(),
                matrix=sigma_prime_rep.tolist(),
            )
        )
        # in the abelian quotient mod 4: sum of all generators = full twist,
        # partial sum over the Sigma' letters = -1
        full_sum = 0
        for ij in pairs:
            full_sum ^= vec_of[ij]
        partial_sum = 0
        for ij in pairs:
            if ij[1] <= d - 1:
                partial_sum ^= vec_of[ij]
        minus_one_vec = 0
        b = ((-eye - eye) // 2) % 2  # -I = I + 2*(-I); B = -I = I mod 2
        for k, x in enumerate(np.array(b, dtype=np.int64).ravel()):
            if x:
                minus_one_vec |= 1 << k
        sigma_vec = 0
        bs = ((sigma_rep - eye) // 2) % 2
        for k, x in enumerate(np.array(bs, dtype=np.int64).ravel()):
            if x:
                sigma_vec |= 1 << k
        reports.append(
            check(
                f"prop22.d{d}.mod4-sums",
                "prop22a",
                full_sum == sigma_vec and partial_sum == minus_one_vec,
            )
        )
    # symplectic certification of every generator image
    j = invariant_form(d)
    sympl = all((m.T @ j @ m == j).all() for m in reps.values())
    dets = all(_int_det_fraction([row for row in m]) == 1 for m in reps.values())
    pf = _int_det_fraction([row for row in j])
    reports.append(
        check(
            f"prop22.d{d}.symplectic",
            "prop22.form",
            sympl and dets and abs(pf) == 1,
            form=j.tolist(),
            form_determinant=pf,
        )
    )
    return reports


def prop22_suite(d: int) -> list[VerificationReport]:
    return verify_prop22(d)
