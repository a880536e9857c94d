"""Enumeration of level-2 congruence quotients and their abelianizations.

The quotient Gamma(2)/Gamma(2^m) inside Sp_2g(Z/2^m) is enumerated as an
explicit set of matrices by BFS closure of seed generators; the closure is
certified complete against the order formula |Gamma(2)/Gamma(2^m)| =
2^((m-1)(2g^2+g)) and never silently returned as a proper subgroup.
Commutator subgroups are BFS normal closures of generator-pair commutators,
and abelianizations are classified from the coset-order census.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .abelian import AbelianType, abelian_type_from_census
from .errors import CapacityError, IncompleteGeneratorsError, StructuralError
from .modring import ModMatrix, mat_inverse, mat_mul, pack_key, unpack_key
from .reports import VerificationReport, check
from .symplectic import SymplecticSpace, Transvection, congruence_level, transvection_matrix

CHUNK = 1 << 18
DEFAULT_CAP = 1 << 21


def layer_dimension(g: int) -> int:
    """F2-dimension of each layer Gamma(2^n)/Gamma(2^(n+1))."""
    return 2 * g * g + g


def gamma2_order(g: int, m: int) -> int:
    return 1 << ((m - 1) * layer_dimension(g))


def sigma_tau(level: int) -> tuple[ModMatrix, ModMatrix]:
    """The unipotent generators of the genus-1 quotient."""
    sigma = ModMatrix([[1, -2], [0, 1]], level)
    tau = ModMatrix([[1, 0], [2, 1]], level)
    return sigma, tau


def default_seed_generators(g: int, m: int) -> list[ModMatrix]:
    """Seed sets whose closure is certified by the order formula.

    genus 1: sigma, tau and -1; genus 2: -1 together with the squares of the
    symplectic transvections along every nonzero 0/1 direction vector.
    """
    if g == 1:
        sigma, tau = sigma_tau(m)
        return [sigma, tau, -ModMatrix.identity(2, m)]
    if g == 2:
        space = SymplecticSpace(genus=2, level=m)
        gens = []
        for bits in range(1, 1 << 4):
            v = tuple((bits >> k) & 1 for k in range(4))
            gens.append(transvection_matrix(Transvection(v, 2), space))
        gens.append(-ModMatrix.identity(4, m))
        return gens
    raise StructuralError(f"no seed generators for genus {g}")


# -- vectorized BFS over packed keys ----------------------------------------


def _weights(dim: int, level: int) -> np.ndarray:
    mod = 1 << level
    return (mod ** np.arange(dim * dim, dtype=np.int64)).astype(np.int64)


def _keys_of(mats: np.ndarray, level: int) -> np.ndarray:
    n, dim, _ = mats.shape
    flat = mats.reshape(n, -1)
    weights = _weights(dim, level)
    out = np.zeros(n, dtype=np.int64)
    for c in range(dim * dim):
        out += flat[:, c].astype(np.int64) * weights[c]
    return out


def _mats_of(keys: np.ndarray, dim: int, level: int) -> np.ndarray:
    mod = 1 << level
    out = np.empty((len(keys), dim * dim), dtype=np.uint8)
    v = keys.astype(np.int64).copy()
    for c in range(dim * dim):
        out[:, c] = v % mod
        v //= mod
    return out.reshape(len(keys), dim, dim)


def closure_keys(
    seeds: Sequence[ModMatrix], cap_elements: int = DEFAULT_CAP
) -> np.ndarray:
    """Sorted packed keys of the subgroup generated by the seeds.

    BFS over the Cayley graph under right multiplication; in a finite group
    this closure is the full subgroup.  Multiplication is uint8 with
    wraparound, which is exact mod 2^level because 2^level divides 256.
    """
    dim, level = seeds[0].dim, seeds[0].level
    mod = 1 << level
    for s in seeds:
        if s.dim != dim or s.level != level:
            raise StructuralError("seed generators must share dim and level")
    gen_mats = np.array([s.to_array() % mod for s in seeds], dtype=np.uint8)
    identity = np.eye(dim, dtype=np.uint8)[None]
    visited = np.unique(_keys_of(np.concatenate([identity, gen_mats]), level))
    frontier = visited
    while len(frontier):
        new_parts = []
        for start in range(0, len(frontier), CHUNK):
            mats = _mats_of(frontier[start : start + CHUNK], dim, level)
            prods = np.einsum(
                "nij,gjk->ngik", mats, gen_mats, dtype=np.uint8, casting="unsafe"
            ) & (mod - 1)
            ks = np.unique(_keys_of(prods.reshape(-1, dim, dim), level))
            new_parts.append(ks[~np.isin(ks, visited, assume_unique=True, kind="sort")])
        new = np.unique(np.concatenate(new_parts)) if new_parts else np.array([], dtype=np.int64)
        new = new[~np.isin(new, visited, assume_unique=True, kind="sort")]
        visited = np.union1d(visited, new)
        if len(visited) > cap_elements:
            raise CapacityError(
                f"closure exceeded the element cap {cap_elements} (at {len(visited)})"
            )
        frontier = new
    return visited


@dataclass(frozen=True)
class QuotientGroup:
    """An explicitly enumerated subgroup of Gamma(2) mod 2^level."""

    genus: int
    level: int
    keys: np.ndarray
    generators: tuple[ModMatrix, ...]

    @property
    def dim(self) -> int:
        return 2 * self.genus

    @property
    def order(self) -> int:
        return int(len(self.keys))

    def contains(self, m: ModMatrix) -> bool:
        key = pack_key(m)
        i = np.searchsorted(self.keys, key)
        return bool(i < len(self.keys) and self.keys[i] == key)

    def matrices(self) -> Iterator[ModMatrix]:
        for key in self.keys:
            yield unpack_key(int(key), self.dim, self.level)

    def element_arrays(self) -> np.ndarray:
        return _mats_of(self.keys, self.dim, self.level)


def enumerate_gamma2(
    g: int,
    m: int,
    seed_generators: Sequence[ModMatrix] | None = None,
    cap_elements: int = DEFAULT_CAP,
) -> QuotientGroup:
    """BFS enumeration of Gamma(2)/Gamma(2^m), certified by the order formula.

    Raises IncompleteGeneratorsError if the closure of the seeds is a proper
    subgroup, and CapacityError past the element cap.
    """
    if g not in (1, 2):
        raise StructuralError("enumeration is implemented for genus 1 and 2 only")
    if (g == 1 and not 2 <= m <= 5) or (g == 2 and not 2 <= m <= 3):
        raise CapacityError(f"level m={m} out of the supported range for genus {g}")
    seeds = list(seed_generators) if seed_generators is not None else default_seed_generators(g, m)
    expected = gamma2_order(g, m)
    if expected > cap_elements:
        raise CapacityError(f"group order {expected} exceeds the element cap {cap_elements}")
    for s in seeds:
        if congruence_level(s) < 1:
            raise StructuralError("seed generator does not reduce to the identity mod 2")
    keys = closure_keys(seeds, cap_elements)
    if len(keys) != expected:
        raise IncompleteGeneratorsError(
            f"closure has order {len(keys)}, expected {expected}: enlarge the seed set"
        )
    return QuotientGroup(genus=g, level=m, keys=keys, generators=tuple(seeds))


@functools.lru_cache(maxsize=8)
def _enumerate_cached(g: int, m: int, cap_elements: int) -> QuotientGroup:
    return enumerate_gamma2(g, m, None, cap_elements)


def enumerate_gamma2_cached(g: int, m: int, cap_elements: int = DEFAULT_CAP) -> QuotientGroup:
    """Default-seed enumeration, cached: several suites share the genus-2 run."""
    return _enumerate_cached(g, m, int(cap_elements))


# -- commutator subgroup and abelianization ----------------------------------


def commutator_subgroup(q: QuotientGroup, cap_elements: int = 1 << 16) -> QuotientGroup:
    """Normal closure of all generator-pair commutators, enumerated by BFS."""
    gens = list(q.generators)
    invs = [mat_inverse(a) for a in gens]
    identity = ModMatrix.identity(q.dim, q.level)
    comms = {}
    for a, ai in zip(gens, invs):
        for b, bi in zip(gens, invs):
            c = mat_mul(mat_mul(a, b), mat_mul(ai, bi))
            comms[c] = True
    elems: dict[ModMatrix, bool] = {identity: True}
    elems.update(comms)
    frontier = list(comms)
    base = list(comms)
    while frontier:
        new = []
        for x in frontier:
            candidates = [mat_mul(x, c) for c in base]
            candidates += [mat_mul(mat_mul(a, x), ai) for a, ai in zip(gens, invs)]
            for y in candidates:
                if y not in elems:
                    elems[y] = True
                    new.append(y)
            if len(elems) > cap_elements:
                raise CapacityError("commutator closure exceeded the element cap")
        frontier = new
    keys = np.array(sorted(pack_key(x) for x in elems), dtype=np.int64)
    for x in elems:
        if not q.contains(x):
            raise StructuralError("commutator element escaped the ambient group")
    return QuotientGroup(genus=q.genus, level=q.level, keys=keys, generators=tuple(comms))


def coset_canonical_keys(q: QuotientGroup, subgroup: QuotientGroup) -> np.ndarray:
    """Canonical key per element: minimum over its right coset x*C."""
    mod = 1 << q.level
    sub_mats = subgroup.element_arrays()
    canon = np.full(q.order, np.iinfo(np.int64).max, dtype=np.int64)
    for start in range(0, q.order, CHUNK):
        mats = _mats_of(q.keys[start : start + CHUNK], q.dim, q.level)
        block = canon[start : start + len(mats)]
        for c in sub_mats:
            prods = np.einsum("nij,jk->nik", mats, c, dtype=np.uint8, casting="unsafe") & (mod - 1)
            np.minimum(block, _keys_of(prods, q.level), out=block)
        canon[start : start + len(mats)] = block
    return canon


def quotient_census(q: QuotientGroup, subgroup: QuotientGroup) -> dict[int, int]:
    """Element-order census of q/subgroup (subgroup must be normal in q)."""
    mod = 1 << q.level
    canon = coset_canonical_keys(q, subgroup)
    reps = np.unique(canon)
    sub_mats = subgroup.element_arrays()

    def canonical(mats: np.ndarray) -> np.ndarray:
        out = np.full(len(mats), np.iinfo(np.int64).max, dtype=np.int64)
        for c in sub_mats:
            prods = np.einsum("nij,jk->nik", mats, c, dtype=np.uint8, casting="unsafe") & (mod - 1)
            np.minimum(out, _keys_of(prods, q.level), out=out)
        return out

    identity_canon = canonical(np.eye(q.dim, dtype=np.uint8)[None])[0]
    cur = _mats_of(reps, q.dim, q.level)
    orders = np.zeros(len(reps), dtype=np.int64)
    done = np.zeros(len(reps), dtype=bool)
    o = 1
    while not done.all():
        if o > q.order:
            raise StructuralError("order computation failed to terminate")
        now = (~done) & (canonical(cur) == identity_canon)
        orders[now] = o
        done |= now
        cur = np.einsum("nij,njk->nik", cur, cur, dtype=np.uint8, casting="unsafe") & (mod - 1)
        o *= 2
    values, counts = np.unique(orders, return_counts=True)
    return {int(v): int(c) for v, c in zip(values, counts)}


def abelianization(
    q: QuotientGroup, subgroup: QuotientGroup | None = None
) -> tuple[AbelianType, dict[int, int]]:
    """Type of q/[q,q], classified from the coset-order census."""
    c = subgroup if subgroup is not None else commutator_subgroup(q)
    census = quotient_census(q, c)
    quotient_order = q.order // c.order
    return abelian_type_from_census(census, quotient_order), census


# -- Sato membership oracle ---------------------------------------------------


@dataclass(frozen=True)
class SatoOracle:
    """Membership test for [Gamma(2), Gamma(2)] mod 2^level at genus >= 2.

    A matrix belongs iff it lies in Gamma(4) and its (i, i+g) and (i+g, i)
    entries are divisible by 8 for 1 <= i <= g.
    """

    genus: int
    level: int = 3

    def __post_init__(self) -> None:
        if self.genus < 2 or self.level > 3:
            raise StructuralError("oracle applies to genus >= 2 at level <= 3")

    def is_member(self, m: ModMatrix) -> bool:
        if m.dim != 2 * self.genus or m.level != self.level:
            raise StructuralError("matrix does not match the oracle parameters")
        if congruence_level(m) < 2:
            return False
        g = self.genus
        arr = m.to_array()
        mod8 = 1 << min(3, self.level)
        return all(
            arr[i, g + i] % mod8 == 0 and arr[g + i, i] % mod8 == 0 for i in range(g)
        )

    def member_keys(self, q: QuotientGroup) -> np.ndarray:
        """Keys of all oracle members inside an enumerated group, vectorized."""
        mats = q.element_arrays()
        g = self.genus
        mod4 = 4
        eye = np.eye(q.dim, dtype=np.uint8)
        ok = ((mats % mod4) == (eye % mod4)).all(axis=(1, 2))
        for i in range(g):
            ok &= (mats[:, i, g + i] % 8 == 0) & (mats[:, g + i, i] % 8 == 0)
        return q.keys[ok]


# -- the genus-1 commutator closed form ---------------------------------------


def _int_mat(rows: Sequence[Sequence[int]]) -> np.ndarray:
    return np.array(rows, dtype=object)


def _int_inv_sl2(a: np.ndarray) -> np.ndarray:
    det = a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]
    assert det == 1
    return _int_mat([[a[1, 1], -a[0, 1]], [-a[1, 0], a[0, 0]]])


def _int_pow(a: np.ndarray, n: int) -> np.ndarray:
    r = _int_mat([[1, 0], [0, 1]])
    if n < 0:
        a, n = _int_inv_sl2(a), -n
    for _ in range(n):
        r = r @ a
    return r


def commutator_word_matrix(m: int, n: int) -> np.ndarray:
    """Exact integer matrix of the commutator word at 2-power exponents.

    With A = sigma^(2^(m-1)) and B = tau^(2^(n-1)), the product is the
    rotated commutator B A^-1 B^-1 A; this is the composition order under
    which the closed form below reproduces the expanded word, and the choice
    is pinned by verify_commutator_formula rather than assumed.
    """
    sigma = _int_mat([[1, -2], [0, 1]])
    tau = _int_mat([[1, 0], [2, 1]])
    a = _int_pow(sigma, 1 << (m - 1))
    b = _int_pow(tau, 1 << (n - 1))
    return b @ _int_inv_sl2(a) @ _int_inv_sl2(b) @ a


def closed_form_commutator(m: int, n: int) -> np.ndarray:
    """Closed form with entries 1-2^(m+n), 2^(2m+n); -2^(m+2n), 1+2^(m+n)+2^(2m+2n)."""
    return _int_mat(
        [
            [1 - 2 ** (m + n), 2 ** (2 * m + n)],
            [-(2 ** (m + 2 * n)), 1 + 2 ** (m + n) + 2 ** (2 * m + 2 * n)],
        ]
    )


def verify_commutator_formula(max_exponent: int = 6) -> list[VerificationReport]:
    """Word expansion equals the closed form exactly over Z, for all m, n."""
    mismatches = []
    for m in range(1, max_exponent + 1):
        for n in range(1, max_exponent + 1):
            word = commutator_word_matrix(m, n)
            closed = closed_form_commutator(m, n)
            if not (word == closed).all():
                mismatches.append({"m": m, "n": n, "word": word.tolist(), "closed": closed.tolist()})
            else:
                # equality over Z implies equality at level 5; confirm anyway
                assert ModMatrix(word.astype(np.int64), 5) == ModMatrix(closed.astype(np.int64), 5)
    return [
        check(
            "commutator-formula.exact",
            "lemma31.commutator-formula",
            not mismatches,
            range_checked=f"1<=m,n<={max_exponent}",
            sample=commutator_word_matrix(1, 1).tolist(),
            mismatches=mismatches,
        )
    ]


def verify_mod32_congruences() -> list[VerificationReport]:
    """The two commutator products and the 4th power against sigma^8, tau^8, 17.

    The product carrying the square of sigma lands on the sigma^8 class and
    the one carrying the square of tau on the tau^8 class; the witness records
    the realized pairing.  Together with 17*I these generate Gamma(16) mod 32.
    """
    level = 5
    mod = 1 << level
    w11 = commutator_word_matrix(1, 1)
    w21 = commutator_word_matrix(2, 1)
    w12 = commutator_word_matrix(1, 2)
    prod_sigma_heavy = ModMatrix((w21 @ w11 @ w11).astype(np.int64), level)
    prod_tau_heavy = ModMatrix((w12 @ w11 @ w11).astype(np.int64), level)
    fourth = ModMatrix((w11 @ w11 @ w11 @ w11).astype(np.int64), level)
    sigma, tau = sigma_tau(level)
    sigma8 = sigma**8
    tau8 = tau**8
    seventeen = ModMatrix.scalar(17, 2, level)
    pairing_ok = (
        {prod_sigma_heavy, prod_tau_heavy} == {sigma8, tau8}
        and prod_sigma_heavy == sigma8
        and prod_tau_heavy == tau8
    )
    return [
        check(
            "lemma31.g1.mod32-congruences",
            "lemma31.mod32",
            pairing_ok and fourth == seventeen,
            fourth_power=fourth.serialize(),
            sigma_heavy_product=prod_sigma_heavy.serialize(),
            tau_heavy_product=prod_tau_heavy.serialize(),
            realized_pairing={"sigma2-word": "sigma^8", "tau2-word": "tau^8"},
            modulus=mod,
        )
    ]


# -- layer structure (genus 1) -------------------------------------------------


def layer_subgroup_keys(q: QuotientGroup, n: int) -> np.ndarray:
    """Keys of the elements of Gamma(2^n) inside the enumerated group."""
    mats = q.element_arrays().astype(np.int64)
    eye = np.eye(q.dim, dtype=np.int64)
    ok = ((mats - eye) % (1 << min(n, q.level)) == 0).all(axis=(1, 2))
    return q.keys[ok]


def layer_generation_check(g: int = 1, n: int = 1) -> list[VerificationReport]:
    """Gamma(2^n)/Gamma(2^(n+1)) is (Z/2)^3 generated by the three listed images."""
    if g != 1 or not 1 <= n <= 4:
        raise StructuralError("layer check is the genus-1 computation, 1 <= n <= 4")
    level = n + 1
    q = enumerate_gamma2_cached(1, level)
    layer_keys = layer_subgroup_keys(q, n)
    sigma, tau = sigma_tau(level)
    scalar = ModMatrix.scalar(1 + (1 << n), 2, level)
    gens = [sigma ** (1 << (n - 1)), tau ** (1 << (n - 1)), scalar]
    gen_keys = closure_keys(gens, cap_elements=64)
    reports = [
        check(
            f"lemma31.g1.layer{n}.order",
            "lemma31.layers",
            len(layer_keys) == 8,
            order=int(len(layer_keys)),
        ),
        check(
            f"lemma31.g1.layer{n}.generators",
            "lemma31.layers",
            sorted(gen_keys.tolist()) == sorted(layer_keys.tolist()),
            generated=int(len(gen_keys)),
        ),
    ]
    # every nonidentity layer element squares to the identity: type (Z/2)^3
    mats = _mats_of(layer_keys, 2, level).astype(np.int64)
    squares_trivial = all(
        (np.linalg.matrix_power(mm, 2) % (1 << level) == np.eye(2, dtype=np.int64)).all()
        for mm in mats
    )
    reports.append(
        check(f"lemma31.g1.layer{n}.exponent2", "lemma31.layers", squares_trivial)
    )
    if n >= 3:
        # squares of arbitrary lifts of the previous layer generators land on
        # this layer's generators mod 2^(n+1)
        prev = [
            (sigma ** (1 << (n - 2)), sigma ** (1 << (n - 1))),
            (tau ** (1 << (n - 2)), tau ** (1 << (n - 1))),
            (ModMatrix.scalar(1 + (1 << (n - 1)), 2, level), scalar),
        ]
        ok = True
        for base, target in prev:
            for dbits in range(16):
                d = np.array([[dbits & 1, dbits >> 1 & 1], [dbits >> 2 & 1, dbits >> 3 & 1]])
                lift = ModMatrix(base.to_array() + (1 << n) * d, level)
                if lift * lift != target:
                    ok = False
        reports.append(check(f"lemma31.g1.layer{n}.squaring-step", "lemma31.induction", ok))
    if n in (2, 3):
        # (1+2^n)^2 = 1 + 2^(n+1) mod 2^(n+2)
        s = ModMatrix.scalar(1 + (1 << n), 2, n + 2)
        t = ModMatrix.scalar(1 + (1 << (n + 1)), 2, n + 2)
        reports.append(check(f"lemma31.g1.layer{n}.scalar-square", "lemma31.induction", s * s == t))
    return reports


def minus_one_decomposition_check(level: int = 4) -> list[VerificationReport]:
    """Gamma(2)/Gamma(2^level) = <sigma, tau> x {+-1}, with -1 central of order 2."""
    q = enumerate_gamma2_cached(1, level)
    sigma, tau = sigma_tau(level)
    h_keys = closure_keys([sigma, tau], cap_elements=1 << 12)
    minus = -ModMatrix.identity(2, level)
    minus_key = pack_key(minus)
    in_h = bool(np.isin(np.array([minus_key]), h_keys)[0])
    c = commutator_subgroup(q)
    canon = coset_canonical_keys(q, c)
    reps_of = dict(zip(q.keys.tolist(), canon.tolist()))
    id_c = reps_of[pack_key(ModMatrix.identity(2, level))]
    minus_c = reps_of[minus_key]
    square_c = reps_of[pack_key(minus * minus)]
    return [
        check(
            "lemma31.g1.direct-product",
            "lemma31.decomposition",
            (not in_h) and 2 * len(h_keys) == q.order,
            subgroup_order=int(len(h_keys)),
            group_order=q.order,
        ),
        check(
            "lemma31.g1.minus-one-class",
            "lemma31.decomposition",
            minus_c != id_c and square_c == id_c,
        ),
    ]


# -- transvection computations at genus 2 --------------------------------------


def _genus2_transvections(level: int = 3) -> dict[str, ModMatrix]:
    space = SymplecticSpace(genus=2, level=level)
    out = {}
    for kind in ("a", "b"):
        for i in (1, 2):
            v = tuple(int(x) for x in space.basis_vector(kind, i))
            out[f"{kind}{i}"] = transvection_matrix(Transvection(v, 1), space)
            out[f"{kind}{i}^4"] = transvection_matrix(Transvection(v, 4), space)
    return out


def _f2_rank(rows: list[list[int]]) -> int:
    work = [int("".join(str(b % 2) for b in row), 2) if row else 0 for row in rows]
    rank = 0
    for _ in range(len(work)):
        pivot_row = None
        for i, v in enumerate(work):
            if v:
                pivot_row = i
                break
        if pivot_row is None:
            break
        pv = work.pop(pivot_row)
        bit = pv.bit_length() - 1
        work = [v ^ pv if v >> bit & 1 else v for v in work]
        rank += 1
    return rank


def gamma4_mod_commutator_basis(g: int = 2) -> list[VerificationReport]:
    """The four 4th-power transvections are a basis of Gamma(4) mod [Gamma(2),Gamma(2)]."""
    if g != 2:
        raise StructuralError("the transvection basis computation is the genus-2 case")
    level = 3
    q = enumerate_gamma2_cached(2, level)
    oracle = SatoOracle(genus=2, level=level)
    sato_keys = oracle.member_keys(q)
    gamma4_keys = layer_subgroup_keys(q, 2)
    t = _genus2_transvections(level)
    basis = [t["a1^4"], t["a2^4"], t["b1^4"], t["b2^4"]]
    reports = [
        check(
            "lemma32.g2.quotient-dimension",
            "lemma32.basis",
            len(gamma4_keys) == 1 << 10 and len(sato_keys) == 1 << 6,
            gamma4_order=int(len(gamma4_keys)),
            sato_order=int(len(sato_keys)),
            quotient_dimension=int(len(gamma4_keys)).bit_length() - int(len(sato_keys)).bit_length(),
        )
    ]
    # the quotient is an F2-space: squares of Gamma(4) elements are members
    mats4 = _mats_of(gamma4_keys, 4, level)
    sq = np.einsum("nij,njk->nik", mats4, mats4, dtype=np.uint8, casting="unsafe") & 7
    sq_keys = np.unique(_keys_of(sq, level))
    squares_inside = bool(np.isin(sq_keys, sato_keys).all())
    reports.append(check("lemma32.g2.exponent2-quotient", "lemma32.basis", squares_inside))
    # independence: no nonempty product of the four images is an oracle member
    independent = True
    nontrivial = True
    for mask in range(1, 16):
        prod = ModMatrix.identity(4, level)
        for i in range(4):
            if mask >> i & 1:
                prod = prod * basis[i]
        if oracle.is_member(prod):
            independent = False
        if mask in (1, 2, 4, 8) and oracle.is_member(prod):
            nontrivial = False
    reports.append(
        check("lemma32.g2.transvection-basis", "lemma32.basis", independent and nontrivial)
    )
    return reports


def _express_in_transvection_basis(
    x: ModMatrix, basis: list[ModMatrix], oracle: SatoOracle
) -> tuple[int, ...] | None:
    """Coefficients over F2 with x = prod(basis^c) modulo the oracle subgroup."""
    for mask in range(16):
        prod = ModMatrix.identity(4, x.level)
        for i in range(4):
            if mask >> i & 1:
                prod = prod * basis[i]
        if oracle.is_member(x * mat_inverse(prod)):
            return tuple(mask >> i & 1 for i in range(4))
    return None


def transvection_conjugation_check() -> list[VerificationReport]:
    """Conjugation by T_a1 on Gamma(4)/[Gamma(2),Gamma(2)] is a transvection."""
    level = 3
    oracle = SatoOracle(genus=2, level=level)
    t = _genus2_transvections(level)
    basis = [t["a1^4"], t["a2^4"], t["b1^4"], t["b2^4"]]
    ta1, ta1_inv = t["a1"], mat_inverse(t["a1"])
    conj_b1 = ta1 * t["b1^4"] * ta1_inv
    target = t["b1^4"] * t["a1^4"]
    rep1 = check(
        "lemma32.g2.conjugation-congruence",
        "lemma32.conjugation",
        oracle.is_member(conj_b1 * mat_inverse(target)),
        conjugate=conj_b1.serialize(),
        target=target.serialize(),
    )
    commutes = all(
        oracle.is_member(ta1 * x * ta1_inv * mat_inverse(x))
        for x in (t["a1^4"], t["a2^4"], t["b2^4"])
    )
    rep2 = check("lemma32.g2.commuting-basis-elements", "lemma32.conjugation", commutes)
    # matrix of the induced operator in the 4th-power transvection basis
    cols = []
    for x in basis:
        coeffs = _express_in_transvection_basis(ta1 * x * ta1_inv, basis, oracle)
        if coeffs is None:
            cols.append(None)
        else:
            cols.append(coeffs)
    operator_ok = all(c is not None for c in cols)
    rank = None
    if operator_ok:
        a = np.array(cols, dtype=np.int64).T % 2
        dev = (a - np.eye(4, dtype=np.int64)) % 2
        rank = _f2_rank(dev.tolist())
    rep3 = check(
        "lemma32.g2.induced-transvection",
        "lemma32.conjugation",
        operator_ok and rank == 1,
        operator_columns=cols,
        deviation_rank=rank,
    )
    return [rep1, rep2, rep3]


# -- assembled suites ----------------------------------------------------------


def lemma31_suite(g: int, cap_elements: int = DEFAULT_CAP) -> list[VerificationReport]:
    """Order, commutator, and abelianization checks for one genus."""
    reports: list[VerificationReport] = []
    if g == 1:
        for m, expected in ((2, 8), (3, 64), (4, 512)):
            q = enumerate_gamma2_cached(1, m, cap_elements)
            reports.append(
                check(
                    f"lemma31.g1.order{expected}",
                    "lemma31.orders",
                    q.order == expected,
                    order=q.order,
                    level=m,
                )
            )
        q4 = enumerate_gamma2_cached(1, 4, cap_elements)
        c4 = commutator_subgroup(q4)
        word = ModMatrix(commutator_word_matrix(1, 1).astype(np.int64), 4)
        cyclic = {pack_key(word**k) for k in range(4)}
        reports.append(
            check(
                "lemma31.g1.commutator-order4",
                "lemma31.commutator",
                c4.order == 4 and cyclic == set(c4.keys.tolist()),
                order=c4.order,
                generator=word.serialize(),
            )
        )
        ab_type, census = abelianization(q4, c4)
        expected_type = AbelianType((8, 8, 2))
        reports.append(
            check(
                "lemma31.g1.abelianization",
                "lemma31.abelianization",
                ab_type == expected_type and ab_type.order == 128,
                abelianization=str(ab_type),
                census=census,
            )
        )
        reports.extend(verify_mod32_congruences())
        # stability: recomputing at level 5 yields the same type
        q5 = enumerate_gamma2_cached(1, 5, cap_elements)
        ab5, _ = abelianization(q5)
        reports.append(
            check(
                "lemma31.g1.level5-stability",
                "lemma31.factors-through",
                ab5 == expected_type,
                abelianization=str(ab5),
            )
        )
        reports.extend(minus_one_decomposition_check(4))
    elif g == 2:
        q = enumerate_gamma2_cached(2, 3, cap_elements)
        reports.append(
            check("lemma31.g2.order", "lemma31.orders", q.order == 1 << 20, order=q.order)
        )
        # layer cross-check: Gamma(4)/Gamma(8) enumerated directly from 4th powers
        space = SymplecticSpace(genus=2, level=3)
        layer_seeds = []
        for bits in range(1, 1 << 4):
            v = tuple((bits >> k) & 1 for k in range(4))
            layer_seeds.append(transvection_matrix(Transvection(v, 4), space))
        layer_direct = closure_keys(layer_seeds, cap_elements)
        layer_filtered = layer_subgroup_keys(q, 2)
        reports.append(
            check(
                "lemma31.g2.layer-order",
                "lemma31.layers",
                len(layer_direct) == 1 << 10
                and sorted(layer_direct.tolist()) == sorted(layer_filtered.tolist()),
                direct=int(len(layer_direct)),
                filtered=int(len(layer_filtered)),
            )
        )
        c = commutator_subgroup(q)
        sato = SatoOracle(genus=2, level=3).member_keys(q)
        reports.append(
            check(
                "lemma31.g2.commutator-equals-sato",
                "lemma31.sato",
                c.order == 64 and sorted(sato.tolist()) == sorted(c.keys.tolist()),
                commutator_order=c.order,
                sato_order=int(len(sato)),
            )
        )
        ab_type, census = abelianization(q, c)
        expected_type = AbelianType((4, 4, 4, 4, 2, 2, 2, 2, 2, 2))
        reports.append(
            check(
                "lemma31.g2.abelianization",
                "lemma31.abelianization",
                ab_type == expected_type and ab_type.order == 1 << 14,
                abelianization=str(ab_type),
                census=census,
            )
        )
    else:
        raise StructuralError("lemma31 suite runs at genus 1 or 2")
    return reports


def lemma32_suite() -> list[VerificationReport]:
    return gamma4_mod_commutator_basis(2) + transvection_conjugation_check()
