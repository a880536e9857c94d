"""Symplectic structure mod 2^k: the alternating form, similitudes, transvections.

The Gram matrix is fixed in block form [[0, -I], [I, 0]] with respect to the
ordered basis a_1..a_g, b_1..b_g, so that pairing(a_i, b_i) = -1.  All
transvection computations downstream depend on this sign normalization, and
the acceptance tests pin it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import StructuralError
from .modring import ModMatrix


@dataclass(frozen=True)
class SymplecticSpace:
    """Rank-2g symplectic space over Z/2^level with the fixed block Gram matrix."""

    genus: int
    level: int

    def __post_init__(self) -> None:
        if self.genus < 1:
            raise StructuralError("genus must be >= 1")

    @property
    def dim(self) -> int:
        return 2 * self.genus

    def gram(self) -> ModMatrix:
        g = self.genus
        j = np.zeros((2 * g, 2 * g), dtype=np.int64)
        for i in range(g):
            j[i, g + i] = -1
            j[g + i, i] = 1
        return ModMatrix(j, self.level)

    def pairing(self, v: Sequence[int], w: Sequence[int]) -> int:
        """pairing(v, w) = v^T J w reduced mod 2^level."""
        j = self.gram().to_array()
        val = int(np.asarray(v, dtype=np.int64) @ j @ np.asarray(w, dtype=np.int64))
        return val % (1 << self.level)

    def basis_vector(self, kind: str, i: int) -> np.ndarray:
        """Coordinate vector of a_i (kind 'a') or b_i (kind 'b'), 1-indexed."""
        if kind not in ("a", "b") or not 1 <= i <= self.genus:
            raise StructuralError(f"no basis vector {kind}_{i} for genus {self.genus}")
        v = np.zeros(self.dim, dtype=np.int64)
        v[(0 if kind == "a" else self.genus) + i - 1] = 1
        return v


@dataclass(frozen=True)
class Transvection:
    """v -> v + exponent * pairing(v, direction) * direction."""

    direction: tuple[int, ...]
    exponent: int = 1


def is_symplectic(m: ModMatrix, space: SymplecticSpace) -> Optional[int]:
    """Similitude multiplier of m, or None.

    Returns the unit lambda with m^T * J * m = lambda * J when one exists
    (lambda = 1 means m is symplectic); the Gram matrix has a unit entry, so
    lambda is determined entry-wise with no ambiguity.
    """
    if m.dim != space.dim or m.level != space.level:
        raise StructuralError("matrix does not match the symplectic space")
    mod = 1 << space.level
    j = space.gram().to_array()
    p = (m.to_array().T @ j @ m.to_array()) % mod
    # J[0, g] = -1 is a unit: lambda = -P[0, g]
    lam = (-p[0, space.genus]) % mod
    if lam % 2 == 0:
        return None
    if ((p - lam * j) % mod != 0).any():
        return None
    return int(lam)


def congruence_level(m: ModMatrix) -> int:
    """Largest n <= level with m congruent to the identity mod 2^n."""
    diff = m.to_array() - np.eye(m.dim, dtype=np.int64)
    n = 0
    while n < m.level and (diff % (1 << (n + 1)) == 0).all():
        n += 1
    return n


def transvection_matrix(t: Transvection, space: SymplecticSpace) -> ModMatrix:
    """Expand a transvection to its matrix: I + exponent * outer(a, J a)."""
    a = np.asarray(t.direction, dtype=np.int64)
    if a.shape != (space.dim,):
        raise StructuralError(f"direction must have length {space.dim}")
    j = space.gram().to_array()
    m = np.eye(space.dim, dtype=np.int64) + t.exponent * np.outer(a, j @ a)
    result = ModMatrix(m, space.level)
    assert is_symplectic(result, space) == 1
    return result


def weil_subset_basis(d: int) -> dict[tuple[str, int], frozenset[int]]:
    """Root subsets representing a_i, b_i in the 2-torsion of the Jacobian.

    a_i is the class of {alpha_(2i-1), alpha_(2i)} and b_i the class of
    {alpha_(2i), ..., alpha_(2g+1)}; only the first 2g+1 roots appear.
    """
    if d < 3:
        raise StructuralError("need d >= 3")
    g = (d - 1) // 2
    out: dict[tuple[str, int], frozenset[int]] = {}
    for i in range(1, g + 1):
        out[("a", i)] = frozenset({2 * i - 1, 2 * i})
        out[("b", i)] = frozenset(range(2 * i, 2 * g + 2))
    return out


# -- translation between mod-2 symplectic matrices and root permutations ----


def _canonical_subset(mask: int, npoints: int) -> int:
    """Even subsets of the branch points modulo complementation."""
    full = (1 << npoints) - 1
    assert bin(mask).count("1") % 2 == 0
    if mask >> (npoints - 1) & 1:
        mask ^= full
    return mask


def _subset_coordinates(mask: int, basis_masks: list[int], npoints: int) -> np.ndarray:
    """Express an even subset class in the given basis, over F2."""
    n = len(basis_masks)
    # gaussian elimination over F2 on bitmask columns
    rows = [(_canonical_subset(b, npoints), 1 << i) for i, b in enumerate(basis_masks)]
    target = _canonical_subset(mask, npoints)
    coeff = 0
    work = list(rows)
    for bit in range(npoints):
        pivot = None
        for idx, (v, c) in enumerate(work):
            if v >> bit & 1:
                pivot = idx
                break
        if pivot is None:
            continue
        pv, pc = work.pop(pivot)
        if target >> bit & 1:
            target ^= pv
            coeff ^= pc
        work = [(v ^ pv, c ^ pc) if v >> bit & 1 else (v, c) for v, c in work]
    if target:
        raise StructuralError("subset class is not in the span of the basis")
    return np.array([(coeff >> i) & 1 for i in range(n)], dtype=np.int64)


def permutation_action_mod2(perm: Sequence[int], d: int) -> ModMatrix:
    """Matrix mod 2 of a root permutation acting on the 2-torsion basis.

    ``perm`` maps root index i (1-based, i <= d) to perm[i-1].  For odd d the
    2g+2-nd branch point is the place at infinity and stays fixed; for even d
    it is the last root alpha_d.
    """
    g = (d - 1) // 2
    npoints = 2 * g + 2
    if sorted(perm) != list(range(1, d + 1)):
        raise StructuralError("perm must be a permutation of 1..d")
    subsets = weil_subset_basis(d)
    order = [("a", i) for i in range(1, g + 1)] + [("b", i) for i in range(1, g + 1)]
    basis_masks = []
    for key in order:
        mask = 0
        for r in subsets[key]:
            mask |= 1 << (r - 1)
        basis_masks.append(mask)

    def apply_perm(mask: int) -> int:
        out = 0
        for p in range(npoints):
            if mask >> p & 1:
                q = perm[p] - 1 if p < d else p
                out |= 1 << q
        return out

    cols = []
    for bmask in basis_masks:
        img = apply_perm(_canonical_subset(bmask, npoints))
        cols.append(_subset_coordinates(img, basis_masks, npoints))
    return ModMatrix(np.array(cols, dtype=np.int64).T, 1)
