"""Exact arithmetic over Z/2^k: scalars, square matrices, canonical packing.

Entries are always stored reduced into [0, 2^k).  A matrix knows its modulus
exponent ``level`` (k), and mixed-level arithmetic is a :class:`StructuralError`
rather than a silent coercion.  Levels up to k = 8 are supported; the suites
only need k <= 5.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import SingularMatrixError, StructuralError

MAX_LEVEL = 8


def _check_level(level: int) -> int:
    if not 1 <= level <= MAX_LEVEL:
        raise StructuralError(f"level must be in 1..{MAX_LEVEL}, got {level}")
    return level


@dataclass(frozen=True)
class ModScalar:
    """A residue modulo 2^level."""

    value: int
    level: int

    def __post_init__(self) -> None:
        _check_level(self.level)
        object.__setattr__(self, "value", self.value % (1 << self.level))

    @property
    def modulus(self) -> int:
        return 1 << self.level

    def _coerce(self, other: int | ModScalar) -> ModScalar:
        if isinstance(other, int):
            return ModScalar(other, self.level)
        if other.level != self.level:
            raise StructuralError(f"level mismatch: {self.level} vs {other.level}")
        return other

    def __add__(self, other: int | ModScalar) -> ModScalar:
        other = self._coerce(other)
        return ModScalar(self.value + other.value, self.level)

    def __sub__(self, other: int | ModScalar) -> ModScalar:
        other = self._coerce(other)
        return ModScalar(self.value - other.value, self.level)

    def __mul__(self, other: int | ModScalar) -> ModScalar:
        other = self._coerce(other)
        return ModScalar(self.value * other.value, self.level)

    def __neg__(self) -> ModScalar:
        return ModScalar(-self.value, self.level)

    def is_unit(self) -> bool:
        return self.value % 2 == 1

    def inverse(self) -> ModScalar:
        if not self.is_unit():
            raise SingularMatrixError(f"{self.value} is not a unit mod 2^{self.level}")
        return ModScalar(pow(self.value, -1, self.modulus), self.level)


class ModMatrix:
    """Immutable square matrix over Z/2^level, hashable on its reduced entries."""

    __slots__ = ("dim", "level", "entries", "_hash")

    def __init__(self, entries: Sequence[Sequence[int]] | np.ndarray, level: int):
        _check_level(level)
        arr = np.asarray(entries, dtype=np.int64) % (1 << level)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise StructuralError(f"matrix must be square, got shape {arr.shape}")
        object.__setattr__(self, "dim", int(arr.shape[0]))
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "entries", tuple(tuple(int(x) for x in row) for row in arr))
        object.__setattr__(self, "_hash", hash((self.dim, self.level, self.entries)))

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("ModMatrix is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def identity(cls, dim: int, level: int) -> ModMatrix:
        return cls(np.eye(dim, dtype=np.int64), level)

    @classmethod
    def scalar(cls, value: int, dim: int, level: int) -> ModMatrix:
        return cls(value * np.eye(dim, dtype=np.int64), level)

    @classmethod
    def from_integer(cls, entries: Sequence[Sequence[int]], level: int) -> ModMatrix:
        return cls(entries, level)

    # -- basic protocol ----------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, ModMatrix)
            and self.dim == other.dim
            and self.level == other.level
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"ModMatrix({list(map(list, self.entries))}, level={self.level})"

    @property
    def modulus(self) -> int:
        return 1 << self.level

    def to_array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64)

    def serialize(self) -> dict:
        """Canonical row-major form used in JSON reports and as hash keys."""
        return {
            "dim": self.dim,
            "level": self.level,
            "entries": [x for row in self.entries for x in row],
        }

    @classmethod
    def deserialize(cls, data: dict) -> ModMatrix:
        dim = data["dim"]
        flat = data["entries"]
        rows = [flat[i * dim : (i + 1) * dim] for i in range(dim)]
        return cls(rows, data["level"])

    # -- arithmetic --------------------------------------------------------

    def _check_compat(self, other: ModMatrix) -> None:
        if self.dim != other.dim or self.level != other.level:
            raise StructuralError(
                f"incompatible matrices: dim/level ({self.dim},{self.level})"
                f" vs ({other.dim},{other.level})"
            )

    def __mul__(self, other: ModMatrix) -> ModMatrix:
        return mat_mul(self, other)

    def __pow__(self, n: int) -> ModMatrix:
        if n < 0:
            return mat_inverse(self) ** (-n)
        result = ModMatrix.identity(self.dim, self.level)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __neg__(self) -> ModMatrix:
        return ModMatrix(-self.to_array(), self.level)

    def determinant(self) -> int:
        """Determinant as a residue mod 2^level, by fraction-free expansion."""
        a = [[int(x) for x in row] for row in self.entries]
        n = self.dim
        det = _int_det(a, n)
        return det % self.modulus

    def is_invertible(self) -> bool:
        return self.determinant() % 2 == 1

    def reduce(self, level: int) -> ModMatrix:
        """Image under reduction mod 2^level (level <= self.level)."""
        if level > self.level:
            raise StructuralError("cannot reduce to a higher level")
        return ModMatrix(self.to_array(), level)


def _int_det(a: list[list[int]], n: int) -> int:
    if n == 1:
        return a[0][0]
    if n == 2:
        return a[0][0] * a[1][1] - a[0][1] * a[1][0]
    det = 0
    for j in range(n):
        if a[0][j] == 0:
            continue
        minor = [[a[i][k] for k in range(n) if k != j] for i in range(1, n)]
        det += (-1) ** j * a[0][j] * _int_det(minor, n - 1)
    return det


def mat_mul(a: ModMatrix, b: ModMatrix) -> ModMatrix:
    """Product a*b: apply b first, then a, acting on column vectors."""
    a._check_compat(b)
    return ModMatrix(a.to_array() @ b.to_array(), a.level)


def mat_inverse(m: ModMatrix) -> ModMatrix:
    """Inverse mod 2^level, by lifting the mod-2 inverse with Newton steps."""
    if not m.is_invertible():
        raise SingularMatrixError("matrix determinant is even, not invertible mod 2^k")
    mod = m.modulus
    x = m.to_array()
    y = _inverse_mod2(x, m.dim)
    # y correct mod 2; each Newton step doubles the valuation of (I - x y)
    steps = max(1, (m.level - 1).bit_length())
    eye2 = 2 * np.eye(m.dim, dtype=np.int64)
    for _ in range(steps):
        y = (y @ (eye2 - (x @ y) % mod)) % mod
    inv = ModMatrix(y, m.level)
    assert mat_mul(m, inv) == ModMatrix.identity(m.dim, m.level)
    return inv


def _inverse_mod2(x: np.ndarray, n: int) -> np.ndarray:
    a = (x % 2).astype(np.int64)
    aug = np.concatenate([a, np.eye(n, dtype=np.int64)], axis=1)
    row = 0
    for col in range(n):
        pivot = None
        for r in range(row, n):
            if aug[r, col] & 1:
                pivot = r
                break
        if pivot is None:
            raise SingularMatrixError("matrix is singular mod 2")
        aug[[row, pivot]] = aug[[pivot, row]]
        for r in range(n):
            if r != row and aug[r, col] & 1:
                aug[r] = (aug[r] + aug[row]) % 2
        row += 1
    return aug[:, n:]


# -- canonical integer packing (BFS keys) ----------------------------------


def pack_key(m: ModMatrix) -> int:
    """Row-major base-2^level packing of the reduced entries into one integer."""
    bits = m.level * m.dim * m.dim
    if bits > 62:
        raise StructuralError(f"key would need {bits} bits, exceeds int64 packing")
    key = 0
    shift = 0
    for row in m.entries:
        for x in row:
            key |= x << shift
            shift += m.level
    return key


def unpack_key(key: int, dim: int, level: int) -> ModMatrix:
    mask = (1 << level) - 1
    rows = []
    for _ in range(dim):
        row = []
        for _ in range(dim):
            row.append(key & mask)
            key >>= level
        rows.append(row)
    return ModMatrix(rows, level)


def congruence_level_ge(m: ModMatrix, n: int) -> bool:
    """Whether m is congruent to the identity modulo 2^n (n <= level)."""
    if n == 0:
        return True
    arr = m.to_array() - np.eye(m.dim, dtype=np.int64)
    return bool((arr % (1 << min(n, m.level)) == 0).all())


def integer_word(
    letters: Iterable[np.ndarray],
) -> np.ndarray:
    """Product of integer matrices in the given order, exact over Z."""
    result = None
    for a in letters:
        a = np.asarray(a, dtype=object)
        result = a.copy() if result is None else result @ a
    if result is None:
        raise StructuralError("empty word")
    return result
