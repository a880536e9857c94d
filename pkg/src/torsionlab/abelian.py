"""Classification of finite abelian 2-groups from an element-order census.

For an abelian 2-group the counts of elements of order <= 2^j for every j
determine the invariant factors: if s_j = log2 #{x : x^(2^j) = 1} then
d_j = s_j - s_(j-1) counts the invariant factors of order >= 2^j, and the
d_j must be non-increasing.  Groups are handed to us as element sets, so a
census is the natural input; no presentations are involved.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import ClassificationError


@dataclass(frozen=True)
class AbelianType:
    """Invariant factors of a finite abelian 2-group, sorted descending."""

    factors: tuple[int, ...]

    def __post_init__(self) -> None:
        if list(self.factors) != sorted(self.factors, reverse=True):
            raise ClassificationError("invariant factors must be sorted descending")
        for f in self.factors:
            if f < 2 or f & (f - 1):
                raise ClassificationError(f"invariant factor {f} is not a 2-power >= 2")

    @property
    def order(self) -> int:
        n = 1
        for f in self.factors:
            n *= f
        return n

    def census(self) -> dict[int, int]:
        """Element counts by exact order; inverse of classification."""
        max_order = max(self.factors, default=1)
        cumulative = {}
        o = 1
        j = 0
        while o <= max_order:
            count = 1
            for f in self.factors:
                count *= min(f, o)
            cumulative[o] = count
            j += 1
            o <<= 1
        census: dict[int, int] = {}
        prev = 0
        for o, c in cumulative.items():
            if c - prev:
                census[o] = c - prev
            prev = c
        return census

    def __str__(self) -> str:
        grouped = Counter(self.factors)
        parts = []
        for f in sorted(grouped):
            e = grouped[f]
            parts.append(f"Z/{f}" + (f"^{e}" if e > 1 else ""))
        return " x ".join(parts) if parts else "trivial"


def abelian_type_from_census(
    orders: Mapping[int, int] | Iterable[int], group_order: int
) -> AbelianType:
    """The unique abelian 2-group whose element-order census matches.

    ``orders`` maps each exact element order to its count (or is an iterable
    of element orders, one per element).  Raises ClassificationError if the
    census is inconsistent.
    """
    if isinstance(orders, Mapping):
        census = {int(k): int(v) for k, v in orders.items()}
    else:
        census = dict(Counter(int(x) for x in orders))
    if group_order < 1 or group_order & (group_order - 1):
        raise ClassificationError(f"group order {group_order} is not a 2-power")
    if sum(census.values()) != group_order:
        raise ClassificationError("census counts do not sum to the group order")
    if census.get(1, 0) != 1:
        raise ClassificationError("census must contain exactly one identity element")
    for o in census:
        if o < 1 or o & (o - 1):
            raise ClassificationError(f"element order {o} is not a 2-power")

    max_order = max(census)
    # s_j = log2 of #elements with order dividing 2^j
    s = [0]
    running = 1
    o = 2
    while o <= max_order:
        running += census.get(o, 0)
        if running & (running - 1):
            raise ClassificationError(f"count of elements of order <= {o} is not a 2-power")
        s.append(running.bit_length() - 1)
        o <<= 1
    d = [s[j] - s[j - 1] for j in range(1, len(s))]
    if any(d[j] > d[j - 1] for j in range(1, len(d))):
        raise ClassificationError("census is not realizable by an abelian 2-group")
    if any(x < 0 for x in d):
        raise ClassificationError("census is not monotone")
    # d_j = number of invariant factors of order >= 2^j
    factors = []
    for i in range(d[0] if d else 0):
        e = sum(1 for dj in d if dj >= i + 1)
        factors.append(1 << e)
    result = AbelianType(tuple(sorted(factors, reverse=True)))
    if result.order != group_order:
        raise ClassificationError("reconstructed type does not match the group order")
    if result.census() != census:
        raise ClassificationError("census does not regenerate from the classified type")
    return result
