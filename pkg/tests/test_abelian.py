"""Census classification against brute-force enumeration of product groups."""

import itertools
from math import lcm

import pytest

from torsionlab import AbelianType, ClassificationError, abelian_type_from_census


def census_by_enumeration(factors):
    """Independent oracle: element orders of Z/f1 x ... by direct enumeration."""
    census = {}
    for element in itertools.product(*[range(f) for f in factors]):
        order = 1
        for x, f in zip(element, factors):
            if x:
                order = lcm(order, f // __import__("math").gcd(x, f))
        census[order] = census.get(order, 0) + 1
    return census


@pytest.mark.parametrize(
    "factors",
    [
        (2, 2, 2),
        (8, 8, 2),
        (4, 4, 4, 4, 2, 2, 2, 2, 2, 2),
        (16,),
        (8, 4, 2, 2),
    ],
)
def test_classification_matches_enumeration(factors):
    census = census_by_enumeration(factors)
    order = 1
    for f in factors:
        order *= f
    result = abelian_type_from_census(census, order)
    assert result.factors == tuple(sorted(factors, reverse=True))


def test_elementary_census():
    assert abelian_type_from_census({1: 1, 2: 7}, 8) == AbelianType((2, 2, 2))


def test_census_accepts_order_iterable():
    orders = [1] + [2] * 3 + [4] * 12
    assert abelian_type_from_census(orders, 16) == AbelianType((4, 4))


def test_idempotence_under_census_regeneration():
    for factors in [(8, 8, 2), (4, 2), (2,), (16, 4)]:
        t = AbelianType(tuple(sorted(factors, reverse=True)))
        assert abelian_type_from_census(t.census(), t.order) == t


def test_inconsistent_census_rejected():
    with pytest.raises(ClassificationError):
        abelian_type_from_census({1: 1, 2: 5}, 8)  # 6 elements in a group of order 8
    with pytest.raises(ClassificationError):
        abelian_type_from_census({1: 1, 2: 1, 4: 6}, 8)  # more order-4 than order-2 allows
    with pytest.raises(ClassificationError):
        abelian_type_from_census({1: 1, 3: 2}, 4)  # non 2-power order
    with pytest.raises(ClassificationError):
        abelian_type_from_census({1: 2, 2: 6}, 8)  # two identities


def test_str_rendering():
    assert str(AbelianType((8, 8, 2))) == "Z/2 x Z/8^2"
