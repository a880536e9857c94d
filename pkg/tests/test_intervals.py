"""Rectangle arithmetic and certified square-root enclosures."""

from fractions import Fraction

import pytest

from torsionlab.errors import BranchError
from torsionlab.intervals import Interval, Rectangle, sqrt_enclosure


def test_interval_arithmetic():
    a = Interval(Fraction(1), Fraction(2))
    b = Interval(Fraction(-1), Fraction(3))
    assert (a + b).lo == 0 and (a + b).hi == 5
    assert (a * b).lo == -2 and (a * b).hi == 6
    assert a.reciprocal().lo == Fraction(1, 2)
    with pytest.raises(ZeroDivisionError):
        b.reciprocal()


def test_rectangle_multiplication_encloses():
    # (1+i)^2 = 2i
    z = Rectangle.point(1, 1)
    sq = z * z
    assert sq.re.contains(Fraction(0)) and sq.im.contains(Fraction(2))


def test_sqrt_positive_real():
    e = sqrt_enclosure(Rectangle.point(2), bits=64)
    assert e.im.lo == 0 and e.im.hi == 0
    assert e.re.lo**2 <= 2 <= e.re.hi**2
    assert e.re.lo > 0
    assert (e.re.hi - e.re.lo) < Fraction(1, 1 << 40)


def test_sqrt_negative_real_is_upper_imaginary():
    e = sqrt_enclosure(Rectangle.point(-2), bits=64)
    assert e.re.lo == 0 and e.re.hi == 0
    assert e.im.lo > 0


def test_sqrt_complex_principal_branch():
    # sqrt of i has argument pi/8's double... sqrt(i) = e^(i pi/4)
    e = sqrt_enclosure(Rectangle.point(0, 1), bits=64)
    sq = e * e
    assert sq.re.contains(Fraction(0)) and sq.im.contains(Fraction(1))
    # both coordinates positive and nearly equal: the root is exp(i pi/4)
    assert e.re.lo > 0 and e.im.lo > 0
    assert e.re.intersects(e.im)
    # the enclosure contains one root only
    assert not e.intersects(-e)


def test_sqrt_squares_back():
    for re, im in [(3, 4), (-5, 12), (0, 1), (7, 0), (-9, 0), (2, -3)]:
        x = Rectangle.point(re, im)
        e = sqrt_enclosure(x, bits=96)
        sq = e * e
        assert sq.re.contains(Fraction(re)) and sq.im.contains(Fraction(im))
        # argument in [0, pi): never strictly below the real axis
        assert e.im.hi >= 0


def test_wide_real_straddle_rejected():
    wide = Rectangle(Interval(Fraction(-1), Fraction(1)), Interval.point(0))
    with pytest.raises(BranchError):
        sqrt_enclosure(wide, bits=32)


def test_round_out_monotone():
    x = Rectangle(
        Interval(Fraction(1, 3), Fraction(2, 3)), Interval(Fraction(-1, 7), Fraction(1, 7))
    )
    r = x.round_out(20)
    assert x.is_subset(r)
    assert r.re.lo.denominator <= 1 << 20
