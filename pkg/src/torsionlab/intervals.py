"""Certified complex rectangle arithmetic with exact rational endpoints.

Rectangles [re_lo, re_hi] x [im_lo, im_hi] with Fraction endpoints enclose
exact algebraic points.  All operations round outward, so enclosure is
preserved; endpoints are rounded to dyadic rationals to keep denominators
bounded.  Square roots are certified by a Krawczyk containment test for
z^2 - x, which guarantees the rectangle isolates one root of the true value.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import BranchError

MAX_REFINE_ROUNDS = 10


def _floor_dyadic(x: Fraction, bits: int) -> Fraction:
    scale = 1 << bits
    return Fraction((x.numerator * scale) // x.denominator, scale)


def _ceil_dyadic(x: Fraction, bits: int) -> Fraction:
    scale = 1 << bits
    return Fraction(-((-x.numerator * scale) // x.denominator), scale)


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        assert self.lo <= self.hi

    @classmethod
    def point(cls, x: Fraction | int) -> Interval:
        x = Fraction(x)
        return cls(x, x)

    def round_out(self, bits: int) -> Interval:
        return Interval(_floor_dyadic(self.lo, bits), _ceil_dyadic(self.hi, bits))

    def __add__(self, other: Interval) -> Interval:
        return Interval(self.lo + other.lo, self.hi + other.hi)

    def __sub__(self, other: Interval) -> Interval:
        return Interval(self.lo - other.hi, self.hi - other.lo)

    def __neg__(self) -> Interval:
        return Interval(-self.hi, -self.lo)

    def __mul__(self, other: Interval) -> Interval:
        products = [
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        ]
        return Interval(min(products), max(products))

    def reciprocal(self) -> Interval:
        if self.contains_zero():
            raise ZeroDivisionError("interval contains zero")
        return Interval(1 / self.hi, 1 / self.lo)

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def contains(self, x: Fraction) -> bool:
        return self.lo <= x <= self.hi

    def is_subset(self, other: Interval, strict: bool = False) -> bool:
        if strict:
            return other.lo < self.lo and self.hi < other.hi
        return other.lo <= self.lo and self.hi <= other.hi

    def intersects(self, other: Interval) -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def intersect(self, other: Interval) -> Interval:
        return Interval(max(self.lo, other.lo), min(self.hi, other.hi))

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def sqrt_nonnegative(self, bits: int) -> Interval:
        """Enclosure of the nonnegative square root; requires lo >= 0."""
        assert self.lo >= 0
        scale = 1 << bits
        lo_n = (self.lo.numerator * scale * scale) // self.lo.denominator
        hi_n = -((-self.hi.numerator * scale * scale) // self.hi.denominator)
        lo = Fraction(isqrt(lo_n), scale)
        hi = Fraction(isqrt(hi_n) + 1, scale)
        return Interval(lo, hi)


@dataclass(frozen=True)
class Rectangle:
    re: Interval
    im: Interval

    @classmethod
    def point(cls, re: Fraction | int, im: Fraction | int = 0) -> Rectangle:
        return cls(Interval.point(re), Interval.point(im))

    @classmethod
    def from_complex(cls, z: complex, slack: Fraction) -> Rectangle:
        re = Fraction(z.real)
        im = Fraction(z.imag)
        return cls(Interval(re - slack, re + slack), Interval(im - slack, im + slack))

    def round_out(self, bits: int) -> Rectangle:
        return Rectangle(self.re.round_out(bits), self.im.round_out(bits))

    def __add__(self, other: Rectangle) -> Rectangle:
        return Rectangle(self.re + other.re, self.im + other.im)

    def __sub__(self, other: Rectangle) -> Rectangle:
        return Rectangle(self.re - other.re, self.im - other.im)

    def __neg__(self) -> Rectangle:
        return Rectangle(-self.re, -self.im)

    def __mul__(self, other: Rectangle) -> Rectangle:
        return Rectangle(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def scale(self, c: Fraction | int) -> Rectangle:
        ci = Interval.point(c)
        return Rectangle(self.re * ci, self.im * ci)

    def reciprocal(self) -> Rectangle:
        norm = self.re * self.re + self.im * self.im
        inv_norm = norm.reciprocal()
        return Rectangle(self.re * inv_norm, (-self.im) * inv_norm)

    def __truediv__(self, other: Rectangle) -> Rectangle:
        return self * other.reciprocal()

    def contains_zero(self) -> bool:
        return self.re.contains_zero() and self.im.contains_zero()

    def is_subset(self, other: Rectangle, strict: bool = False) -> bool:
        return self.re.is_subset(other.re, strict) and self.im.is_subset(other.im, strict)

    def intersects(self, other: Rectangle) -> bool:
        return self.re.intersects(other.re) and self.im.intersects(other.im)

    def intersect(self, other: Rectangle) -> Rectangle:
        return Rectangle(self.re.intersect(other.re), self.im.intersect(other.im))

    @property
    def mid(self) -> complex:
        return complex(float(self.re.mid), float(self.im.mid))

    @property
    def width(self) -> Fraction:
        return max(self.re.width, self.im.width)

    def is_real(self) -> bool:
        return self.im.lo == 0 and self.im.hi == 0

    def midpoint_rectangle(self) -> Rectangle:
        return Rectangle.point(self.re.mid, self.im.mid)


def _principal_seed(z: complex) -> complex:
    c = cmath.sqrt(z)
    if c.imag < 0 or (c.imag == 0 and c.real < 0):
        c = -c
    return c


def _krawczyk_sqrt(x: Rectangle, seed: complex, bits: int) -> Rectangle | None:
    """Certified enclosure of the root of z^2 = x near the seed, or None.

    Krawczyk test: with midpoint m, Y = 1/(2m), K = m - Y(m^2 - x) +
    (1 - 2 Y R)(R - m); K strictly inside R certifies a unique root in R.
    """
    slack = Fraction(1, 1 << max(8, bits // 4))
    if seed == 0:
        return None
    for attempt in range(MAX_REFINE_ROUNDS):
        r = Rectangle.from_complex(seed, slack)
        m = r.midpoint_rectangle()
        y = m.scale(2).reciprocal()
        one = Rectangle.point(1)
        k = m - y * (m * m - x) + (one - y * r.scale(2)) * (r - m)
        k = k.round_out(4 * bits)
        if k.is_subset(r, strict=True) and not r.contains_zero():
            tight = k
            for _ in range(3):
                m = tight.midpoint_rectangle()
                y = m.scale(2).reciprocal()
                nxt = (m - y * (m * m - x) + (one - y * tight.scale(2)) * (tight - m)).round_out(4 * bits)
                if not nxt.is_subset(tight):
                    break
                tight = nxt.intersect(tight)
            return tight
        slack *= 4
    return None


def sqrt_enclosure(x: Rectangle, bits: int = 64) -> Rectangle:
    """Certified enclosure of the branch-policy square root of the point in x.

    Policy: the positive real root of positive reals; otherwise the root with
    argument in [0, pi).  Raises BranchError when the rectangle is too wide
    to pin the branch.
    """
    if x.contains_zero() and x.width == 0:
        return Rectangle.point(0)
    if x.is_real():
        if x.re.lo >= 0:
            return Rectangle(x.re.sqrt_nonnegative(bits), Interval.point(0))
        if x.re.hi <= 0:
            return Rectangle(Interval.point(0), (-x.re).sqrt_nonnegative(bits))
        raise BranchError("real radicand enclosure straddles zero")
    seed = _principal_seed(x.mid)
    enclosure = _krawczyk_sqrt(x, seed, bits)
    if enclosure is None:
        raise BranchError("could not certify a square-root enclosure")
    if enclosure.intersects(-enclosure):
        raise BranchError("enclosure does not separate the two roots")
    # branch policy: argument in [0, pi)
    if enclosure.im.lo >= 0:
        return enclosure
    if enclosure.im.contains_zero() and enclosure.re.lo > 0:
        return enclosure
    if enclosure.im.hi <= 0 or (enclosure.im.contains_zero() and enclosure.re.hi < 0):
        return -enclosure
    raise BranchError("branch of the square root is not pinned by the enclosure")
