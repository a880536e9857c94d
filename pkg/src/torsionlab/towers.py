"""Exact iterated square-root extensions of Q with certified branch choices.

A tower is an ordered list of adjunction steps, each adjoining a square root
of an element of the tower built so far.  Elements are coordinate vectors
over the multiplicative basis of radical products: a sparse mapping from
subsets of step indices to rational coefficients.  Every step is proper (its
radicand is certified not to be a square already, via the recursive square
detector), so the tower is a field of degree 2^(number of steps); adjunction
requests whose radicand is already a square return the existing root instead
of creating a step, with the sign pinned against the certified enclosure of
the branch-policy root.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Iterable, Sequence

from .errors import BranchError, StructuralError
from .intervals import MAX_REFINE_ROUNDS, Rectangle, sqrt_enclosure

Coeffs = dict[frozenset[int], Fraction]


def _norm(coeffs: Coeffs) -> Coeffs:
    return {s: c for s, c in coeffs.items() if c != 0}


def _key(coeffs: Coeffs) -> tuple:
    return tuple(sorted((tuple(sorted(s)), c) for s, c in coeffs.items()))


def _rational_sqrt(c: Fraction) -> Fraction | None:
    if c < 0:
        return None
    pn, qn = isqrt(c.numerator), isqrt(c.denominator)
    if pn * pn == c.numerator and qn * qn == c.denominator:
        return Fraction(pn, qn)
    return None


@dataclass
class Step:
    """One proper quadratic adjunction, with a certified root enclosure."""

    index: int
    label: str
    radicand: Coeffs
    enclosure: Rectangle
    bits: int


@dataclass
class Adjunction:
    """Log entry: a requested square root, proper (degree 2) or derived (degree 1)."""

    label: str
    degree: int
    step_index: int | None
    root: "TowerElement"
    radicand: "TowerElement"


class Tower:
    """A field Q(r_0, ..., r_(k-1)) with r_s^2 an element of the lower tower."""

    def __init__(self, precision_bits: int = 64):
        self.steps: list[Step] = []
        self.adjunctions: list[Adjunction] = []
        self.named: dict[str, TowerElement] = {}
        self.precision_bits = precision_bits
        self._sqrt_memo: dict[tuple[int, tuple], Coeffs | None] = {}
        self._xprod_memo: dict[frozenset[int], Coeffs] = {}

    # -- element constructors ------------------------------------------------

    def zero(self) -> TowerElement:
        return TowerElement(self, {})

    def one(self) -> TowerElement:
        return self.rational(1)

    def rational(self, q: Fraction | int) -> TowerElement:
        q = Fraction(q)
        return TowerElement(self, {frozenset(): q} if q else {})

    def root(self, index: int) -> TowerElement:
        if not 0 <= index < len(self.steps):
            raise StructuralError(f"no step {index}")
        return TowerElement(self, {frozenset({index}): Fraction(1)})

    @property
    def degree(self) -> int:
        return 1 << len(self.steps)

    def degree_over(self, nsteps: int) -> int:
        return 1 << (len(self.steps) - nsteps)

    # -- raw arithmetic on coefficient dicts ----------------------------------

    def _radicand_product(self, common: frozenset[int]) -> Coeffs:
        if not common:
            return {frozenset(): Fraction(1)}
        cached = self._xprod_memo.get(common)
        if cached is None:
            s = max(common)
            rest = self._radicand_product(common - {s})
            cached = self._mul(rest, self.steps[s].radicand)
            self._xprod_memo[common] = cached
        return cached

    def _mul(self, a: Coeffs, b: Coeffs) -> Coeffs:
        out: Coeffs = {}
        for s1, c1 in a.items():
            for s2, c2 in b.items():
                common = s1 & s2
                sym = s1 ^ s2
                c = c1 * c2
                if not common:
                    out[sym] = out.get(sym, Fraction(0)) + c
                    continue
                term = self._mul(
                    {sym: c}, self._radicand_product(frozenset(common))
                )
                for s, cc in term.items():
                    out[s] = out.get(s, Fraction(0)) + cc
        return _norm(out)

    @staticmethod
    def _add(a: Coeffs, b: Coeffs) -> Coeffs:
        out = dict(a)
        for s, c in b.items():
            out[s] = out.get(s, Fraction(0)) + c
        return _norm(out)

    @staticmethod
    def _scale(a: Coeffs, c: Fraction) -> Coeffs:
        if c == 0:
            return {}
        return {s: cc * c for s, cc in a.items()}

    @staticmethod
    def _split(a: Coeffs, s: int) -> tuple[Coeffs, Coeffs]:
        """a = low + high * r_s with both parts free of r_s."""
        low: Coeffs = {}
        high: Coeffs = {}
        for sup, c in a.items():
            if s in sup:
                high[sup - {s}] = c
            else:
                low[sup] = c
        return low, high

    def _level_of(self, a: Coeffs) -> int:
        level = 0
        for sup in a:
            if sup:
                level = max(level, max(sup) + 1)
        return level

    def _inv(self, a: Coeffs, level: int | None = None) -> Coeffs:
        if not a:
            raise ZeroDivisionError("inverting zero in the tower")
        if level is None:
            level = self._level_of(a)
        if level == 0:
            return {frozenset(): 1 / a[frozenset()]}
        s = level - 1
        low, high = self._split(a, s)
        if not high:
            return self._inv(low, s)
        # 1/(a0 + a1 r) = (a0 - a1 r) / (a0^2 - a1^2 x_s)
        conj = self._add(low, self._scale({sup | {s}: c for sup, c in high.items()}, Fraction(-1)))
        norm = self._add(
            self._mul(low, low),
            self._scale(self._mul(self._mul(high, high), self.steps[s].radicand), Fraction(-1)),
        )
        return self._mul(conj, self._inv(norm, s))

    def _sqrt(self, a: Coeffs, level: int) -> Coeffs | None:
        """Some y with y^2 = a inside the subtower on steps[0:level], or None."""
        if not a:
            return {}
        memo_key = (level, _key(a))
        if memo_key in self._sqrt_memo:
            return self._sqrt_memo[memo_key]
        result = self._sqrt_impl(a, level)
        if result is not None:
            assert self._mul(result, result) == a
        self._sqrt_memo[memo_key] = result
        return result

    def _sqrt_impl(self, a: Coeffs, level: int) -> Coeffs | None:
        if level == 0:
            c = a.get(frozenset())
            if c is None:
                return None
            r = _rational_sqrt(c)
            return None if r is None else {frozenset(): r}
        s = level - 1
        low, high = self._split(a, s)
        if not high:
            root = self._sqrt(low, s)
            if root is not None:
                return root
            # a = (c r_s)^2 needs a / x_s to be a square below
            quotient = self._mul(low, self._inv(self.steps[s].radicand))
            if self._level_of(quotient) <= s:
                root = self._sqrt(quotient, s)
                if root is not None:
                    return {sup | {s}: c for sup, c in root.items()}
            return None
        # y = c + d r_s: c^2 = (low +- n)/2 with n^2 = low^2 - high^2 x_s
        norm = self._add(
            self._mul(low, low),
            self._scale(self._mul(self._mul(high, high), self.steps[s].radicand), Fraction(-1)),
        )
        if self._level_of(norm) > s:
            return None
        n = self._sqrt(norm, s)
        if n is None:
            return None
        for signed in (n, self._scale(n, Fraction(-1))):
            half = self._scale(self._add(low, signed), Fraction(1, 2))
            if not half:
                continue
            c = self._sqrt(half, s)
            if c is None or not c:
                continue
            d = self._mul(self._scale(high, Fraction(1, 2)), self._inv(c, s))
            y = self._add(c, {sup | {s}: cc for sup, cc in d.items()})
            if self._mul(y, y) == a:
                return y
        return None

    # -- enclosures ------------------------------------------------------------

    def _step_enclosure(self, index: int, bits: int) -> Rectangle:
        step = self.steps[index]
        if bits <= step.bits:
            return step.enclosure
        radicand = self._enclosure(step.radicand, bits)
        refined = sqrt_enclosure(radicand, bits)
        if refined.intersects(step.enclosure):
            refined = refined.intersect(step.enclosure)
        else:
            refined = -refined
            if not refined.intersects(step.enclosure):
                raise BranchError(f"refinement lost the branch of step {step.label}")
            refined = refined.intersect(step.enclosure)
        step.enclosure = refined
        step.bits = bits
        return refined

    def _enclosure(self, a: Coeffs, bits: int) -> Rectangle:
        total = Rectangle.point(0)
        for sup, c in a.items():
            term = Rectangle.point(c)
            for s in sup:
                term = term * self._step_enclosure(s, bits)
            total = total + term
        return total.round_out(4 * bits)

    # -- adjunction --------------------------------------------------------------

    def sqrt(self, x: TowerElement) -> TowerElement | None:
        """A square root of x in the tower if one exists; sign not specified."""
        self._check(x)
        root = self._sqrt(x.coeffs, len(self.steps))
        return None if root is None else TowerElement(self, root)

    def principal_sqrt(self, x: TowerElement) -> TowerElement | None:
        """The in-tower square root on the branch-policy side, if it exists."""
        y = self.sqrt(x)
        if y is None or y.is_zero():
            return y
        return self._match_branch(y, x)

    def _match_branch(self, y: TowerElement, x: TowerElement) -> TowerElement:
        bits = self.precision_bits
        for _ in range(MAX_REFINE_ROUNDS):
            target = sqrt_enclosure(self._enclosure(x.coeffs, bits), bits)
            ey = self._enclosure(y.coeffs, bits)
            pos = ey.intersects(target)
            neg = (-ey).intersects(target)
            if pos and not neg:
                return y
            if neg and not pos:
                return -y
            bits *= 2
        raise BranchError("could not separate the two square roots numerically")

    def adjoin_sqrt(self, x: TowerElement | Fraction | int, label: str) -> TowerElement:
        """Adjoin a square root of x on the branch-policy side.

        Returns the existing root (degree-1 adjunction, logged with its
        witness) when x is already a square; otherwise appends a proper step
        with a certified enclosure.
        """
        if not isinstance(x, TowerElement):
            x = self.rational(Fraction(x))
        self._check(x)
        if x.is_zero():
            raise StructuralError(f"adjunction {label}: radicand is zero")
        existing = self.principal_sqrt(x)
        if existing is not None:
            record = Adjunction(label, 1, None, existing, x)
        else:
            bits = self.precision_bits
            enclosure = sqrt_enclosure(self._enclosure(x.coeffs, bits), bits)
            step = Step(len(self.steps), label, dict(x.coeffs), enclosure, bits)
            self.steps.append(step)
            record = Adjunction(label, 2, step.index, self.root(step.index), x)
        self.adjunctions.append(record)
        self.named[label] = record.root
        return record.root

    def _check(self, x: TowerElement) -> None:
        if x.tower is not self:
            raise StructuralError("element belongs to a different tower")

    # -- membership ---------------------------------------------------------------

    def in_prefix(self, x: TowerElement, nsteps: int) -> bool:
        """Whether x lies in the subtower generated by the first nsteps steps."""
        self._check(x)
        return all(max(sup, default=-1) < nsteps for sup in x.coeffs)

    def nsteps(self) -> int:
        return len(self.steps)


class TowerElement:
    """An element of a Tower: sparse rational coordinates over radical products."""

    __slots__ = ("tower", "coeffs")

    def __init__(self, tower: Tower, coeffs: Coeffs):
        self.tower = tower
        self.coeffs = _norm(coeffs)

    def _coerce(self, other) -> TowerElement:
        if isinstance(other, TowerElement):
            if other.tower is not self.tower:
                raise StructuralError("elements of different towers")
            return other
        return self.tower.rational(Fraction(other))

    def __add__(self, other) -> TowerElement:
        other = self._coerce(other)
        return TowerElement(self.tower, Tower._add(self.coeffs, other.coeffs))

    __radd__ = __add__

    def __neg__(self) -> TowerElement:
        return TowerElement(self.tower, Tower._scale(self.coeffs, Fraction(-1)))

    def __sub__(self, other) -> TowerElement:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> TowerElement:
        return self._coerce(other) - self

    def __mul__(self, other) -> TowerElement:
        other = self._coerce(other)
        return TowerElement(self.tower, self.tower._mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __truediv__(self, other) -> TowerElement:
        other = self._coerce(other)
        return self * TowerElement(self.tower, self.tower._inv(other.coeffs))

    def __rtruediv__(self, other) -> TowerElement:
        return self._coerce(other) / self

    def __pow__(self, n: int) -> TowerElement:
        if n < 0:
            return (self.tower.one() / self) ** (-n)
        out = self.tower.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.tower.rational(other)
        return isinstance(other, TowerElement) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(_key(self.coeffs))

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_rational(self) -> bool:
        return all(not sup for sup in self.coeffs)

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise StructuralError("element is not rational")
        return self.coeffs.get(frozenset(), Fraction(0))

    def enclosure(self, bits: int | None = None) -> Rectangle:
        return self.tower._enclosure(self.coeffs, bits or self.tower.precision_bits)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "TowerElement(0)"
        parts = []
        for sup, c in sorted(self.coeffs.items(), key=lambda kv: sorted(kv[0])):
            mono = "*".join(f"r{s}" for s in sorted(sup)) or "1"
            parts.append(f"{c}*{mono}")
        return "TowerElement(" + " + ".join(parts) + ")"


# -- linear algebra over the monomial basis -------------------------------------


@dataclass(frozen=True)
class MembershipResult:
    """Outcome of a subtower membership query, with its certificate."""

    member: bool
    certificate: dict | None


def tower_membership(
    tower: Tower,
    x: TowerElement,
    subtower_steps: int | None = None,
    generators: Sequence[TowerElement] | None = None,
) -> MembershipResult:
    """Decide membership of x in a designated subfield, with a certificate.

    With ``subtower_steps`` the subfield is the prefix tower on that many
    steps and the certificate is the coordinate support; with ``generators``
    it is the subfield they generate and the certificate is the coordinate
    vector over its echelonized basis (or the basis pivots of the failed
    solve).
    """
    tower._check(x)
    if (subtower_steps is None) == (generators is None):
        raise StructuralError("specify exactly one of subtower_steps or generators")
    if subtower_steps is not None:
        member = tower.in_prefix(x, subtower_steps)
        support = sorted(sorted(s) for s in x.coeffs)
        return MembershipResult(member, {"support": support, "prefix": subtower_steps})
    basis = subfield_span(list(generators), cap_dim=tower.degree)
    coords = in_span(x, basis)
    if coords is None:
        pivots = [sorted(min(b.coeffs, key=lambda s: tuple(sorted(s)))) for b in basis]
        return MembershipResult(False, {"failed_system_pivots": pivots, "dimension": len(basis)})
    return MembershipResult(True, {"coordinates": coords})


def span_basis(elements: Iterable[TowerElement]) -> list[TowerElement]:
    """Echelonized Q-basis of the span of the given elements."""
    basis: list[tuple[frozenset[int], TowerElement]] = []
    for x in elements:
        x = _reduce_against(x, basis)
        if not x.is_zero():
            pivot = min(x.coeffs, key=lambda s: tuple(sorted(s)))
            x = x * (1 / x.coeffs[pivot])
            basis.append((pivot, x))
            basis.sort(key=lambda kv: tuple(sorted(kv[0])))
    return [x for _, x in basis]


def _reduce_against(
    x: TowerElement, basis: list[tuple[frozenset[int], TowerElement]]
) -> TowerElement:
    for pivot, b in basis:
        c = x.coeffs.get(pivot)
        if c:
            x = x - b * c
    return x


def in_span(x: TowerElement, basis: Sequence[TowerElement]) -> list[Fraction] | None:
    """Coordinates of x in the given echelonized basis, or None."""
    coords: list[Fraction] = []
    rem = x
    for b in basis:
        pivot = min(b.coeffs, key=lambda s: tuple(sorted(s)))
        c = rem.coeffs.get(pivot, Fraction(0))
        coords.append(c)
        if c:
            rem = rem - b * c
    return coords if rem.is_zero() else None


def subfield_span(generators: Sequence[TowerElement], cap_dim: int = 256) -> list[TowerElement]:
    """Q-basis of the subfield generated by the elements, by multiplicative closure."""
    if not generators:
        raise StructuralError("need at least one generator")
    tower = generators[0].tower
    basis = span_basis([tower.one(), *generators])
    while True:
        extended = list(basis)
        for b in basis:
            for g in generators:
                extended.append(b * g)
        new_basis = span_basis(extended)
        if len(new_basis) > cap_dim:
            raise StructuralError("subfield span exceeded the dimension cap")
        if len(new_basis) == len(basis):
            return new_basis
        basis = new_basis


# -- sign characters --------------------------------------------------------------


@dataclass
class SignCharacter:
    """Map from tower steps to +-1, extended linearly to elements."""

    tower: Tower
    signs: dict[int, int] = field(default_factory=dict)

    def sign(self, index: int) -> int:
        return self.signs.get(index, 1)

    def apply(self, x: TowerElement) -> TowerElement:
        out: Coeffs = {}
        for sup, c in x.coeffs.items():
            s = 1
            for idx in sup:
                s *= self.sign(idx)
            out[sup] = c * s
        return TowerElement(self.tower, out)

    def is_automorphism(self) -> bool:
        """The character extends to a field automorphism iff it fixes every radicand."""
        for step in self.tower.steps:
            radicand = TowerElement(self.tower, step.radicand)
            if self.apply(radicand) != radicand:
                return False
        return True
