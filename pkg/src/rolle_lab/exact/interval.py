"""Closed intervals and boxes with rational endpoints, and the natural interval extension."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .multipoly import MultiPoly
from .scalars import fraction_to_str, to_fraction
from .unipoly import UniPoly


def _floor_dyadic(q: Fraction, bits: int) -> Fraction:
    scale = 1 << bits
    return Fraction(math.floor(q * scale), scale)


def _ceil_dyadic(q: Fraction, bits: int) -> Fraction:
    scale = 1 << bits
    return Fraction(math.ceil(q * scale), scale)


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "lo", to_fraction(self.lo))
        object.__setattr__(self, "hi", to_fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x) -> "Interval":
        x = to_fraction(x)
        return cls(x, x)

    @classmethod
    def hull_of(cls, values: Iterable) -> "Interval":
        vals = [to_fraction(v) for v in values]
        return cls(min(vals), max(vals))

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def rad(self) -> Fraction:
        return (self.hi - self.lo) / 2

    def magnitude(self) -> Fraction:
        """``max |x|`` over the interval."""
        return max(abs(self.lo), abs(self.hi))

    def mignitude(self) -> Fraction:
        """``min |x|`` over the interval."""
        if self.lo <= 0 <= self.hi:
            return Fraction(0)
        return min(abs(self.lo), abs(self.hi))

    def contains(self, x) -> bool:
        if isinstance(x, Interval):
            return self.lo <= x.lo and x.hi <= self.hi
        if isinstance(x, float):
            return float(self.lo) <= x <= float(self.hi)
        return self.lo <= to_fraction(x) <= self.hi

    __contains__ = contains

    def hull(self, other: "Interval") -> "Interval":
        return Interval(min(self.lo, other.lo), max(self.hi, other.hi))

    def widen(self, r) -> "Interval":
        r = to_fraction(r)
        return Interval(self.lo - r, self.hi + r)

    def round_out(self, bits: int = 40) -> "Interval":
        """Enlarge to dyadic endpoints with denominator ``2**bits`` (keeps sizes bounded)."""
        return Interval(_floor_dyadic(self.lo, bits), _ceil_dyadic(self.hi, bits))

    # -- arithmetic ---------------------------------------------------
    @staticmethod
    def _c(x) -> "Interval":
        return x if isinstance(x, Interval) else Interval.point(x)

    def __add__(self, other):
        o = self._c(other)
        return Interval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other):
        o = self._c(other)
        return Interval(self.lo - o.hi, self.hi - o.lo)

    def __rsub__(self, other):
        return self._c(other) - self

    def __mul__(self, other):
        o = self._c(other)
        ps = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Interval(min(ps), max(ps))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Interval":
        if k < 0:
            raise ValueError("negative interval power")
        if k == 0:
            return Interval.point(1)
        a, b = self.lo ** k, self.hi ** k
        if k % 2 == 1:
            return Interval(a, b)
        # even power: tight, nonnegative
        if self.lo >= 0:
            return Interval(a, b)
        if self.hi <= 0:
            return Interval(b, a)
        return Interval(Fraction(0), max(a, b))

    def __repr__(self) -> str:
        return f"[{fraction_to_str(self.lo)}, {fraction_to_str(self.hi)}]"


class IntervalBox(tuple):
    """Tuple of :class:`Interval`, one per coordinate."""

    def __new__(cls, intervals: Iterable):
        items = [iv if isinstance(iv, Interval) else Interval(*iv) for iv in intervals]
        return super().__new__(cls, items)

    @classmethod
    def around(cls, center: Sequence, radius) -> "IntervalBox":
        r = to_fraction(radius)
        return cls(Interval(to_fraction(c) - r, to_fraction(c) + r) for c in center)

    @property
    def dimension(self) -> int:
        return len(self)

    def contains(self, point: Sequence) -> bool:
        return len(point) == len(self) and all(iv.contains(x) for iv, x in zip(self, point))

    def contains_box(self, other: "IntervalBox") -> bool:
        return all(a.contains(b) for a, b in zip(self, other))

    def hull(self, other: "IntervalBox") -> "IntervalBox":
        return IntervalBox(a.hull(b) for a, b in zip(self, other))

    def widen(self, r) -> "IntervalBox":
        return IntervalBox(iv.widen(r) for iv in self)

    def round_out(self, bits: int = 40) -> "IntervalBox":
        return IntervalBox(iv.round_out(bits) for iv in self)

    def __repr__(self) -> str:
        return "IntervalBox(" + " x ".join(repr(iv) for iv in self) + ")"


def interval_eval(p, box) -> Interval:
    """Natural interval extension of ``p`` (MultiPoly or UniPoly) over ``box``.

    Even powers are evaluated tightly; the result always contains the true range.
    """
    if isinstance(p, UniPoly):
        iv = box if isinstance(box, Interval) else box[0]
        if not p.is_real:
            raise ValueError("interval extension needs real coefficients")
        total = Interval.point(0)
        for k, c in enumerate(p.coeffs):
            if c:
                total = total + (iv ** k) * c
        return total
    if not isinstance(box, IntervalBox):
        box = IntervalBox(box)
    if len(box) != p.nvars:
        raise ValueError(f"box dimension {len(box)} does not match {p.nvars} variables")
    total = Interval.point(0)
    powers: dict[tuple[int, int], Interval] = {}
    for alpha, c in p.terms.items():
        term = Interval.point(c)
        for i, e in enumerate(alpha):
            if e:
                key = (i, e)
                if key not in powers:
                    powers[key] = box[i] ** e
                term = term * powers[key]
        total = total + term
    return total


def interval_eval_vector(components: Sequence[MultiPoly], box: IntervalBox) -> IntervalBox:
    return IntervalBox(interval_eval(c, box) for c in components)
