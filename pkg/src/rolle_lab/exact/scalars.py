"""Exact scalars: rationals, Gaussian rationals and rational enclosures of constants."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Union

ExactScalar = Fraction

# 333/106 < pi < 355/113
PI_LOWER = Fraction(333, 106)
PI_UPPER = Fraction(355, 113)

_RATIONAL_RE = re.compile(r"^\s*[+-]?(\d+(\.\d*)?|\.\d+)(/[+-]?\d+)?\s*$")


def to_fraction(value: object) -> Fraction:
    """Coerce ``value`` to an exact :class:`Fraction`.

    Strings may be integers, decimals (``"0.25"``) or quotients (``"3/7"``).
    Floats are refused: a float literal has already lost the intended value.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rational literals")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        if not _RATIONAL_RE.match(value):
            raise ValueError(f"not a rational literal: {value!r}")
        return Fraction(value.strip())
    if isinstance(value, float):
        raise TypeError(f"floating literal {value!r} rejected; pass a decimal string")
    raise TypeError(f"cannot interpret {type(value).__name__} as a rational")


def fraction_to_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def sign(q) -> int:
    return (q > 0) - (q < 0)


def sqrt_bounds(q: Fraction, bits: int = 64) -> tuple[Fraction, Fraction]:
    """Rational ``(lo, hi)`` with ``lo <= sqrt(q) <= hi`` and ``hi - lo <= 2**-bits``."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("square root of a negative rational")
    scale = 1 << bits
    # floor(sqrt(q) * scale) computed on integers
    num = q.numerator * scale * scale
    s = math.isqrt(num // q.denominator)
    lo = Fraction(s, scale)
    while lo * lo > q:
        s -= 1
        lo = Fraction(s, scale)
    hi = Fraction(s + 1, scale)
    if lo * lo == q:
        hi = lo
    return lo, hi


def sqrt_upper(q: Fraction, bits: int = 64) -> Fraction:
    return sqrt_bounds(q, bits)[1]


def sqrt_lower(q: Fraction, bits: int = 64) -> Fraction:
    return sqrt_bounds(q, bits)[0]


@dataclass(frozen=True, slots=True)
class ComplexRational:
    """Gaussian rational ``re + i*im`` with exact :class:`Fraction` parts."""

    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @staticmethod
    def coerce(x: "Scalar") -> "ComplexRational":
        if isinstance(x, ComplexRational):
            return x
        if isinstance(x, complex):
            raise TypeError("floating complex values are not exact")
        return ComplexRational(to_fraction(x), Fraction(0))

    def __add__(self, other):
        try:
            o = ComplexRational.coerce(other)
        except TypeError:
            return NotImplemented
        return ComplexRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return ComplexRational(-self.re, -self.im)

    def __sub__(self, other):
        try:
            o = ComplexRational.coerce(other)
        except TypeError:
            return NotImplemented
        return ComplexRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = ComplexRational.coerce(other)
        except TypeError:
            return NotImplemented
        return ComplexRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = ComplexRational.coerce(other)
        d = o.abs2()
        if d == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        n = self * o.conjugate()
        return ComplexRational(n.re / d, n.im / d)

    def __rtruediv__(self, other):
        return ComplexRational.coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return ComplexRational(1) / (self ** (-k))
        out = ComplexRational(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        try:
            o = ComplexRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self) -> int:
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def conjugate(self) -> "ComplexRational":
        return ComplexRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def abs_upper(self) -> Fraction:
        """A rational upper bound on the modulus."""
        if self.im == 0:
            return abs(self.re)
        if self.re == 0:
            return abs(self.im)
        return sqrt_upper(self.abs2(), 48)

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def __repr__(self) -> str:
        if self.im == 0:
            return fraction_to_str(self.re)
        return f"({fraction_to_str(self.re)}{'+' if self.im >= 0 else '-'}{fraction_to_str(abs(self.im))}i)"


I = ComplexRational(0, 1)

Scalar = Union[int, Fraction, ComplexRational]


def coerce_scalar(x: object) -> Union[Fraction, ComplexRational]:
    """Exact field element: Fractions stay Fractions, Gaussian values with zero imaginary part collapse."""
    if isinstance(x, ComplexRational):
        return x.re if x.im == 0 else x
    return to_fraction(x)


def parse_complex_rational(text: str) -> Union[Fraction, ComplexRational]:
    """Parse ``"a"``, ``"a+bi"``, ``"bi"`` or ``"a-b*i"`` with rational parts."""
    s = text.replace(" ", "").replace("*i", "i").replace("j", "i")
    if not s.endswith("i"):
        return to_fraction(s)
    body = s[:-1]
    # split at the last sign that is not an exponent or leading sign
    cut = max(body.rfind("+", 1), body.rfind("-", 1))
    if cut <= 0:
        im = body if body not in ("", "+", "-") else body + "1"
        return coerce_scalar(ComplexRational(0, to_fraction(im)))
    re_part, im_part = body[:cut], body[cut:]
    if im_part in ("+", "-"):
        im_part += "1"
    return coerce_scalar(ComplexRational(to_fraction(re_part), to_fraction(im_part)))


def scalar_to_str(x: Union[Fraction, ComplexRational]) -> str:
    if isinstance(x, ComplexRational):
        if x.im == 0:
            return fraction_to_str(x.re)
        im = fraction_to_str(abs(x.im))
        return f"{fraction_to_str(x.re)}{'+' if x.im > 0 else '-'}{im}i"
    return fraction_to_str(Fraction(x))
