"""Exact univariate polynomials over Q (or Q(i)), Sturm counting and certified suprema."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

import numpy as np

from .scalars import ComplexRational, coerce_scalar, scalar_to_str, sign

Coeff = Union[Fraction, ComplexRational]
Endpoint = Union[Fraction, int, float]  # floats only for +-inf


class UniPoly:
    """Immutable polynomial ``sum c_k t**k`` with exact coefficients stored low-to-high.

    The zero polynomial has degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [coerce_scalar(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    # -- constructors -------------------------------------------------
    @classmethod
    def constant(cls, c) -> "UniPoly":
        return cls([c])

    @classmethod
    def monomial(cls, k: int, c=1) -> "UniPoly":
        return cls([0] * k + [c])

    @classmethod
    def t(cls) -> "UniPoly":
        return cls([0, 1])

    @classmethod
    def from_roots(cls, roots: Iterable, lead=1) -> "UniPoly":
        p = cls([lead])
        for r in roots:
            p = p * cls([-coerce_scalar(r), 1])
        return p

    # -- basic queries ------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Coeff:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    @property
    def is_real(self) -> bool:
        return all(not isinstance(c, ComplexRational) for c in self.coeffs)

    def coefficient(self, k: int) -> Coeff:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def order(self) -> int:
        """Index of the first nonzero coefficient (order of vanishing at 0)."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        raise ValueError("zero polynomial has infinite order")

    # -- arithmetic ---------------------------------------------------
    def _coerce(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        return UniPoly([other])

    def __add__(self, other):
        o = self._coerce(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return UniPoly(self.coefficient(k) + o.coefficient(k) for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            c = coerce_scalar(other)
            return UniPoly(c * a for a in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "UniPoly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out, base = UniPoly([1]), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __divmod__(self, other: "UniPoly"):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UniPoly(), self
        quot = [Fraction(0)] * (dq + 1)
        lead = other.lc
        for i in range(dq, -1, -1):
            c = rem[i + other.degree] / lead
            quot[i] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[i + j] = rem[i + j] - c * b
        return UniPoly(quot), UniPoly(rem[: other.degree])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "UniPoly") -> "UniPoly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("division is not exact")
        return q

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        try:
            return self.coeffs == UniPoly([other]).coeffs
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    # -- calculus -----------------------------------------------------
    def derivative(self, k: int = 1) -> "UniPoly":
        p = self
        for _ in range(k):
            p = UniPoly(i * c for i, c in enumerate(p.coeffs) if i > 0)
        return p

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return self * (1 / self.lc) if not isinstance(self.lc, ComplexRational) else UniPoly(
            c / self.lc for c in self.coeffs
        )

    def gcd(self, other: "UniPoly") -> "UniPoly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def compose(self, q: "UniPoly") -> "UniPoly":
        out = UniPoly()
        for c in reversed(self.coeffs):
            out = out * q + c
        return out

    def shift(self, c) -> "UniPoly":
        """Return ``p(t + c)``."""
        return self.compose(UniPoly([c, 1]))

    def scale(self, c) -> "UniPoly":
        """Return ``p(c * t)``."""
        c = coerce_scalar(c)
        out, f = [], coerce_scalar(1)
        for a in self.coeffs:
            out.append(a * f)
            f = f * c
        return UniPoly(out)

    def conjugate(self) -> "UniPoly":
        return UniPoly(c.conjugate() if isinstance(c, ComplexRational) else c for c in self.coeffs)

    def real_part(self) -> "UniPoly":
        return UniPoly(c.re if isinstance(c, ComplexRational) else c for c in self.coeffs)

    def imag_part(self) -> "UniPoly":
        return UniPoly(c.im if isinstance(c, ComplexRational) else 0 for c in self.coeffs)

    def squarefree_decomposition(self) -> list[tuple["UniPoly", int]]:
        """Yun's algorithm: ``p = lc * prod f_i**i`` with squarefree, pairwise coprime ``f_i``."""
        if self.degree < 1:
            return []
        out = []
        a = self.gcd(self.derivative())
        b = self.exact_div(a) if a.degree > 0 else self.monic()
        c = self.derivative().exact_div(a) if a.degree > 0 else self.derivative() * (1 / self.lc)
        d = c - b.derivative()
        i = 1
        while b.degree > 0:
            a = b.gcd(d)
            b = b.exact_div(a)
            c = d.exact_div(a)
            if a.degree > 0:
                out.append((a, i))
            i += 1
            d = c - b.derivative()
        return out

    def squarefree_part(self) -> "UniPoly":
        if self.degree < 1:
            return self.monic()
        g = self.gcd(self.derivative())
        return self.exact_div(g).monic()

    # -- evaluation ---------------------------------------------------
    def __call__(self, x):
        """Horner evaluation; exact for exact arguments, numeric for floats/complex/ndarrays."""
        if isinstance(x, (Fraction, int, ComplexRational)):
            acc = Fraction(0)
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc
        return self.eval_numeric(x)

    def eval_numeric(self, x):
        x = np.asarray(x)
        cs = [complex(c) for c in self.coeffs]
        real = all(v.imag == 0 for v in cs) and not np.iscomplexobj(x)
        acc = np.zeros_like(x, dtype=float if real else complex)
        for c in reversed(cs):
            acc = acc * x + (c.real if real else c)
        return acc

    def sign_at(self, x: Endpoint) -> int:
        """Sign at a rational point or at +-infinity."""
        if isinstance(x, float) and math.isinf(x):
            if self.is_zero():
                return 0
            s = sign(self.lc)
            return s if x > 0 or self.degree % 2 == 0 else -s
        return sign(self(Fraction(x)))

    def __repr__(self) -> str:
        return f"UniPoly({self})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            cs = scalar_to_str(c)
            if k == 0:
                terms.append(cs)
            else:
                mono = "t" if k == 1 else f"t^{k}"
                terms.append(mono if cs == "1" else f"-{mono}" if cs == "-1" else f"({cs})*{mono}" if "i" in cs else f"{cs}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")


# ---------------------------------------------------------------------------
# Sturm machinery
# ---------------------------------------------------------------------------

def _require_real(p: UniPoly) -> None:
    if not p.is_real:
        raise ValueError("real-root routines need real coefficients")


def sturm_sequence(p: UniPoly) -> list[UniPoly]:
    _require_real(p)
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        r = seq[-2] % seq[-1]
        seq.append(-r)
    seq.pop()
    return seq


def _variations(seq: Sequence[UniPoly], x: Endpoint) -> int:
    signs = [s for s in (q.sign_at(x) for q in seq) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _check_interval(a: Endpoint, b: Endpoint) -> None:
    if not a < b:
        raise ValueError("interval needs a < b")


def sturm_root_count(p: UniPoly, a: Endpoint, b: Endpoint, seq: Sequence[UniPoly] | None = None) -> int:
    """Number of distinct real roots of ``p`` in ``(a, b]``; endpoints may be +-inf."""
    if p.is_zero():
        raise ValueError("identically zero polynomial")
    _check_interval(a, b)
    if seq is None:
        seq = sturm_sequence(p)
    return _variations(seq, a) - _variations(seq, b)


def real_root_count(p: UniPoly, a: Endpoint, b: Endpoint) -> int:
    """Distinct roots on the closed interval ``[a, b]`` (the Z functional)."""
    n = sturm_root_count(p, a, b)
    if not (isinstance(a, float) and math.isinf(a)) and p(Fraction(a)) == 0:
        n += 1
    return n


def root_count_with_multiplicity(p: UniPoly, a: Endpoint, b: Endpoint) -> int:
    """Roots on the closed interval ``[a, b]`` counted with multiplicity (the N functional)."""
    if p.is_zero():
        raise ValueError("identically zero polynomial")
    return sum(i * real_root_count(f, a, b) for f, i in p.squarefree_decomposition())


def _finite(x: Endpoint) -> bool:
    return not (isinstance(x, float) and math.isinf(x))


def cauchy_root_bound(p: UniPoly) -> Fraction:
    """All complex roots satisfy ``|z| < 1 + max_k |c_k / c_n|`` (real coefficients)."""
    _require_real(p)
    if p.degree < 1:
        return Fraction(1)
    lc = abs(p.lc)
    return 1 + max(abs(c) for c in p.coeffs[:-1]) / lc


def isolate_real_roots(
    p: UniPoly, a: Endpoint, b: Endpoint, width: Fraction | None = None
) -> list[tuple[Fraction, Fraction]]:
    """Disjoint isolating intervals for the distinct roots of ``p`` on ``[a, b]``.

    Each entry ``(lo, hi)`` contains exactly one root; ``lo == hi`` means the root is
    that rational exactly. Infinite endpoints are clipped at the Cauchy bound.
    """
    if p.is_zero():
        raise ValueError("identically zero polynomial")
    q = p.squarefree_part()
    if q.degree < 1:
        return []
    bound = cauchy_root_bound(q)
    lo = Fraction(a) if _finite(a) else -bound
    hi = Fraction(b) if _finite(b) else bound
    seq = sturm_sequence(q)
    found: list[tuple[Fraction, Fraction]] = []
    if q(lo) == 0:
        found.append((lo, lo))
    stack = [(lo, hi)] if lo < hi else []
    while stack:
        x0, x1 = stack.pop()
        n = sturm_root_count(q, x0, x1, seq)
        if n == 0:
            continue
        if n == 1 and (width is None or x1 - x0 <= width):
            if q(x1) == 0:
                found.append((x1, x1))
            else:
                found.append((x0, x1))
            continue
        mid = (x0 + x1) / 2
        if q(mid) == 0 and n == 1:
            found.append((mid, mid))
            continue
        stack.append((mid, x1))
        stack.append((x0, mid))
    found.sort()
    return found


def refine_root(q: UniPoly, lo: Fraction, hi: Fraction, depth: int) -> tuple[Fraction, Fraction]:
    """Bisect an isolating interval of a squarefree ``q`` ``depth`` times (exact sign tests)."""
    if lo == hi:
        return lo, hi
    s_lo = sign(q(lo))
    if s_lo == 0:
        return lo, lo
    for _ in range(depth):
        mid = (lo + hi) / 2
        s = sign(q(mid))
        if s == 0:
            return mid, mid
        if s == s_lo:
            lo = mid
        else:
            hi = mid
    return lo, hi


def _abs_upper_on(p: UniPoly, lo: Fraction, hi: Fraction) -> Fraction:
    """Upper bound of ``|p|`` on ``[lo, hi]`` via the Taylor form centred at the midpoint."""
    m = (lo + hi) / 2
    r = (hi - lo) / 2
    shifted = p.shift(m)
    total, power = Fraction(0), Fraction(1)
    for c in shifted.coeffs:
        total += abs(c) * power
        power *= r
    return total


def certified_sup(p: UniPoly, a, b, depth: int = 32) -> tuple[Fraction, Fraction]:
    """Rational ``(lo, hi)`` with ``lo <= max_{[a,b]} |p| <= hi``.

    The maximum is attained at an endpoint or at a critical point; critical points are
    isolated by Sturm sequences of ``p'`` and refined by ``depth`` bisections.
    """
    _require_real(p)
    a, b = Fraction(a), Fraction(b)
    if a > b:
        raise ValueError("interval needs a <= b")
    lo = max(abs(p(a)), abs(p(b)))
    hi = lo
    dp = p.derivative()
    if a == b or dp.degree < 1:
        return lo, hi
    q = dp.squarefree_part()
    for x0, x1 in isolate_real_roots(dp, a, b):
        x0, x1 = refine_root(q, x0, x1, depth)
        if x0 == x1:
            v = abs(p(x0))
            lo, hi = max(lo, v), max(hi, v)
        else:
            lo = max(lo, abs(p(x0)), abs(p(x1)))
            hi = max(hi, _abs_upper_on(p, x0, x1))
    return lo, hi


def certified_sup_ratio(num: UniPoly, den: UniPoly, a, b, depth: int = 32) -> tuple[Fraction, Fraction]:
    """Enclosure of ``max_{[a,b]} num/den`` for ``den > 0`` and ``num >= 0`` on ``[a, b]``."""
    a, b = Fraction(a), Fraction(b)
    if den(a) <= 0 or den(b) <= 0:
        raise ValueError("denominator must be positive on the interval")
    lo = max(num(a) / den(a), num(b) / den(b))
    hi = lo
    crit = num.derivative() * den - num * den.derivative()
    if crit.is_zero() or crit.degree < 1:
        return lo, hi
    q = crit.squarefree_part()
    for x0, x1 in isolate_real_roots(crit, a, b):
        x0, x1 = refine_root(q, x0, x1, depth)
        if x0 == x1:
            v = num(x0) / den(x0)
            lo, hi = max(lo, v), max(hi, v)
            continue
        lo = max(lo, num(x0) / den(x0), num(x1) / den(x1))
        dmin = _abs_lower_on(den, x0, x1)
        if dmin <= 0:
            raise ArithmeticError("denominator enclosure touches zero; increase depth")
        hi = max(hi, _abs_upper_on(num, x0, x1) / dmin)
    return lo, hi


def _abs_lower_on(p: UniPoly, lo: Fraction, hi: Fraction) -> Fraction:
    m = (lo + hi) / 2
    r = (hi - lo) / 2
    shifted = p.shift(m)
    rest, power = Fraction(0), r
    for c in shifted.coeffs[1:]:
        rest += abs(c) * power
        power *= r
    return abs(shifted.coefficient(0)) - rest


# ---------------------------------------------------------------------------
# Rational functions
# ---------------------------------------------------------------------------

class RatFunc:
    """Element of Q(t) kept as a reduced quotient with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = num if isinstance(num, UniPoly) else UniPoly([num])
        den = UniPoly([1]) if den is None else den if isinstance(den, UniPoly) else UniPoly([den])
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            num, den = UniPoly(), UniPoly([1])
        else:
            g = num.gcd(den)
            if g.degree > 0:
                num, den = num.exact_div(g), den.exact_div(g)
            lc = den.lc
            num, den = num * (1 / lc), den * (1 / lc)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFunc is immutable")

    @staticmethod
    def _c(x) -> "RatFunc":
        return x if isinstance(x, RatFunc) else RatFunc(x)

    def __add__(self, other):
        o = self._c(other)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._c(other))

    def __rsub__(self, other):
        return self._c(other) - self

    def __mul__(self, other):
        o = self._c(other)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._c(other)
        if o.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._c(other) / self

    def derivative(self) -> "RatFunc":
        return RatFunc(self.num.derivative() * self.den - self.num * self.den.derivative(), self.den * self.den)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other) -> bool:
        o = self._c(other)
        return self.num == o.num and self.den == o.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __call__(self, x):
        return self.num(x) / self.den(x)

    def __str__(self) -> str:
        if self.den == UniPoly([1]):
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __repr__(self) -> str:
        return f"RatFunc({self})"
