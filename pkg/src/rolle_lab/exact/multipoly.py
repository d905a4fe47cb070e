"""Sparse multivariate polynomials over Q with graded-lex monomial order, and Taylor jets."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb
from typing import Iterable, Mapping, Sequence

import numpy as np

from .scalars import coerce_scalar, fraction_to_str, to_fraction

Exponent = tuple[int, ...]


def grlex_key(alpha: Exponent) -> tuple:
    return (sum(alpha), alpha)


@lru_cache(maxsize=None)
def monomials_upto(n: int, k: int) -> tuple[Exponent, ...]:
    """All exponents in ``n`` variables of total degree ``<= k``, graded-lex ascending."""
    out = []
    for d in range(k + 1):
        for combo in combinations_with_replacement(range(n), d):
            alpha = [0] * n
            for i in combo:
                alpha[i] += 1
            out.append(tuple(alpha))
    return tuple(sorted(set(out), key=grlex_key))


def jet_dimension(n: int, k: int) -> int:
    return comb(n + k, n)


class MultiPoly:
    """Immutable polynomial in ``nvars`` variables; zero coefficients are never stored."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exponent, object] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Exponent, Fraction] = {}
        for alpha, c in items:
            alpha = tuple(int(a) for a in alpha)
            if len(alpha) != nvars:
                raise ValueError(f"exponent {alpha} does not have {nvars} entries")
            if any(a < 0 for a in alpha):
                raise ValueError("negative exponent")
            c = coerce_scalar(c)
            if c:
                clean[alpha] = clean.get(alpha, Fraction(0)) + c
        clean = {a: c for a, c in clean.items() if c}
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", dict(sorted(clean.items(), key=lambda kv: grlex_key(kv[0]))))

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors -------------------------------------------------
    @classmethod
    def constant(cls, nvars: int, c) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "MultiPoly":
        alpha = [0] * nvars
        alpha[i] = 1
        return cls(nvars, {tuple(alpha): 1})

    @classmethod
    def variables(cls, nvars: int) -> tuple["MultiPoly", ...]:
        return tuple(cls.variable(nvars, i) for i in range(nvars))

    @classmethod
    def monomial(cls, alpha: Exponent, c=1) -> "MultiPoly":
        return cls(len(alpha), {tuple(alpha): c})

    # -- queries ------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(a) for a in self.terms), default=-1)

    def order(self) -> int:
        """Lowest total degree of a nonzero term (order of vanishing at the origin)."""
        if not self.terms:
            raise ValueError("zero polynomial has infinite order")
        return min(sum(a) for a in self.terms)

    def coefficient(self, alpha: Exponent) -> Fraction:
        return self.terms.get(tuple(alpha), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.coefficient((0,) * self.nvars)

    # -- arithmetic ---------------------------------------------------
    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        return MultiPoly.constant(self.nvars, other)

    def __add__(self, other):
        o = self._coerce(other)
        out = dict(self.terms)
        for a, c in o.terms.items():
            out[a] = out.get(a, Fraction(0)) + c
        return MultiPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.nvars, {a: -c for a, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            c = coerce_scalar(other)
            return MultiPoly(self.nvars, {a: c * v for a, v in self.terms.items()})
        o = self._coerce(other)
        out: dict[Exponent, Fraction] = {}
        for a, c in self.terms.items():
            for b, d in o.terms.items():
                e = tuple(x + y for x, y in zip(a, b))
                out[e] = out.get(e, Fraction(0)) + c * d
        return MultiPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPoly":
        out, base = MultiPoly.constant(self.nvars, 1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        try:
            return self == self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self) -> int:
        return hash((self.nvars, tuple(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- calculus and structure --------------------------------------
    def derivative(self, i: int) -> "MultiPoly":
        if not 0 <= i < self.nvars:
            raise ValueError("variable index out of range")
        out = {}
        for a, c in self.terms.items():
            if a[i]:
                b = list(a)
                b[i] -= 1
                out[tuple(b)] = c * a[i]
        return MultiPoly(self.nvars, out)

    def truncate(self, k: int) -> "MultiPoly":
        """Drop all terms of total degree above ``k``."""
        return MultiPoly(self.nvars, {a: c for a, c in self.terms.items() if sum(a) <= k})

    def shift(self, center: Sequence) -> "MultiPoly":
        """Return ``p(center + x)``."""
        xs = MultiPoly.variables(self.nvars)
        subs = [x + coerce_scalar(c) for x, c in zip(xs, center)]
        return self.substitute(subs)

    def substitute(self, values: Sequence["MultiPoly"]) -> "MultiPoly":
        if len(values) != self.nvars:
            raise ValueError("substitution needs one value per variable")
        target = values[0].nvars if values and isinstance(values[0], MultiPoly) else self.nvars
        out = MultiPoly(target, {})
        cache: dict[tuple[int, int], MultiPoly] = {}
        for a, c in self.terms.items():
            term = MultiPoly.constant(target, c)
            for i, e in enumerate(a):
                if e:
                    key = (i, e)
                    if key not in cache:
                        cache[key] = values[i] ** e
                    term = term * cache[key]
            out = out + term
        return out

    # -- evaluation ---------------------------------------------------
    def __call__(self, point: Sequence):
        """Exact evaluation at a rational point, numeric for floats."""
        if len(point) != self.nvars:
            raise ValueError("point dimension mismatch")
        if all(isinstance(x, (int, Fraction)) for x in point):
            total = Fraction(0)
            for a, c in self.terms.items():
                v = c
                for x, e in zip(point, a):
                    if e:
                        v *= Fraction(x) ** e
                total += v
            return total
        return self.eval_numeric(np.asarray(point, dtype=float))

    def eval_numeric(self, x: np.ndarray) -> np.ndarray:
        """Evaluate on an array whose last axis has length ``nvars``."""
        x = np.asarray(x, dtype=float)
        out = np.zeros(x.shape[:-1])
        for a, c in self.terms.items():
            v = np.full(x.shape[:-1], float(c))
            for i, e in enumerate(a):
                if e:
                    v = v * x[..., i] ** e
            out = out + v
        return out

    def __repr__(self) -> str:
        return f"MultiPoly({self.nvars}, {self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        names = default_names(self.nvars)
        parts = []
        for a, c in sorted(self.terms.items(), key=lambda kv: grlex_key(kv[0]), reverse=True):
            mono = "*".join(
                names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(a) if e
            )
            cs = fraction_to_str(c)
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            else:
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def default_names(n: int) -> tuple[str, ...]:
    if n <= 3:
        return ("x", "y", "z")[:n]
    return tuple(f"x{i + 1}" for i in range(n))


class TaylorJet:
    """Truncated Taylor expansion of order ``k`` at a rational center."""

    __slots__ = ("center", "order", "coefficients")

    def __init__(self, center: Sequence, order: int, coefficients: Mapping[Exponent, object]):
        self.center = tuple(to_fraction(c) for c in center)
        self.order = order
        n = len(self.center)
        basis = monomials_upto(n, order)
        self.coefficients = {a: coerce_scalar(coefficients.get(a, 0)) for a in basis}

    @classmethod
    def of(cls, p: MultiPoly, center: Sequence, order: int) -> "TaylorJet":
        shifted = p.shift(center).truncate(order)
        return cls(center, order, shifted.terms)

    @property
    def dimension(self) -> int:
        return len(self.coefficients)

    def as_poly(self) -> MultiPoly:
        """Jet as a polynomial in the local coordinates ``x - center``."""
        return MultiPoly(len(self.center), self.coefficients)

    def vector(self) -> list[Fraction]:
        return list(self.coefficients.values())
