"""Problem-file parsing. Numeric literals in certified fields must be strings or integers."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from ..exact.multipoly import MultiPoly
from ..exact.scalars import PI_LOWER, PI_UPPER, ComplexRational, coerce_scalar, parse_complex_rational
from ..exact.unipoly import UniPoly
from ..samplers import CircleContour, PolygonContour

_MISSING = object()


class ParseError(ValueError):
    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class FloatLiteral(str):
    """Marker for a JSON float; rejected wherever an exact value is expected."""


def loads(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text, parse_float=FloatLiteral)
    except json.JSONDecodeError as exc:
        raise ParseError(source, f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def plain(x: Any) -> Any:
    """Undo float markers for echoing input."""
    if isinstance(x, FloatLiteral):
        return float(x)
    if isinstance(x, dict):
        return {k: plain(v) for k, v in x.items()}
    if isinstance(x, list):
        return [plain(v) for v in x]
    return x


class Fields:
    """Dictionary view that names the full path of a missing or malformed field."""

    def __init__(self, data: Any, path: str):
        if not isinstance(data, dict):
            raise ParseError(path, "expected an object")
        self.data = data
        self.path = path

    def has(self, name: str) -> bool:
        return name in self.data

    def raw(self, name: str, default=_MISSING):
        if name not in self.data:
            if default is _MISSING:
                raise ParseError(f"{self.path}.{name}", "missing field")
            return default
        return self.data[name]

    def where(self, name: str) -> str:
        return f"{self.path}.{name}"

    def sub(self, name: str) -> "Fields":
        return Fields(self.raw(name), self.where(name))

    # -- scalars -----------------------------------------------------------
    def integer(self, name: str, default=_MISSING, minimum: int | None = None) -> int:
        v = self.raw(name, default)
        if isinstance(v, bool) or not isinstance(v, int):
            if isinstance(v, str) and v.strip().lstrip("-").isdigit():
                v = int(v)
            else:
                raise ParseError(self.where(name), f"expected an integer, got {v!r}")
        if minimum is not None and v < minimum:
            raise ParseError(self.where(name), f"must be at least {minimum}")
        return v

    def boolean(self, name: str, default=_MISSING) -> bool:
        v = self.raw(name, default)
        if not isinstance(v, bool):
            raise ParseError(self.where(name), f"expected true or false, got {v!r}")
        return v

    def string(self, name: str, default=_MISSING) -> str:
        v = self.raw(name, default)
        if isinstance(v, FloatLiteral) or not isinstance(v, str):
            raise ParseError(self.where(name), f"expected a string, got {v!r}")
        return v

    def rational(self, name: str, default=_MISSING) -> Fraction:
        return rational(self.raw(name, default), self.where(name))

    def rationals(self, name: str, default=_MISSING) -> list[Fraction]:
        v = self.raw(name, default)
        if not isinstance(v, list):
            raise ParseError(self.where(name), "expected a list")
        return [rational(x, f"{self.where(name)}[{i}]") for i, x in enumerate(v)]

    def complex_rational(self, name: str, default=_MISSING):
        return complex_rational(self.raw(name, default), self.where(name))

    def list(self, name: str, default=_MISSING) -> list:
        v = self.raw(name, default)
        if not isinstance(v, list):
            raise ParseError(self.where(name), "expected a list")
        return v


def rational(v: Any, where: str) -> Fraction:
    if isinstance(v, FloatLiteral):
        raise ParseError(where, f"floating literal {v} not allowed; write it as a string such as \"{v}\"")
    if isinstance(v, bool):
        raise ParseError(where, "expected a rational")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v.strip())
        except (ValueError, ZeroDivisionError):
            raise ParseError(where, f"not a rational: {v!r}") from None
    raise ParseError(where, f"expected a rational string, got {v!r}")


def complex_rational(v: Any, where: str):
    if isinstance(v, (int, FloatLiteral)) and not isinstance(v, bool):
        return rational(v, where)
    if not isinstance(v, str):
        raise ParseError(where, f"expected a complex rational string, got {v!r}")
    try:
        return parse_complex_rational(v)
    except (ValueError, ZeroDivisionError):
        raise ParseError(where, f"not a complex rational: {v!r}") from None


def _sympify(text: Any, where: str):
    import sympy as sp

    if isinstance(text, FloatLiteral):
        raise ParseError(where, f"floating literal {text} not allowed; use a string")
    if isinstance(text, int) and not isinstance(text, bool):
        return sp.Integer(text)
    if not isinstance(text, str):
        raise ParseError(where, f"expected an expression string, got {text!r}")
    try:
        return sp.sympify(text.replace("^", "**"), rational=True, locals={"i": sp.I, "e": sp.E})
    except (sp.SympifyError, SyntaxError, TypeError) as exc:
        raise ParseError(where, f"cannot parse expression {text!r}: {exc}") from None


def expression(v: Any, where: str, allowed: tuple[str, ...] = ("t",)):
    import sympy as sp

    e = _sympify(v, where)
    names = {s.name for s in e.free_symbols}
    extra = names - set(allowed)
    if extra:
        raise ParseError(where, f"unknown symbols {sorted(extra)}; allowed: {list(allowed)}")
    return e


def _exact_coeff(c, where: str):
    import sympy as sp

    re, im = sp.re(c), sp.im(c)
    if not (re.is_Rational and im.is_Rational):
        raise ParseError(where, f"coefficient {c} is not a (complex) rational")
    return coerce_scalar(ComplexRational(Fraction(int(re.p), int(re.q)), Fraction(int(im.p), int(im.q))))


def unipoly(v: Any, where: str, var: str = "t") -> UniPoly:
    import sympy as sp

    e = expression(v, where, (var,))
    s = sp.Symbol(var)
    try:
        p = sp.Poly(sp.expand(e), s)
    except sp.PolynomialError:
        raise ParseError(where, f"not a polynomial in {var}: {v!r}") from None
    coeffs = [_exact_coeff(c, where) for c in reversed(p.all_coeffs())]
    return UniPoly(coeffs)


def multipoly(v: Any, where: str, nvars: int) -> MultiPoly:
    import sympy as sp

    names = ("x", "y", "z", "w")[:nvars] if nvars <= 4 else tuple(f"x{i + 1}" for i in range(nvars))
    e = expression(v, where, names)
    syms = [sp.Symbol(n) for n in names]
    try:
        p = sp.Poly(sp.expand(e), *syms)
    except sp.PolynomialError:
        raise ParseError(where, f"not a polynomial in {list(names)}: {v!r}") from None
    terms = {}
    for monom, c in p.terms():
        val = _exact_coeff(c, where)
        if isinstance(val, ComplexRational):
            raise ParseError(where, "multivariate polynomials need rational coefficients")
        terms[tuple(int(m) for m in monom)] = val
    return MultiPoly(nvars, terms)


def pi_length(v: Any, where: str) -> tuple[Fraction, float]:
    """``a + b*pi`` with rational ``a, b``: a rational upper bound and the float value."""
    import sympy as sp

    if isinstance(v, (int, FloatLiteral)) and not isinstance(v, bool):
        q = rational(v, where)
        return q, float(q)
    e = expression(v, where, ())
    b = e.coeff(sp.pi)
    a = sp.simplify(e - b * sp.pi)
    if not (a.is_Rational and b.is_Rational):
        raise ParseError(where, f"expected a rational or a + b*pi, got {v!r}")
    a, b = Fraction(int(a.p), int(a.q)), Fraction(int(b.p), int(b.q))
    upper = a + b * (PI_UPPER if b >= 0 else PI_LOWER)
    return upper, float(e.evalf(30))


def domain(v: Any, where: str):
    f = Fields(v, where)
    kind = f.string("type")
    if kind in ("disk", "circle"):
        try:
            return CircleContour(f.complex_rational("center", "0"), f.rational("radius"))
        except ValueError as exc:
            raise ParseError(f.where("radius"), str(exc)) from None
    if kind == "polygon":
        verts = [complex_rational(x, f"{where}.vertices[{i}]") for i, x in enumerate(f.list("vertices"))]
        try:
            return PolygonContour(tuple(verts))
        except ValueError as exc:
            raise ParseError(f.where("vertices"), str(exc)) from None
    raise ParseError(f.where("type"), f"unknown domain type {kind!r} (disk or polygon)")
