"""Evaluators shared by the oracle and the bounding modules.

* :class:`AnalyticSampler` evaluates a (possibly complex) analytic function and its
  derivatives on numpy arrays; exact polynomial inputs keep their exact form.
* :class:`CurveSampler` evaluates a parametrized curve and its derivatives.
* :class:`PolyVectorField` wraps a polynomial vector field.
* :class:`CircleContour` and :class:`PolygonContour` parametrize closed contours by ``s in [0, 1)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .exact.multipoly import MultiPoly
from .exact.scalars import PI_UPPER, ComplexRational, coerce_scalar, sqrt_upper, to_fraction
from .exact.unipoly import UniPoly


# ---------------------------------------------------------------------------
# analytic functions
# ---------------------------------------------------------------------------

class AnalyticSampler:
    """Function with derivative access.

    ``kind`` is one of ``"poly"``, ``"pseudo"``, ``"taylor"`` or ``"numeric"``. Exact
    variants (``poly``, ``pseudo``) carry the exact object in ``exact``.
    """

    def __init__(
        self,
        func: Callable[[np.ndarray], np.ndarray],
        derivative: Callable[[], "AnalyticSampler"] | None = None,
        kind: str = "numeric",
        exact=None,
        radius: float | None = None,
        label: str = "",
    ):
        self._func = func
        self._derivative = derivative
        self.kind = kind
        self.exact = exact
        self.radius = radius
        self.label = label

    def __call__(self, z):
        return self._func(np.asarray(z))

    def derivative(self, k: int = 1) -> "AnalyticSampler":
        s = self
        for _ in range(k):
            if s._derivative is None:
                raise ValueError(f"sampler {s.label or s.kind} has no derivative access")
            s = s._derivative()
        return s

    @property
    def is_exact(self) -> bool:
        return self.kind in ("poly", "pseudo")

    # -- constructors -------------------------------------------------
    @classmethod
    def from_poly(cls, p: UniPoly) -> "AnalyticSampler":
        return cls(p.eval_numeric, lambda: cls.from_poly(p.derivative()), "poly", p, None, str(p))

    @classmethod
    def from_pseudo(cls, p) -> "AnalyticSampler":
        """Wrap any object with ``eval_numeric`` and ``derivative()`` (a pseudopolynomial)."""
        return cls(p.eval_numeric, lambda: cls.from_pseudo(p.derivative()), "pseudo", p, None, str(p))

    @classmethod
    def from_taylor(cls, coeffs: Sequence, radius: float | None = None) -> "AnalyticSampler":
        cs = np.array([complex(c) for c in coeffs])

        def f(z):
            z = np.asarray(z, dtype=complex)
            acc = np.zeros_like(z)
            for c in cs[::-1]:
                acc = acc * z + c
            if np.any(cs.imag) or np.any(z.imag):
                return acc
            return acc.real

        def d():
            return cls.from_taylor([k * cs[k] for k in range(1, len(cs))], radius)

        return cls(f, d, "taylor", None, radius, "taylor")

    @classmethod
    def from_callable(
        cls, func: Callable, derivatives: Sequence[Callable] = (), label: str = "numeric"
    ) -> "AnalyticSampler":
        """Black box ``func`` with an optional list of successive derivative callables."""
        derivs = list(derivatives)

        def d():
            if not derivs:
                raise ValueError(f"sampler {label} has no derivative access")
            return cls.from_callable(derivs[0], derivs[1:], label + "'")

        return cls(lambda z: np.asarray(func(z)), d if derivs else None, "numeric", None, None, label)

    @classmethod
    def from_sympy(cls, expr, var) -> "AnalyticSampler":
        """Numeric sampler from a sympy expression; derivatives are symbolic."""
        import sympy as sp

        fn = sp.lambdify(var, expr, modules="numpy")

        def f(z):
            z = np.asarray(z)
            out = fn(z)
            return np.broadcast_to(np.asarray(out), z.shape).copy() if np.ndim(out) == 0 else np.asarray(out)

        return cls(f, lambda: cls.from_sympy(sp.diff(expr, var), var), "numeric", None, None, str(expr))

    @classmethod
    def constant(cls, c) -> "AnalyticSampler":
        return cls.from_poly(UniPoly([c]))

    # -- algebra on samplers (used by triangle-inequality checks) -------
    def __mul__(self, other: "AnalyticSampler") -> "AnalyticSampler":
        if self.kind == "poly" and other.kind == "poly":
            return AnalyticSampler.from_poly(self.exact * other.exact)
        f, g = self, other

        def d():
            return f.derivative() * g + f * g.derivative()

        has_d = f._derivative is not None and g._derivative is not None
        return AnalyticSampler(lambda z: f(z) * g(z), d if has_d else None, "numeric", None, None,
                               f"({f.label})*({g.label})")

    def __add__(self, other: "AnalyticSampler") -> "AnalyticSampler":
        if self.kind == "poly" and other.kind == "poly":
            return AnalyticSampler.from_poly(self.exact + other.exact)
        f, g = self, other
        has_d = f._derivative is not None and g._derivative is not None
        return AnalyticSampler(lambda z: f(z) + g(z), (lambda: f.derivative() + g.derivative()) if has_d else None,
                               "numeric", None, None, f"({f.label})+({g.label})")

    def __repr__(self) -> str:
        return f"AnalyticSampler({self.kind}: {self.label})"


# ---------------------------------------------------------------------------
# contours
# ---------------------------------------------------------------------------

def _as_complex_rational(c) -> ComplexRational:
    return ComplexRational.coerce(coerce_scalar(c))


@dataclass(frozen=True)
class CircleContour:
    """Positively oriented circle ``center + radius * e^{2 pi i s}``."""

    center: ComplexRational
    radius: Fraction

    def __post_init__(self):
        object.__setattr__(self, "center", _as_complex_rational(self.center))
        object.__setattr__(self, "radius", to_fraction(self.radius))
        if self.radius <= 0:
            raise ValueError("circle radius must be positive")

    def points(self, s: np.ndarray) -> np.ndarray:
        return complex(self.center) + float(self.radius) * np.exp(2j * np.pi * np.asarray(s))

    def length_upper(self) -> Fraction:
        return 2 * PI_UPPER * self.radius

    def diameter_upper(self) -> Fraction:
        return 2 * self.radius

    def contains(self, z) -> bool:
        return abs(complex(z) - complex(self.center)) < float(self.radius)

    @property
    def is_convex(self) -> bool:
        return True

    def to_dict(self) -> dict:
        from .exact.scalars import fraction_to_str, scalar_to_str

        return {"type": "disk", "center": scalar_to_str(self.center.re if self.center.im == 0 else self.center),
                "radius": fraction_to_str(self.radius)}


@dataclass(frozen=True)
class PolygonContour:
    """Closed polygon through the given vertices (counter-clockwise for positive orientation)."""

    vertices: tuple

    def __post_init__(self):
        vs = tuple(_as_complex_rational(v) for v in self.vertices)
        if len(vs) < 3:
            raise ValueError("a polygon needs at least three vertices")
        object.__setattr__(self, "vertices", vs)

    def _edges(self):
        vs = [complex(v) for v in self.vertices]
        return list(zip(vs, vs[1:] + vs[:1]))

    def points(self, s: np.ndarray) -> np.ndarray:
        s = np.asarray(s, dtype=float) % 1.0
        edges = self._edges()
        lens = np.array([abs(b - a) for a, b in edges])
        cum = np.concatenate([[0.0], np.cumsum(lens)]) / lens.sum()
        idx = np.clip(np.searchsorted(cum, s, side="right") - 1, 0, len(edges) - 1)
        a = np.array([e[0] for e in edges])[idx]
        b = np.array([e[1] for e in edges])[idx]
        frac = (s - cum[idx]) / (cum[idx + 1] - cum[idx])
        return a + frac * (b - a)

    def _edge_upper(self, a: ComplexRational, b: ComplexRational) -> Fraction:
        d = b - a
        return sqrt_upper(d.abs2(), 48)

    def length_upper(self) -> Fraction:
        vs = self.vertices
        return sum((self._edge_upper(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))), Fraction(0))

    def diameter_upper(self) -> Fraction:
        vs = self.vertices
        return max(self._edge_upper(a, b) for a in vs for b in vs)

    @property
    def is_convex(self) -> bool:
        vs = self.vertices
        signs = set()
        for i in range(len(vs)):
            a, b, c = vs[i], vs[(i + 1) % len(vs)], vs[(i + 2) % len(vs)]
            cross = (b.re - a.re) * (c.im - b.im) - (b.im - a.im) * (c.re - b.re)
            if cross:
                signs.add(cross > 0)
        return len(signs) <= 1

    def contains(self, z) -> bool:
        z = complex(z)
        inside = False
        for a, b in self._edges():
            if (a.imag > z.imag) != (b.imag > z.imag):
                x = a.real + (z.imag - a.imag) * (b.real - a.real) / (b.imag - a.imag)
                if x > z.real:
                    inside = not inside
        return inside

    def to_dict(self) -> dict:
        from .exact.scalars import scalar_to_str

        return {"type": "polygon", "vertices": [scalar_to_str(coerce_scalar(v)) for v in self.vertices]}


# ---------------------------------------------------------------------------
# curves
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TrigComponent:
    """``sum_k p_k t^k + sum_j (a_j cos(w_j t) + b_j sin(w_j t))``."""

    poly: tuple = ()
    trig: tuple = ()  # (w, a, b) triples

    def derivative(self) -> "TrigComponent":
        poly = tuple(k * c for k, c in enumerate(self.poly) if k > 0)
        trig = tuple((w, w * b, -w * a) for w, a, b in self.trig)
        return TrigComponent(poly, trig)

    def __call__(self, t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        out = np.zeros_like(t)
        for c in reversed(self.poly):
            out = out * t + c
        for w, a, b in self.trig:
            out = out + a * np.cos(w * t) + b * np.sin(w * t)
        return out


class CurveSampler:
    """Curve ``t -> x(t)`` in R^n on ``[a, b]`` with derivative access."""

    def __init__(
        self,
        dimension: int,
        derivs: Callable[[np.ndarray, int], np.ndarray],
        interval: tuple[float, float],
        closed: bool = False,
        label: str = "",
    ):
        if dimension < 1:
            raise ValueError("curve dimension must be positive")
        self.dimension = dimension
        self._derivs = derivs
        self.interval = (float(interval[0]), float(interval[1]))
        if not self.interval[0] < self.interval[1]:
            raise ValueError("curve interval needs a < b")
        self.closed = closed
        self.label = label

    def __call__(self, t) -> np.ndarray:
        return self.derivative_values(t, 0)

    def derivative_values(self, t, k: int) -> np.ndarray:
        """Array of shape ``(len(t), n)`` holding ``x^{(k)}(t)``."""
        t = np.atleast_1d(np.asarray(t, dtype=float))
        return np.asarray(self._derivs(t, k), dtype=float).reshape(len(t), self.dimension)

    def derivative_curve(self) -> "CurveSampler":
        d = self._derivs
        return CurveSampler(self.dimension, lambda t, k: d(t, k + 1), self.interval, self.closed, self.label + "'")

    def grid(self, n: int) -> np.ndarray:
        a, b = self.interval
        if self.closed:
            return np.linspace(a, b, n, endpoint=False)
        return np.linspace(a, b, n)

    @classmethod
    def from_components(
        cls, components: Sequence[TrigComponent], interval, closed: bool = False, label: str = ""
    ) -> "CurveSampler":
        comps = list(components)
        cache: dict[int, list[TrigComponent]] = {0: comps}

        def get(k):
            if k not in cache:
                cache[k] = [c.derivative() for c in get(k - 1)]
            return cache[k]

        def derivs(t, k):
            return np.stack([c(t) for c in get(k)], axis=-1)

        return cls(len(comps), derivs, interval, closed, label)

    @classmethod
    def from_sympy(cls, exprs, var, interval, closed: bool = False) -> "CurveSampler":
        import sympy as sp

        exprs = list(exprs)
        cache: dict[int, Callable] = {}

        def derivs(t, k):
            if k not in cache:
                dk = [sp.diff(e, var, k) for e in exprs]
                cache[k] = sp.lambdify(var, dk, modules="numpy")
            vals = cache[k](t)
            return np.stack([np.broadcast_to(np.asarray(v, dtype=float), t.shape) for v in vals], axis=-1)

        return cls(len(exprs), derivs, interval, closed, ", ".join(str(e) for e in exprs))

    # -- common curves ------------------------------------------------
    @classmethod
    def circle(cls, radius: float = 1.0, turns: float = 1.0) -> "CurveSampler":
        comps = [TrigComponent((), ((1.0, radius, 0.0),)), TrigComponent((), ((1.0, 0.0, radius),))]
        return cls.from_components(comps, (0.0, 2 * math.pi * turns), closed=turns == 1.0, label="circle")

    @classmethod
    def ellipse(cls, a: float, b: float) -> "CurveSampler":
        comps = [TrigComponent((), ((1.0, a, 0.0),)), TrigComponent((), ((1.0, 0.0, b),))]
        return cls.from_components(comps, (0.0, 2 * math.pi), closed=True, label=f"ellipse({a},{b})")

    @classmethod
    def helix(cls, c: float, t0: float = 0.0, t1: float = 2 * math.pi) -> "CurveSampler":
        comps = [
            TrigComponent((), ((1.0, 1.0, 0.0),)),
            TrigComponent((), ((1.0, 0.0, 1.0),)),
            TrigComponent((0.0, c), ()),
        ]
        return cls.from_components(comps, (t0, t1), closed=False, label=f"helix(c={c})")

    @classmethod
    def segment(cls, p0: Sequence[float], p1: Sequence[float]) -> "CurveSampler":
        comps = [TrigComponent((float(a), float(b) - float(a)), ()) for a, b in zip(p0, p1)]
        return cls.from_components(comps, (0.0, 1.0), closed=False, label="segment")

    def __repr__(self) -> str:
        return f"CurveSampler(n={self.dimension}, {self.label}, {self.interval}, closed={self.closed})"


# ---------------------------------------------------------------------------
# polynomial vector fields
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PolyVectorField:
    components: tuple
    dimension: int = field(init=False)

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise ValueError("vector field needs at least one component")
        n = len(comps)
        for c in comps:
            if not isinstance(c, MultiPoly) or c.nvars != n:
                raise ValueError(f"components must be MultiPoly in exactly {n} variables")
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "dimension", n)

    @property
    def degree(self) -> int:
        return max(c.degree for c in self.components)

    def at(self, point: Sequence) -> tuple:
        return tuple(c(point) for c in self.components)

    def numeric(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return np.array([c.eval_numeric(x) for c in self.components])

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.components) + ")"

    def lie_derivative(self, u: MultiPoly) -> MultiPoly:
        """``D_v u = sum_i (du/dx_i) v_i``."""
        if u.nvars != self.dimension:
            raise ValueError(f"polynomial has {u.nvars} variables, field has dimension {self.dimension}")
        out = MultiPoly(self.dimension, {})
        for i, vi in enumerate(self.components):
            du = u.derivative(i)
            if not du.is_zero() and not vi.is_zero():
                out = out + du * vi
        return out

    def negated(self) -> "PolyVectorField":
        return PolyVectorField(tuple(-c for c in self.components))
