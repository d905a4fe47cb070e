"""Complex zero counting: Jensen bounds, Bernstein indices, Voorhoeve indices and pseudopolynomials."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .certificate import BoundCertificate, check
from .exact.scalars import (
    PI_LOWER,
    PI_UPPER,
    ComplexRational,
    coerce_scalar,
    scalar_to_str,
    sqrt_bounds,
    sqrt_lower,
    sqrt_upper,
    to_fraction,
)
from .exact.unipoly import UniPoly, certified_sup, certified_sup_ratio
from .oracle import phase_variations
from .samplers import AnalyticSampler, CircleContour, PolygonContour

TWO_PI = 2 * math.pi


def _abs_upper(c) -> Fraction:
    c = coerce_scalar(c)
    if isinstance(c, ComplexRational):
        return c.abs_upper()
    return abs(c)


def _abs2(c) -> Fraction:
    c = coerce_scalar(c)
    if isinstance(c, ComplexRational):
        return c.abs2()
    return c * c


# ---------------------------------------------------------------------------
# pseudopolynomials
# ---------------------------------------------------------------------------

class PseudoPolynomial:
    """``p(z) = sum_lambda e^{lambda z} p_lambda(z)`` with Gaussian-rational exponents."""

    def __init__(self, spectrum: Sequence[tuple]):
        terms: dict = {}
        for lam, poly in spectrum:
            lam = coerce_scalar(lam)
            poly = poly if isinstance(poly, UniPoly) else UniPoly(poly)
            if lam in terms:
                raise ValueError(f"repeated exponent {scalar_to_str(lam)}")
            if not poly.is_zero():
                terms[lam] = poly
        self.terms = terms

    @property
    def degree(self) -> int:
        return sum(p.degree + 1 for p in self.terms.values())

    def derivative(self) -> "PseudoPolynomial":
        return PseudoPolynomial([(lam, p * lam + p.derivative()) for lam, p in self.terms.items()])

    def eval_numeric(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        out = np.zeros_like(z)
        for lam, p in self.terms.items():
            out = out + np.exp(complex(lam) * z) * p.eval_numeric(z)
        return out

    def __str__(self) -> str:
        return " + ".join(f"exp({scalar_to_str(l)}*z)*({p})" for l, p in self.terms.items()) or "0"


def pseudopoly_voorhoeve_bound(p: PseudoPolynomial, contour) -> BoundCertificate:
    """Zero bound inside a convex contour of length ``L`` for a pseudopolynomial of degree ``n``.

    The argument variation along the boundary is at most
    ``2 pi (n - 1) + 2 L sum_lambda (deg p_lambda + 1) |lambda|``: each of the ``n - 1``
    derivations in the reduction adds at most one turn, each exponential factor adds
    at most ``|mu| L``. The zero bound is the variation divided by ``2 pi``.
    """
    if not p.terms:
        raise ValueError("empty spectrum")
    if not contour.is_convex:
        raise ValueError("contour must bound a convex domain")
    n = p.degree
    L = contour.length_upper()
    weighted = sum(((q.degree + 1) * _abs_upper(lam) for lam, q in p.terms.items()), Fraction(0))
    x_up = 2 * L * weighted
    zeros = (n - 1) + math.floor(x_up / (2 * PI_LOWER))
    v_up = 2 * PI_UPPER * (n - 1) + x_up
    return BoundCertificate(
        zeros,
        "pseudopoly",
        "Voorhoeve-index bound for exponential polynomials",
        [check("degree n >= 1", n, ">=", 1), check("contour convex", True, "==", True)],
        [
            f"n = sum(deg p_lambda + 1) = {n}",
            f"boundary length <= {L}",
            f"2 L sum (deg+1)|lambda| <= {x_up}",
            "one full turn per derivation on a convex boundary",
            f"zeros <= (n - 1) + floor(2 L sum / (2 pi)) = {zeros}",
        ],
        extras={"degree": n, "variation_upper_radians": v_up, "length_upper": L},
    )


# ---------------------------------------------------------------------------
# Jensen
# ---------------------------------------------------------------------------

def poly_abs_sum(p: UniPoly) -> Fraction:
    """``sum |a_k|``, an upper bound for ``max_{|z|=1} |p|``."""
    return sum((_abs_upper(c) for c in p.coeffs), Fraction(0))


def jensen_zero_bound(f, r, boundary_max=None, center_value=None) -> BoundCertificate:
    """Zeros in the closed disk of radius ``r < 1`` of ``f`` holomorphic on the closed unit disk.

    The bound is the largest ``k`` with ``(1/r)^k <= M_1 / |f(0)|``, i.e.
    ``floor(ln(M_1 / |f(0)|) / ln(1/r))`` decided by exact comparisons.
    """
    r = to_fraction(r)
    if not 0 < r < 1:
        raise ValueError("inner radius must lie in (0, 1)")
    poly = f.exact if isinstance(f, AnalyticSampler) and f.kind == "poly" else f if isinstance(f, UniPoly) else None
    if center_value is None:
        if poly is None:
            raise ValueError("center value f(0) required for black-box samplers")
        center_value = poly.coefficient(0)
    if boundary_max is None:
        if poly is None:
            raise ValueError("boundary maximum M_1 required for black-box samplers")
        boundary_max = poly_abs_sum(poly)
    f0_2 = _abs2(center_value)
    if f0_2 == 0:
        raise ValueError("vanishing center; factor out the known order first")
    m1 = to_fraction(boundary_max)
    ratio2 = m1 * m1 / f0_2
    if ratio2 < 1:
        raise ValueError("boundary maximum is below |f(0)|, contradicting the maximum principle")
    inv2 = 1 / (r * r)
    k, power = 0, inv2
    while power <= ratio2:
        k += 1
        power *= inv2
    return BoundCertificate(
        k,
        "jensen",
        "Jensen inequality",
        [
            check("|f(0)|^2 > 0", f0_2, ">", 0),
            check("(1/r)^(2k) <= M_1^2/|f(0)|^2", inv2 ** k, "<=", ratio2),
            check("(1/r)^(2k+2) > M_1^2/|f(0)|^2", inv2 ** (k + 1), ">", ratio2),
        ],
        [
            f"M_1 = {m1}",
            f"|f(0)|^2 = {f0_2}",
            "each zero in the r-disk contributes at least ln(1/r) to the Jensen sum",
            f"bound = floor(ln(M_1/|f(0)|)/ln(1/r)) = {k}",
        ],
        extras={"radius": r, "boundary_max": m1},
    )


# ---------------------------------------------------------------------------
# Bernstein index
# ---------------------------------------------------------------------------

@dataclass
class RegionMax:
    value: float
    lo: float
    hi: float
    certified: bool


def _circle_chart(p: UniPoly, center: ComplexRational, radius: Fraction, flip: bool) -> tuple[UniPoly, UniPoly]:
    """``|p|^2`` on half of the circle as ``num(u) / den(u)`` with ``u in [-1, 1]``."""
    a = UniPoly([1, ComplexRational(0, 2), -1])  # (1 - u^2) + 2iu
    if flip:
        a = -a
    d = UniPoly([1, 0, 1])
    deg = p.degree
    z_num = a * radius + d * center  # z = z_num / d
    q = UniPoly()
    zp = UniPoly([1])
    dp = [UniPoly([1])]
    for _ in range(deg):
        dp.append(dp[-1] * d)
    for k, c in enumerate(p.coeffs):
        if c:
            q = q + zp * dp[deg - k] * c
        zp = zp * z_num
    re, im = q.real_part(), q.imag_part()
    num = re * re + im * im
    den = dp[deg] * dp[deg]
    return num, den


def _certified_circle_max(p: UniPoly, contour: CircleContour) -> RegionMax:
    if p.degree <= 0:
        v = math.sqrt(float(_abs2(p.coefficient(0))))
        return RegionMax(v, v, v, True)
    lo2 = hi2 = Fraction(0)
    for flip in (False, True):
        num, den = _circle_chart(p, contour.center, contour.radius, flip)
        a, b = certified_sup_ratio(num, den, -1, 1, 40)
        lo2, hi2 = max(lo2, a), max(hi2, b)
    lo, hi = sqrt_lower(lo2, 60), sqrt_upper(hi2, 60)
    return RegionMax(float((lo + hi) / 2), float(lo), float(hi), True)


def _certified_polygon_max(p: UniPoly, contour: PolygonContour) -> RegionMax:
    vs = contour.vertices
    lo2 = hi2 = Fraction(0)
    for i in range(len(vs)):
        a, b = vs[i], vs[(i + 1) % len(vs)]
        edge = p.compose(UniPoly([a, b - a]))
        sq = edge.real_part() * edge.real_part() + edge.imag_part() * edge.imag_part()
        x, y = certified_sup(sq, 0, 1, 40)
        lo2, hi2 = max(lo2, x), max(hi2, y)
    lo, hi = sqrt_lower(lo2, 60), sqrt_upper(hi2, 60)
    return RegionMax(float((lo + hi) / 2), float(lo), float(hi), True)


def sampled_boundary_max(f, contour, rtol: float = 1e-8, initial: int = 1024, max_points: int = 1 << 22) -> RegionMax:
    """Boundary maximum of ``|f|`` by grid doubling plus local polishing; stops at three agreeing levels."""
    from scipy.optimize import minimize_scalar

    history = []
    n = initial
    while True:
        s = np.linspace(0.0, 1.0, n, endpoint=False)
        vals = np.abs(np.asarray(f(contour.points(s)), dtype=complex))
        i = int(np.argmax(vals))
        best = float(vals[i])
        h = 1.0 / n
        res = minimize_scalar(
            lambda x: -float(np.abs(np.asarray(f(contour.points(np.array([x % 1.0]))), dtype=complex))[0]),
            bounds=(s[i] - h, s[i] + h), method="bounded", options={"xatol": 1e-13},
        )
        best = max(best, -float(res.fun))
        history.append(best)
        if len(history) >= 3:
            a, b, c = history[-3:]
            if abs(c - b) <= rtol * c and abs(b - a) <= rtol * c:
                break
        if n >= max_points:
            break
        n *= 2
    top = history[-1]
    if top == 0.0:
        raise ValueError("function vanishes identically on the boundary")
    return RegionMax(top, top * (1 - rtol), top * (1 + rtol), False)


def region_max(f, contour) -> RegionMax:
    poly = f.exact if isinstance(f, AnalyticSampler) and f.kind == "poly" else f if isinstance(f, UniPoly) else None
    if poly is not None:
        if poly.is_zero():
            raise ValueError("function is identically zero")
        if isinstance(contour, CircleContour):
            return _certified_circle_max(poly, contour)
        return _certified_polygon_max(poly, contour)
    return sampled_boundary_max(f, contour)


@dataclass
class BernsteinResult:
    index: float
    lo: float
    hi: float
    max_inner: RegionMax
    max_outer: RegionMax

    @property
    def certified(self) -> bool:
        return self.max_inner.certified and self.max_outer.certified

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "enclosure": [self.lo, self.hi],
            "max_inner": self.max_inner.value,
            "max_outer": self.max_outer.value,
            "certified": self.certified,
        }


def _dist_lower(a: ComplexRational, b: ComplexRational) -> Fraction:
    return sqrt_lower((a - b).abs2(), 60)


def _dist_upper(a: ComplexRational, b: ComplexRational) -> Fraction:
    return sqrt_upper((a - b).abs2(), 60)


def _line_distance_lower(p: ComplexRational, a: ComplexRational, b: ComplexRational) -> Fraction:
    """Signed distance (positive to the left of ``a -> b``), rounded down."""
    d = b - a
    w = p - a
    cross = d.re * w.im - d.im * w.re
    n2 = d.abs2()
    if cross >= 0:
        return cross / sqrt_upper(n2, 60)
    return cross / sqrt_lower(n2, 60)


def region_gap(inner, outer) -> Fraction:
    """Rational lower bound on ``max{eps : inner + eps*D ⊆ outer}`` (negative if not nested)."""
    if isinstance(outer, CircleContour):
        if isinstance(inner, CircleContour):
            return outer.radius - _dist_upper(inner.center, outer.center) - inner.radius
        return min(outer.radius - _dist_upper(v, outer.center) for v in inner.vertices)
    if not outer.is_convex:
        raise ValueError("outer region must be convex")
    vs = outer.vertices
    area2 = sum(vs[i].re * vs[(i + 1) % len(vs)].im - vs[(i + 1) % len(vs)].re * vs[i].im for i in range(len(vs)))
    orient = 1 if area2 > 0 else -1
    edges = [(vs[i], vs[(i + 1) % len(vs)]) if orient > 0 else (vs[(i + 1) % len(vs)], vs[i]) for i in range(len(vs))]
    if isinstance(inner, CircleContour):
        return min(_line_distance_lower(inner.center, a, b) for a, b in edges) - inner.radius
    return min(_line_distance_lower(v, a, b) for v in inner.vertices for a, b in edges)


@dataclass(frozen=True)
class CPGonPair:
    inner: object
    outer: object

    @property
    def gap(self) -> Fraction:
        return region_gap(self.inner, self.outer)

    def validate(self) -> None:
        if self.gap <= 0:
            raise ValueError("inner region must lie in the outer region with a positive gap")


def bernstein_index(f, pair: CPGonPair) -> BernsteinResult:
    """``B = ln(M_U / M_K)`` with maxima over the region boundaries."""
    pair.validate()
    mk = region_max(f, pair.inner)
    mu = region_max(f, pair.outer)
    if mk.value == 0.0 or mu.value == 0.0:
        raise ValueError("function is identically zero")
    b = math.log(mu.value / mk.value)
    lo = max(0.0, math.log(mu.lo / mk.hi))
    hi = math.log(mu.hi / mk.lo)
    return BernsteinResult(max(b, 0.0) if b > -1e-12 else b, lo, hi, mk, mu)


@dataclass
class BernsteinRolleReport:
    index_f: BernsteinResult
    index_df: BernsteinResult
    defect: float

    def to_dict(self) -> dict:
        return {"B_f": self.index_f.to_dict(), "B_df": self.index_df.to_dict(), "defect": self.defect}


def bernstein_rolle_report(f, k_prime, k, u) -> BernsteinRolleReport:
    """Indices of ``f`` and ``f'`` for the pair ``(K', U)`` and their difference (the Rolle defect)."""
    CPGonPair(k_prime, k).validate()
    CPGonPair(k, u).validate()
    df = f.derivative() if isinstance(f, (UniPoly, AnalyticSampler)) else None
    if df is None:
        raise ValueError("derivative access required")
    pair = CPGonPair(k_prime, u)
    bf = bernstein_index(f, pair)
    try:
        bdf = bernstein_index(df, pair)
    except ValueError:
        # f' identically zero: f constant, both indices vanish
        zero = RegionMax(0.0, 0.0, 0.0, True)
        bdf = BernsteinResult(0.0, 0.0, 0.0, zero, zero)
    return BernsteinRolleReport(bf, bdf, bf.index - bdf.index)


# ---------------------------------------------------------------------------
# Voorhoeve index
# ---------------------------------------------------------------------------

@dataclass
class VoorhoeveResult:
    variation: float
    winding: int
    points: int
    converged: bool

    def to_dict(self) -> dict:
        return {"variation": self.variation, "winding": self.winding, "points": self.points,
                "converged": self.converged, "turns": self.variation / TWO_PI}


def _func(f):
    if isinstance(f, UniPoly):
        return f.eval_numeric
    return f


def voorhoeve_index(f, contour, rtol: float = 1e-10) -> VoorhoeveResult:
    """Total absolute variation of ``arg f`` along the contour, in radians."""
    w = phase_variations([_func(f)], contour, rtol=rtol)[0]
    return VoorhoeveResult(w.total_variation, w.winding, w.points, w.converged)


@dataclass
class VoorhoeveRolleCheck:
    v_f: float
    v_df: float
    turn: float
    holds: bool

    def to_dict(self) -> dict:
        return {"V_f": self.v_f, "V_df": self.v_df, "curvature_term": self.turn, "holds": self.holds}


def voorhoeve_rolle_check(f, contour, tol: float = 1e-6, rtol: float = 1e-8) -> VoorhoeveRolleCheck:
    """``V(f) <= V(f') + 2 pi`` on a convex contour (one full turn of boundary curvature)."""
    if not contour.is_convex:
        raise ValueError("contour must be convex")
    df = f.derivative()
    vf, vdf = phase_variations([_func(f), _func(df)], contour, rtol=rtol)
    return VoorhoeveRolleCheck(vf.total_variation, vdf.total_variation, TWO_PI,
                               vf.total_variation <= vdf.total_variation + TWO_PI + tol)


@dataclass
class TriangleCheck:
    v_f: float
    v_g: float
    v_fg: float
    lower_holds: bool
    upper_holds: bool

    @property
    def holds(self) -> bool:
        return self.lower_holds and self.upper_holds


def voorhoeve_triangle_check(f, g, contour, tol: float = 1e-6, rtol: float = 1e-8) -> TriangleCheck:
    """``|V(f) - V(g)| <= V(fg) <= V(f) + V(g)`` computed on a common grid."""
    ff, gg = _func(f), _func(g)
    vf, vg, vfg = phase_variations([ff, gg, lambda z: ff(z) * gg(z)], contour, rtol=rtol)
    a, b, c = vf.total_variation, vg.total_variation, vfg.total_variation
    return TriangleCheck(a, b, c, abs(a - b) <= c + tol, c <= a + b + tol)


# ---------------------------------------------------------------------------
# second Bernstein classes
# ---------------------------------------------------------------------------

@dataclass
class BernsteinClassParams:
    c: Fraction
    nu: int
    radius: Fraction
    exact: bool

    def to_dict(self) -> dict:
        from .certificate import jsonable

        return {"c": jsonable(self.c), "nu": self.nu, "R": jsonable(self.radius), "exact": self.exact}


def bernstein_class_params(coeffs: Sequence, nu: int, radius=1, tail_bound=None) -> BernsteinClassParams:
    """``c = sup_k |a_k| R^k / max_{k <= nu} |a_k| R^k``.

    ``tail_bound`` is a caller-supplied rational bound on ``sup_{k > N} |a_k| R^k`` for
    coefficients beyond the supplied list.
    """
    R = to_fraction(radius)
    if R <= 0:
        raise ValueError("radius must be positive")
    a2 = [_abs2(c) * R ** (2 * k) for k, c in enumerate(coeffs)]
    head = max(a2[: nu + 1], default=Fraction(0))
    if head == 0:
        raise ZeroDivisionError("all coefficients up to index nu vanish")
    top = max(a2)
    if tail_bound is not None:
        top = max(top, to_fraction(tail_bound) ** 2)
    ratio = top / head
    lo, hi = sqrt_bounds(ratio, 64)
    return BernsteinClassParams(hi, nu, R, lo == hi)
