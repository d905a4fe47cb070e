"""Rotation of spatial curves: spherical projection lengths, the R^n Rolle inequality,
Frenet curvatures from Gram volumes, the hyperplane intersection bound, Shapiro's
non-oscillation test and Buffon-type length estimates."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .certificate import BoundCertificate, check
from .oracle import HyperplaneHits, random_hyperplane_hits
from .samplers import CurveSampler

ORIGIN_THRESHOLD = 1e-9
DEGENERATE_REL = 1e-10
QUAD_RTOL = 1e-6
_NODES, _WEIGHTS = np.polynomial.legendre.leggauss(10)


class DegenerateFrame(ValueError):
    """The osculating frame collapses (some V_k vanishes)."""


class QuadratureError(RuntimeError):
    pass


@dataclass
class QuadResult:
    value: float
    levels: list[float]
    panels: int

    @property
    def error_estimate(self) -> float:
        return abs(self.levels[-1] - self.levels[-2]) if len(self.levels) > 1 else math.inf


def composite_quad(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    rtol: float = QUAD_RTOL,
    atol: float = 1e-12,
    panels: int = 16,
    max_panels: int = 1 << 16,
) -> QuadResult:
    """Composite 10-point Gauss-Legendre; panels double until three levels agree."""
    levels: list[float] = []
    p = panels
    while p <= max_panels:
        edges = np.linspace(a, b, p + 1)
        half = (edges[1:] - edges[:-1]) / 2
        mid = (edges[1:] + edges[:-1]) / 2
        t = (mid[:, None] + half[:, None] * _NODES[None, :]).ravel()
        vals = np.asarray(f(t), dtype=float).reshape(p, len(_NODES))
        levels.append(float(np.sum(half * (vals @ _WEIGHTS))))
        if len(levels) >= 3:
            x, y, z = levels[-3:]
            scale = max(abs(z), atol)
            if abs(z - y) <= rtol * scale and abs(y - x) <= rtol * scale:
                return QuadResult(z, levels, p)
        p *= 2
    raise QuadratureError(f"no convergence with {max_panels} panels")


# ---------------------------------------------------------------------------
# spherical projection
# ---------------------------------------------------------------------------

def _check_origin(curve: CurveSampler, threshold: float, what: str = "curve") -> float:
    pts = curve(curve.grid(8192))
    m = float(np.min(np.linalg.norm(pts, axis=1)))
    scale = max(float(np.max(np.linalg.norm(pts, axis=1))), 1.0)
    if m <= threshold * scale:
        raise ValueError(f"{what} passes too close to the origin (min norm {m:.3g})")
    # a crossing between grid nodes shows up as a direction flip
    u = pts / np.linalg.norm(pts, axis=1)[:, None]
    if np.min(np.sum(u[1:] * u[:-1], axis=1), initial=1.0) < -0.9:
        raise ValueError(f"{what} passes through the origin between samples")
    return m


def spherical_speed(curve: CurveSampler, t: np.ndarray) -> np.ndarray:
    """``|d/dt (x / |x|)| = sqrt(|x|^2 |x'|^2 - <x, x'>^2) / |x|^2``."""
    x = curve.derivative_values(t, 0)
    v = curve.derivative_values(t, 1)
    xx = np.sum(x * x, axis=1)
    vv = np.sum(v * v, axis=1)
    xv = np.sum(x * v, axis=1)
    return np.sqrt(np.maximum(xx * vv - xv * xv, 0.0)) / xx


def spherical_length(curve: CurveSampler, rtol: float = QUAD_RTOL, threshold: float = ORIGIN_THRESHOLD) -> float:
    _check_origin(curve, threshold)
    a, b = curve.interval
    return composite_quad(lambda t: spherical_speed(curve, t), a, b, rtol).value


def spherical_distance(u: np.ndarray, v: np.ndarray) -> float:
    """Angle between directions; antipodal points of the 0-sphere are at distance pi."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    c = float(np.dot(u, v) / (np.linalg.norm(u) * np.linalg.norm(v)))
    return math.acos(max(-1.0, min(1.0, c)))


def projected_rotation(curve: CurveSampler, basis: Sequence[Sequence[float]]) -> float:
    """Spherical length of the orthogonal projection onto ``span(basis)`` (orthonormalized)."""
    q, _ = np.linalg.qr(np.asarray(basis, dtype=float).T)
    d = curve._derivs
    proj = CurveSampler(q.shape[1], lambda t, k: d(t, k) @ q, curve.interval, curve.closed, curve.label + "|proj")
    return spherical_length(proj)


@dataclass
class RotationReport:
    length: float
    derivative_length: float
    correction: float
    closed: bool
    holds: bool
    slack: float
    tolerance: float

    def to_dict(self) -> dict:
        return {
            "spherical_length": self.length,
            "derivative_spherical_length": self.derivative_length,
            "endpoint_correction": self.correction,
            "closed": self.closed,
            "holds": self.holds,
            "slack": self.slack,
            "tolerance": self.tolerance,
        }


def rolle_rn_check(curve: CurveSampler, tol: float = 1e-6) -> RotationReport:
    """``|S gamma| <= |S gamma'| - dist(S gamma, S gamma')|_a^b``; no correction for closed curves."""
    d = curve.derivative_curve()
    try:
        s0 = spherical_length(curve)
        s1 = spherical_length(d)
    except ValueError as exc:
        raise ValueError(f"rotation check needs both curve and velocity away from the origin: {exc}") from exc
    a, b = curve.interval
    if curve.closed:
        corr = 0.0
    else:
        da = spherical_distance(curve(a)[0], d(a)[0])
        db = spherical_distance(curve(b)[0], d(b)[0])
        corr = -(db - da)
    rhs = s1 + corr
    allowance = tol * max(1.0, abs(rhs))
    return RotationReport(s0, s1, corr, curve.closed, s0 <= rhs + allowance, rhs - s0, allowance)


# ---------------------------------------------------------------------------
# Frenet data
# ---------------------------------------------------------------------------

@dataclass
class FrenetData:
    t: float
    volumes: list[float]  # V_0..V_n, last one signed
    curvatures: list[float]  # kappa_1..kappa_{n-1}

    def to_dict(self) -> dict:
        return {"t": self.t, "volumes": self.volumes, "curvatures": self.curvatures}


def gram_volumes(curve: CurveSampler, t: np.ndarray) -> np.ndarray:
    """``V_k(t)`` for ``k = 0..n``: k-volume spanned by ``x', ..., x^(k)``; ``V_n`` carries the orientation sign."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    n = curve.dimension
    vecs = np.stack([curve.derivative_values(t, k) for k in range(1, n + 1)], axis=1)  # (N, n, n)
    out = np.ones((len(t), n + 1))
    for k in range(1, n + 1):
        m = vecs[:, :k, :]
        if k == n:
            out[:, k] = np.linalg.det(m)
        else:
            g = m @ np.transpose(m, (0, 2, 1))
            out[:, k] = np.sqrt(np.maximum(np.linalg.det(g), 0.0))
    return out


def _norm_products(curve: CurveSampler, t: np.ndarray) -> np.ndarray:
    n = curve.dimension
    norms = np.stack([np.linalg.norm(curve.derivative_values(t, k), axis=1) for k in range(1, n + 1)], axis=1)
    return np.concatenate([np.ones((len(t), 1)), np.cumprod(norms, axis=1)], axis=1)


def curvature_values(curve: CurveSampler, t: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """``kappa_k = V_{k-1} V_{k+1} / (V_k^2 V_1)`` and a mask of points with a degenerate frame."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    n = curve.dimension
    v = gram_volumes(curve, t)
    ref = _norm_products(curve, t)
    degenerate = np.zeros(len(t), dtype=bool)
    if n == 1:
        return np.zeros((len(t), 0)), degenerate
    kap = np.empty((len(t), n - 1))
    for k in range(1, n):
        bad = np.abs(v[:, k]) <= DEGENERATE_REL * np.maximum(ref[:, k], 1e-300)
        degenerate |= bad
        with np.errstate(divide="ignore", invalid="ignore"):
            kap[:, k - 1] = v[:, k - 1] * v[:, k + 1] / (v[:, k] ** 2 * v[:, 1])
    return kap, degenerate


def frenet_curvatures(curve: CurveSampler, t: float) -> FrenetData:
    kap, bad = curvature_values(curve, np.array([t]))
    if bad[0]:
        raise DegenerateFrame(f"osculating frame degenerate at t = {t}")
    return FrenetData(float(t), gram_volumes(curve, np.array([t]))[0].tolist(), kap[0].tolist())


def total_curvatures(curve: CurveSampler, rtol: float = QUAD_RTOL) -> list[float]:
    """``K_i = int |kappa_i| ds``."""
    a, b = curve.interval
    out = []
    for i in range(curve.dimension - 1):
        def f(t, i=i):
            kap, bad = curvature_values(curve, t)
            if bad.any():
                raise DegenerateFrame("persistent frame degeneracy on quadrature nodes")
            speed = np.linalg.norm(curve.derivative_values(t, 1), axis=1)
            return np.abs(kap[:, i]) * speed

        out.append(composite_quad(f, a, b, rtol).value)
    return out


def hyperinflections(curve: CurveSampler, grid: int = 8192) -> tuple[int, bool]:
    """Sign changes of ``kappa_{n-1}`` on a grid, and whether it vanishes identically there."""
    t = curve.grid(grid)
    kap, bad = curvature_values(curve, t)
    if bad.mean() > 0.01:
        raise DegenerateFrame("persistent frame degeneracy")
    last = kap[:, -1]
    scale = float(np.max(np.abs(last[np.isfinite(last)]), initial=0.0))
    zero = np.abs(last) <= 1e-12 * max(scale, 1e-300)
    if scale == 0.0 or zero.all():
        return 0, True
    s = np.sign(np.where(zero | ~np.isfinite(last), 0.0, last))
    s = s[s != 0]
    if curve.closed and len(s):
        s = np.concatenate([s, s[:1]])
    return int(np.sum(s[1:] != s[:-1])), False


def hyperplane_rotation_bound(curve: CurveSampler) -> BoundCertificate:
    """``n + (4/pi) sum_i K_i + #{kappa_{n-1} = 0}``; the ``n`` is dropped for closed curves."""
    n = curve.dimension
    if n < 2:
        raise ValueError("curve dimension must be at least 2")
    ks = total_curvatures(curve)
    inflections, flat = hyperinflections(curve)
    base = 0 if curve.closed else n
    value = base + 4 / math.pi * sum(ks) + inflections
    bound = math.floor(value * (1 + 10 * QUAD_RTOL) + 1e-9)
    trace = [
        f"K_i = {[round(k, 9) for k in ks]}",
        f"sign changes of kappa_{n - 1} on the sampling grid = {inflections} (sampled quantity)",
        f"{'closed curve: first term dropped' if curve.closed else f'first term n = {n}'}",
        f"value = {value:.9g}",
    ]
    return BoundCertificate(
        bound, "curve-hyperplane", "hyperplane intersection bound via total curvatures",
        [], trace, unit="intersections",
        extras={"total_curvatures": ks, "hyperinflections": inflections, "value": value, "flat_last_curvature": flat},
    )


# ---------------------------------------------------------------------------
# Shapiro and Buffon
# ---------------------------------------------------------------------------

@dataclass
class ShapiroVerdict:
    certified: bool
    integral: float
    threshold: float
    sign: int

    def to_dict(self) -> dict:
        return {"certified": self.certified, "integral": self.integral, "threshold": self.threshold, "sign": self.sign}


def shapiro_certificate(curve: CurveSampler, grid: int = 8192) -> ShapiroVerdict:
    """Hyperconvex curve with ``int sqrt(sum kappa_i^2) ds < 1 / (n sqrt 2)`` meets every hyperplane at most ``n`` times."""
    n = curve.dimension
    t = curve.grid(grid)
    kap, bad = curvature_values(curve, t)
    if bad.any():
        raise DegenerateFrame("hyperconvexity check failed: degenerate frame")
    last = kap[:, -1]
    if not (np.all(last > 0) or np.all(last < 0)):
        raise ValueError("hyperconvexity check failed: last curvature is not sign-constant")
    a, b = curve.interval

    def f(tt):
        k, bb = curvature_values(curve, tt)
        if bb.any():
            raise DegenerateFrame("degenerate frame on quadrature nodes")
        return np.sqrt(np.sum(k * k, axis=1)) * np.linalg.norm(curve.derivative_values(tt, 1), axis=1)

    q = composite_quad(f, a, b)
    integral_upper = q.value * (1 + 10 * QUAD_RTOL) + 1e-12
    threshold = 1 / (n * math.sqrt(2))
    return ShapiroVerdict(integral_upper < threshold, q.value, threshold, int(np.sign(last[0])))


@dataclass
class BuffonEstimate:
    estimate: float
    std_error: float
    samples: int
    seed: int
    hits: HyperplaneHits = field(repr=False, default=None)

    def interval(self, sigmas: float = 3.0) -> tuple[float, float]:
        return self.estimate - sigmas * self.std_error, self.estimate + sigmas * self.std_error

    def to_dict(self) -> dict:
        lo, hi = self.interval()
        return {"estimate": self.estimate, "std_error": self.std_error, "samples": self.samples,
                "seed": self.seed, "interval_3sigma": [lo, hi]}


def buffon_estimate(curve: CurveSampler, samples: int = 10_000, seed: int = 0, grid: int = 8192) -> BuffonEstimate:
    """``pi`` times the mean number of crossings with random central hyperplanes (great spheres)."""
    hits = random_hyperplane_hits(curve, samples, seed, affine=False, grid=grid)
    return BuffonEstimate(math.pi * hits.mean, math.pi * hits.std_error, samples, int(seed), hits)
