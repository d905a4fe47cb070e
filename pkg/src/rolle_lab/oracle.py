"""Uncertified numerical ground truth used to cross-check every upper bound.

Zero counts produced here are lower bounds: a sign change always hides a zero,
while missed zeros only make the check weaker, never wrong.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from .exact.interval import Interval, IntervalBox, interval_eval
from .exact.multipoly import MultiPoly
from .exact.unipoly import UniPoly, isolate_real_roots, real_root_count, refine_root
from .samplers import AnalyticSampler, CircleContour, CurveSampler, PolyVectorField

TWO_PI = 2 * math.pi


class ZeroOnContour(ValueError):
    """The function (nearly) vanishes on the contour."""


class EnclosureError(ValueError):
    """The Picard enclosure could not be closed over the requested span."""


def make_rng(seed: int) -> np.random.Generator:
    """Counter-based Philox generator keyed by a 64-bit seed."""
    if not 0 <= int(seed) < 2**64:
        raise ValueError("seed must be a 64-bit unsigned integer")
    return np.random.Generator(np.random.Philox(key=int(seed)))


def instance_rng(seed: int, index: int) -> np.random.Generator:
    """Independent stream for instance ``index`` of a corpus keyed by ``seed``."""
    if not 0 <= int(seed) < 2**64 or not 0 <= int(index) < 2**64:
        raise ValueError("seed and index must be 64-bit unsigned integers")
    return np.random.Generator(np.random.Philox(key=(int(index) << 64) | int(seed)))


# ---------------------------------------------------------------------------
# real zeros
# ---------------------------------------------------------------------------

@dataclass
class RootCountReport:
    count: int
    locations: list[float]
    resolution: float
    certified: bool = False
    method: str = "sign-scan"
    unresolved: bool = False
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "count": self.count,
            "locations": [float(x) for x in self.locations],
            "resolution": float(self.resolution),
            "certified": self.certified,
            "method": self.method,
            "unresolved": self.unresolved,
            "notes": list(self.notes),
        }


def _as_callable(f) -> Callable[[np.ndarray], np.ndarray]:
    if isinstance(f, UniPoly):
        return f.eval_numeric
    return f


def _exact_endpoint(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def _sturm_report(p: UniPoly, a, b) -> RootCountReport:
    a, b = Fraction(a), Fraction(b)
    q = p.squarefree_part()
    boxes = [refine_root(q, lo, hi, 60) for lo, hi in isolate_real_roots(p, a, b)]
    locs = [float((lo + hi) / 2) for lo, hi in boxes]
    width = max((float(hi - lo) for lo, hi in boxes), default=0.0)
    gaps = [y - x for x, y in zip(locs, locs[1:])]
    resolution = min([width] + [g / 2 for g in gaps]) if gaps else width
    count = real_root_count(p, a, b)
    return RootCountReport(count, locs, resolution, True, "sturm")


def _scan(func, a: float, b: float, n: int, zero_rel: float) -> tuple[list[float], float]:
    t = np.linspace(a, b, n + 1)
    y = np.real_if_close(np.asarray(func(t)))
    if np.iscomplexobj(y):
        raise ValueError("real zero counting needs a real-valued function")
    y = np.asarray(y, dtype=float)
    if not np.all(np.isfinite(y)):
        raise ValueError("function is not finite on the sampling grid")
    scale = float(np.max(np.abs(y))) or 1.0
    s = np.where(np.abs(y) <= zero_rel * scale, 0, np.sign(y)).astype(int)
    locs: list[float] = []
    i = 0
    last_sign, last_idx = 0, -1
    while i <= n:
        if s[i] == 0:
            j = i
            while j + 1 <= n and s[j + 1] == 0:
                j += 1
            locs.append(float((t[i] + t[j]) / 2))
            # a zero run absorbs the sign change across it
            last_sign, last_idx = (s[j + 1], j + 1) if j + 1 <= n else (0, -1)
            i = j + 2
            continue
        if last_sign and s[i] != last_sign:
            lo, hi = t[last_idx], t[i]
            try:
                r = brentq(lambda x: float(np.real(func(np.array([x]))[0])), lo, hi, xtol=1e-14)
            except ValueError:
                r = (lo + hi) / 2
            locs.append(float(r))
        last_sign, last_idx = s[i], i
        i += 1
    return sorted(locs), (b - a) / n


def count_real_zeros(
    f, a, b, budget: int = 1 << 16, initial: int = 1024, zero_rel: float = 1e-12
) -> RootCountReport:
    """Lower bound on the number of distinct zeros of ``f`` on ``[a, b]``.

    Exact real polynomials with rational endpoints get an exact Sturm count. Other
    inputs are scanned for sign changes on grids that double until two successive
    counts agree; samples with ``|f| <= zero_rel * max|f|`` count as zeros.
    """
    if isinstance(f, AnalyticSampler) and f.kind == "poly":
        f = f.exact
    if isinstance(f, UniPoly) and f.is_real and _exact_endpoint(a) and _exact_endpoint(b):
        if f.is_zero():
            raise ValueError("identically zero polynomial")
        return _sturm_report(f, a, b)
    func = _as_callable(f)
    a, b = float(a), float(b)
    if not a < b:
        raise ValueError("interval needs a < b")
    n = initial
    prev, h = _scan(func, a, b, n, zero_rel)
    best = prev
    unresolved = True
    while n < budget:
        n *= 2
        cur, h = _scan(func, a, b, n, zero_rel)
        if len(cur) > len(best):
            best = cur
        if len(cur) == len(prev):
            unresolved = False
            break
        prev = cur
    gaps = [y - x for x, y in zip(best, best[1:])]
    resolution = min([h] + [g / 2 for g in gaps]) if gaps else h
    report = RootCountReport(len(best), best, resolution, False, "sign-scan", unresolved)
    if unresolved:
        report.notes.append("count did not stabilize within the refinement budget")
    return report


# ---------------------------------------------------------------------------
# argument principle
# ---------------------------------------------------------------------------

@dataclass
class WindingResult:
    winding: int
    total_variation: float
    min_modulus_on_contour: float
    points: int = 0
    converged: bool = True

    def to_dict(self) -> dict:
        return {
            "winding": self.winding,
            "total_variation": self.total_variation,
            "min_modulus_on_contour": self.min_modulus_on_contour,
            "points": self.points,
            "converged": self.converged,
        }


def _phase_steps(vals: np.ndarray) -> np.ndarray:
    return np.angle(np.roll(vals, -1) / vals)


def _refine_intervals(s: np.ndarray, mask: np.ndarray) -> np.ndarray:
    nxt = np.roll(s, -1)
    nxt[-1] += 1.0
    mids = (s[mask] + nxt[mask]) / 2
    return np.sort(np.concatenate([s, mids % 1.0]))


def phase_variations(
    funcs: Sequence[Callable],
    contour,
    rtol: float = 1e-10,
    atol: float = 1e-10,
    initial: int = 512,
    max_points: int = 1 << 22,
    zero_rel: float = 1e-13,
) -> list[WindingResult]:
    """Winding numbers and absolute argument variations of several functions on one grid.

    The grid is first refined until every phase step of every function is below
    pi/2, then doubled until three successive totals agree. Sharing the grid makes
    per-step triangle inequalities hold exactly between the returned totals.
    """
    s = np.linspace(0.0, 1.0, initial, endpoint=False)

    def evaluate(s):
        z = contour.points(s)
        vals = [np.asarray(f(z), dtype=complex) for f in funcs]
        for v in vals:
            if v.shape != z.shape:
                v = np.broadcast_to(v, z.shape)
            mod = np.abs(v)
            top = float(np.max(mod))
            if not np.all(np.isfinite(mod)):
                raise ValueError("function is not finite on the contour")
            if top == 0 or float(np.min(mod)) <= zero_rel * top:
                raise ZeroOnContour("zero on contour")
        return [np.broadcast_to(v, z.shape) for v in vals]

    while True:
        vals = evaluate(s)
        bad = np.zeros(len(s), dtype=bool)
        for v in vals:
            bad |= np.abs(_phase_steps(v)) >= math.pi / 2
        if not bad.any():
            break
        if len(s) >= max_points:
            raise ZeroOnContour("zero on contour (phase steps do not settle)")
        s = _refine_intervals(s, bad)

    def totals(vals):
        return [float(np.sum(np.abs(_phase_steps(v)))) for v in vals]

    history = [totals(vals)]
    converged = False
    while len(s) < max_points:
        s = _refine_intervals(s, np.ones(len(s), dtype=bool))
        vals = evaluate(s)
        history.append(totals(vals))
        if len(history) >= 3:
            ok = True
            for k in range(len(funcs)):
                v0, v1, v2 = history[-3][k], history[-2][k], history[-1][k]
                tol = atol + rtol * max(abs(v2), 1.0)
                if abs(v2 - v1) > tol or abs(v1 - v0) > tol:
                    ok = False
            if ok:
                converged = True
                break
    out = []
    for v, total in zip(vals, history[-1]):
        w = float(np.sum(_phase_steps(v))) / TWO_PI
        out.append(WindingResult(int(round(w)), total, float(np.min(np.abs(v))), len(s), converged))
    return out


def argument_variation(
    func: Callable, a: float, b: float, rtol: float = 1e-8, initial: int = 1024, max_points: int = 1 << 20
) -> float:
    """Total absolute variation of ``arg func`` along the real segment ``[a, b]`` (radians).

    Steps are kept below pi/2 and the grid doubles until three totals agree.
    """
    history: list[float] = []
    n = initial
    while n <= max_points:
        t = np.linspace(a, b, n + 1)
        v = np.asarray(func(t), dtype=complex)
        if float(np.min(np.abs(v))) == 0.0:
            raise ZeroOnContour("function vanishes on the segment")
        steps = np.angle(v[1:] / v[:-1])
        if np.max(np.abs(steps)) < math.pi / 2:
            history.append(float(np.sum(np.abs(steps))))
            if len(history) >= 3:
                x, y, z = history[-3:]
                tol = rtol * max(z, 1.0)
                if abs(z - y) <= tol and abs(y - x) <= tol:
                    return z
        n *= 2
    if not history:
        raise ZeroOnContour("phase steps do not settle")
    return history[-1]


def count_disk_zeros(f, center, radius, rtol: float = 1e-7) -> WindingResult:
    """Argument-principle zero count of ``f`` inside the circle ``|z - center| = radius``."""
    func = f.eval_numeric if isinstance(f, UniPoly) else f
    contour = CircleContour(center, radius)
    return phase_variations([func], contour, rtol=rtol)[0]


def count_contour_zeros(f, contour, rtol: float = 1e-7) -> WindingResult:
    func = f.eval_numeric if isinstance(f, UniPoly) else f
    return phase_variations([func], contour, rtol=rtol)[0]


# ---------------------------------------------------------------------------
# trajectories
# ---------------------------------------------------------------------------

@dataclass
class Trajectory:
    times: np.ndarray
    states: np.ndarray  # shape (len(times), n)
    enclosure: IntervalBox
    tube: list = field(default_factory=list)  # (t0, t1, IntervalBox) pieces
    solution: Callable | None = None
    method: str = "stepwise-picard"

    def __call__(self, t) -> np.ndarray:
        if self.solution is None:
            raise ValueError("trajectory has no dense output")
        return self.solution(t)

    def samples_inside(self, slack: float = 1e-9) -> bool:
        lo = np.array([float(iv.lo) for iv in self.enclosure]) - slack
        hi = np.array([float(iv.hi) for iv in self.enclosure]) + slack
        return bool(np.all(self.states >= lo) and np.all(self.states <= hi))


class _LieSeries:
    """Exact Lie-series data ``L_v^j x_k`` used for the stepwise enclosure."""

    def __init__(self, v: PolyVectorField, order: int):
        n = v.dimension
        self.v = v
        self.order = order
        self.chains = []
        for k, xk in enumerate(MultiPoly.variables(n)):
            chain = [xk]
            for _ in range(order + 1):
                chain.append(v.lie_derivative(chain[-1]))
            self.chains.append(chain)
        self._taylor: dict[Fraction, list[MultiPoly]] = {}

    def taylor(self, h: Fraction) -> list[MultiPoly]:
        if h not in self._taylor:
            polys = []
            for chain in self.chains:
                p = MultiPoly(self.v.dimension, {})
                coef = Fraction(1)
                for j in range(self.order + 1):
                    p = p + chain[j] * coef
                    coef = coef * h / (j + 1)
                polys.append(p)
            self._taylor[h] = polys
        return self._taylor[h]

    def remainder(self, h: Fraction, box: IntervalBox) -> list[Interval]:
        coef = h ** (self.order + 1) / math.factorial(self.order + 1)
        return [interval_eval(chain[self.order + 1], box) * coef for chain in self.chains]


def _picard_box(v: PolyVectorField, x: IntervalBox, h: Fraction) -> IntervalBox | None:
    """A box ``B`` with ``x + [0, h] * v(B) ⊆ B``, or None."""
    step = Interval(Fraction(0), h)
    cand = IntervalBox(xi + step * interval_eval(c, x) for xi, c in zip(x, v.components))
    scale = max((iv.width for iv in cand), default=Fraction(0))
    cand = cand.widen(scale / 4 + Fraction(1, 1 << 30)).round_out(48)
    for _ in range(6):
        img = IntervalBox(xi + step * interval_eval(c, cand) for xi, c in zip(x, v.components))
        if cand.contains_box(img):
            return cand
        w = max(iv.width for iv in img)
        cand = img.hull(cand).widen(w / 2 + Fraction(1, 1 << 30)).round_out(48)
    return None


def _enclose_forward(
    v: PolyVectorField, q: Sequence[Fraction], span: Fraction, order: int, width_cap: float, max_steps: int
) -> list[tuple[Fraction, Fraction, IntervalBox]]:
    series = _LieSeries(v, order)
    x = IntervalBox((c, c) for c in q)
    t = Fraction(0)
    h = min(Fraction(1, 8), span)
    h_min = span / (1 << 24)
    pieces = []
    steps = 0
    while t < span:
        h = min(h, span - t)
        box = _picard_box(v, x, h)
        if box is None:
            h = h / 2
            if h < h_min:
                raise EnclosureError("span too large: Picard enclosure does not close")
            continue
        rem = series.remainder(h, box)
        if max(float(r.width) for r in rem) > 1e-9 and h > h_min * 64:
            h = h / 2
            continue
        polys = series.taylor(h)
        nxt = IntervalBox(interval_eval(p, x) + r for p, r in zip(polys, rem)).round_out(48)
        # the endpoint also lies in the a-priori box
        nxt = IntervalBox(
            Interval(max(a.lo, b.lo), min(a.hi, b.hi)) if max(a.lo, b.lo) <= min(a.hi, b.hi) else a
            for a, b in zip(nxt, box)
        )
        pieces.append((t, t + h, box))
        t += h
        x = nxt
        steps += 1
        if steps > max_steps:
            raise EnclosureError("span too large: step budget exhausted")
        if max(float(iv.width) for iv in box) > width_cap:
            raise EnclosureError("span too large: enclosure width exceeds cap")
        if h < Fraction(1, 8):
            h = h * 2
    return pieces


def integrate_field(
    v: PolyVectorField,
    q: Sequence,
    delta,
    tol: float = 1e-10,
    symmetric: bool = False,
    samples: int = 2001,
    order: int = 6,
    width_cap: float = 1e6,
    max_steps: int = 20000,
) -> Trajectory:
    """Integrate ``x' = v(x)``, ``x(0) = q`` on ``[0, delta]`` (or ``[-delta, delta]``).

    Numerical states come from an adaptive Runge-Kutta method with dense output; the
    enclosure is a chain of Picard boxes with Lie-series steps whose hull contains
    the exact trajectory.
    """
    from .exact.scalars import to_fraction

    q = [to_fraction(c) for c in q]
    delta = to_fraction(delta)
    if len(q) != v.dimension:
        raise ValueError("start point dimension does not match the field")
    if delta <= 0:
        raise ValueError("span must be positive")

    fwd = _enclose_forward(v, q, delta, order, width_cap, max_steps)
    tube = [(float(a), float(b), box) for a, b, box in fwd]
    if symmetric:
        bwd = _enclose_forward(v.negated(), q, delta, order, width_cap, max_steps)
        tube = [(-float(b), -float(a), box) for a, b, box in reversed(bwd)] + tube
    hull = tube[0][2]
    for _, _, box in tube[1:]:
        hull = hull.hull(box)

    def rhs(_t, y):
        return v.numeric(y)

    y0 = np.array([float(c) for c in q])
    t1 = float(delta)
    fwd_sol = solve_ivp(rhs, (0.0, t1), y0, method="DOP853", rtol=tol, atol=tol * 1e-2, dense_output=True)
    if not fwd_sol.success:
        raise EnclosureError(f"integration failed: {fwd_sol.message}")
    if symmetric:
        bwd_sol = solve_ivp(rhs, (0.0, -t1), y0, method="DOP853", rtol=tol, atol=tol * 1e-2, dense_output=True)
        if not bwd_sol.success:
            raise EnclosureError(f"integration failed: {bwd_sol.message}")

        def solution(t):
            t = np.asarray(t, dtype=float)
            scalar = t.ndim == 0
            t = np.atleast_1d(t)
            out = np.empty((len(t), v.dimension))
            pos = t >= 0
            if pos.any():
                out[pos] = fwd_sol.sol(t[pos]).T
            if (~pos).any():
                out[~pos] = bwd_sol.sol(t[~pos]).T
            return out[0] if scalar else out

        times = np.linspace(-t1, t1, samples)
    else:

        def solution(t):
            t = np.asarray(t, dtype=float)
            if t.ndim == 0:
                return fwd_sol.sol(t)
            return fwd_sol.sol(t).T

        times = np.linspace(0.0, t1, samples)
    states = solution(times)
    return Trajectory(times, states, hull, tube, solution)


# ---------------------------------------------------------------------------
# random hyperplanes
# ---------------------------------------------------------------------------

@dataclass
class HyperplaneHits:
    counts: np.ndarray
    mean: float
    std_error: float
    seed: int
    affine: bool

    def to_dict(self) -> dict:
        return {
            "mean": self.mean,
            "std_error": self.std_error,
            "max": int(self.counts.max()) if len(self.counts) else 0,
            "samples": int(len(self.counts)),
            "seed": self.seed,
            "affine": self.affine,
        }


def random_unit_vectors(rng: np.random.Generator, count: int, n: int) -> np.ndarray:
    xi = rng.standard_normal((count, n))
    return xi / np.linalg.norm(xi, axis=1, keepdims=True)


def random_hyperplane_hits(
    curve: CurveSampler,
    samples: int,
    seed: int,
    affine: bool = False,
    grid: int = 4096,
    chunk: int = 1000,
) -> HyperplaneHits:
    """Sign-change counts of ``<xi, x(t)> - c`` for random unit ``xi``.

    Hyperplanes pass through the origin unless ``affine``; then ``c`` is uniform on
    ``[-R, R]`` with ``R`` the largest sampled norm of the curve.
    """
    rng = make_rng(seed)
    xi = random_unit_vectors(rng, samples, curve.dimension)
    pts = curve(curve.grid(grid))
    if affine:
        radius = float(np.max(np.linalg.norm(pts, axis=1)))
        offsets = rng.uniform(-radius, radius, samples)
    else:
        offsets = np.zeros(samples)
    counts = np.empty(samples, dtype=int)
    for start in range(0, samples, chunk):
        sl = slice(start, min(start + chunk, samples))
        vals = pts @ xi[sl].T - offsets[sl]
        if curve.closed:
            vals = np.vstack([vals, vals[:1]])
        counts[sl] = np.sum(vals[1:] * vals[:-1] < 0, axis=0) + np.sum(vals[1:-1] == 0, axis=0)
    mean = float(counts.mean()) if samples else 0.0
    se = float(counts.std(ddof=1) / math.sqrt(samples)) if samples > 1 else 0.0
    return HyperplaneHits(counts, mean, se, int(seed), affine)


def integrate_linear_ode(
    coefficients: Sequence[Callable[[float], float]],
    initial: Sequence[float],
    span: tuple[float, float],
    tol: float = 1e-10,
) -> Callable[[np.ndarray], np.ndarray]:
    """Dense numerical solution ``y(t)`` of ``y^(n) + a_1 y^(n-1) + ... + a_n y = 0`` (real or complex)."""
    n = len(coefficients)
    if len(initial) != n:
        raise ValueError("need n initial values")

    init = np.asarray(initial)
    dtype = complex if np.iscomplexobj(init) or any(np.iscomplexobj(c(0.0)) for c in coefficients) else float

    def rhs(t, y):
        dy = np.empty(n, dtype=dtype)
        dy[:-1] = y[1:]
        dy[-1] = -sum(coefficients[k](t) * y[n - 1 - k] for k in range(n))
        return dy

    sol = solve_ivp(rhs, span, init.astype(dtype), method="DOP853",
                    rtol=tol, atol=tol * 1e-2, dense_output=True)
    if not sol.success:
        raise RuntimeError(f"integration failed: {sol.message}")
    return lambda t: sol.sol(np.asarray(t, dtype=float))[0]
