"""Seeded instance generators. Instance ``i`` of a corpus depends only on ``(seed, i)``."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .exact.multipoly import MultiPoly, monomials_upto
from .exact.scalars import ComplexRational
from .exact.unipoly import UniPoly
from .oracle import instance_rng
from .rolle_univariate import Fewnomial
from .samplers import CurveSampler, PolyVectorField, TrigComponent


def rational(rng: np.random.Generator, bound=10, max_den: int = 10) -> Fraction:
    """Uniform-ish rational in ``[-bound, bound]`` with denominator at most ``max_den``."""
    q = int(rng.integers(1, max_den + 1))
    p = int(rng.integers(-bound * q, bound * q + 1))
    return Fraction(p, q)


def nonzero_rational(rng, bound=10, max_den: int = 10) -> Fraction:
    while True:
        x = rational(rng, bound, max_den)
        if x:
            return x


def random_unipoly(rng, degree: int, bound=10, max_den: int = 10) -> UniPoly:
    coeffs = [rational(rng, bound, max_den) for _ in range(degree)] + [nonzero_rational(rng, bound, max_den)]
    return UniPoly(coeffs)


# ---------------------------------------------------------------------------
# univariate
# ---------------------------------------------------------------------------

def rolle_poly(seed: int, index: int) -> UniPoly:
    """Degree 1..8, rational coefficients in [-10, 10]; a third carry a repeated rational root."""
    rng = instance_rng(seed, index)
    deg = int(rng.integers(1, 9))
    if deg >= 3 and rng.random() < 1 / 3:
        m = int(rng.integers(2, min(deg, 4) + 1))
        r = Fraction(int(rng.integers(-6, 7)), int(rng.integers(1, 4)))
        base = random_unipoly(rng, deg - m)
        f = base * UniPoly([-r, 1]) ** m
        if max(abs(c) for c in f.coeffs) <= 10:
            return f
        return random_unipoly(rng, deg)
    return random_unipoly(rng, deg)


@dataclass
class RollePair:
    f: UniPoly
    g: UniPoly
    a: Fraction
    b: Fraction


def rolle_pair(seed: int, index: int) -> RollePair:
    rng = instance_rng(seed, index)
    f = rolle_poly(seed, 2 * index)
    g = rolle_poly(seed, 2 * index + 1)
    a = Fraction(int(rng.integers(-40, 0)), 4)
    b = Fraction(int(rng.integers(1, 41)), 4)
    return RollePair(f, g, a, b)


def fewnomial(seed: int, index: int) -> Fewnomial:
    """At most 5 terms, exponents at most 30; every seventh instance is a product of distinct linear factors."""
    rng = instance_rng(seed, index)
    if index % 7 == 0:
        k = int(rng.integers(1, 5))
        p = UniPoly.from_roots([Fraction(j) for j in range(1, k + 1)])
        return Fewnomial({e: c for e, c in enumerate(p.coeffs) if c})
    k = int(rng.integers(1, 6))
    exps = rng.choice(31, size=k, replace=False)
    terms = {}
    for e in exps:
        c = 0
        while c == 0:
            c = int(rng.integers(-10, 11))
        terms[int(e)] = Fraction(c)
    return Fewnomial(terms)


def local_rolle_poly(seed: int, index: int) -> UniPoly:
    """``t^m h(t)`` with ``h(0) != 0``, so the order at 0 is exactly ``m``."""
    rng = instance_rng(seed, index)
    m = int(rng.integers(0, 5))
    h = random_unipoly(rng, int(rng.integers(0, 6)))
    if h.coeffs[0] == 0:
        h = h + 1
    return UniPoly([0] * m + [1]) * h


# ---------------------------------------------------------------------------
# linear ODEs
# ---------------------------------------------------------------------------

@dataclass
class OdeInstance:
    order: int
    amplitudes: tuple  # A_k, exact
    frequencies: tuple
    phases: tuple
    length: Fraction
    initial: tuple

    def coefficient_functions(self) -> list[Callable[[float], float]]:
        return [
            (lambda t, c=float(c), w=w, p=p: c * math.cos(w * t + p))
            for c, w, p in zip(self.amplitudes, self.frequencies, self.phases)
        ]


def ode_instance(seed: int, index: int) -> OdeInstance:
    """``a_k(t) = c_k cos(w_k t + phi_k)`` so ``|a_k| <= |c_k| = A_k`` exactly."""
    rng = instance_rng(seed, index)
    n = int(rng.integers(1, 4))
    amps = tuple(abs(rational(rng, 4, 4)) for _ in range(n))
    freqs = tuple(float(rng.uniform(0, 3)) for _ in range(n))
    phases = tuple(float(rng.uniform(0, 2 * math.pi)) for _ in range(n))
    length = Fraction(int(rng.integers(2, 25)), 4)
    init = tuple(float(x) for x in rng.standard_normal(n))
    return OdeInstance(n, amps, freqs, phases, length, init)


# ---------------------------------------------------------------------------
# complex
# ---------------------------------------------------------------------------

def _disk_point(rng, radius: float, grid: int = 64) -> ComplexRational:
    while True:
        re, im = (int(v) for v in rng.integers(-grid, grid + 1, 2))
        if 0 < re * re + im * im < (radius * grid) ** 2:
            return ComplexRational(Fraction(re, grid), Fraction(im, grid))


def jensen_instance(seed: int, index: int) -> tuple[UniPoly, Fraction]:
    """Degree 1..8 with all roots nonzero in ``|z| < 0.95``, and an inner radius ``r`` whose circle
    stays at least 0.01 away from every root."""
    rng = instance_rng(seed, index)
    deg = int(rng.integers(1, 9))
    roots = [_disk_point(rng, 0.95) for _ in range(deg)]
    lc = ComplexRational(nonzero_rational(rng, 5, 4), rational(rng, 5, 4))
    mods = [abs(complex(z)) for z in roots]
    while True:
        r = Fraction(int(rng.integers(1, 20)), 20)
        if all(abs(m - float(r)) >= 0.01 for m in mods):
            return UniPoly.from_roots(roots) * lc, r


def voorhoeve_pair(seed: int, index: int, radius: float = 1.0, margin: float = 0.03) -> tuple[UniPoly, UniPoly]:
    """Random complex polynomials without zeros within ``margin`` of the circle ``|z| = radius``."""
    rng = instance_rng(seed, index)
    out = []
    while len(out) < 2:
        deg = int(rng.integers(1, 6))
        coeffs = [ComplexRational(rational(rng, 3, 4), rational(rng, 3, 4)) for _ in range(deg + 1)]
        if coeffs[-1].abs2() == 0:
            continue
        p = UniPoly(coeffs)
        roots = np.roots([complex(c) for c in reversed(p.coeffs)])
        if len(roots) and np.min(np.abs(np.abs(roots) - radius)) < margin:
            continue
        out.append(p)
    return out[0], out[1]


# ---------------------------------------------------------------------------
# Wronskians
# ---------------------------------------------------------------------------

def polya_triple(seed: int, index: int) -> list[UniPoly]:
    """Three polynomials of degree at most 5 with nonvanishing Wronskian."""
    from .wronskian_polya import wronskian_chain

    rng = instance_rng(seed, index)
    while True:
        fs = [random_unipoly(rng, int(rng.integers(0, 6)), 5, 3) for _ in range(3)]
        if not wronskian_chain(fs).w[-1].is_zero():
            return fs


# ---------------------------------------------------------------------------
# vector fields
# ---------------------------------------------------------------------------

@dataclass
class MeanderInstance:
    field: PolyVectorField
    u0: MultiPoly
    q: tuple
    delta: Fraction
    degree: int


def _sparse_poly(rng, nvars: int, degree: int, terms: int, top: bool) -> MultiPoly:
    mons = list(monomials_upto(nvars, degree))
    chosen = set()
    if top:
        tops = [m for m in mons if sum(m) == degree]
        chosen.add(tops[int(rng.integers(len(tops)))])
    while len(chosen) < terms:
        chosen.add(mons[int(rng.integers(len(mons)))])
    return MultiPoly(nvars, {m: nonzero_rational(rng, 2, 4) for m in sorted(chosen)})


def meander_instance(seed: int, index: int) -> MeanderInstance:
    """``n = 2``, ``d <= 3``, sparse coefficients, affine ``u0`` nonvanishing at ``q``."""
    rng = instance_rng(seed, index)
    d = int(rng.integers(1, 4))
    comps = [_sparse_poly(rng, 2, d, int(rng.integers(1, 4)), top=(i == 0)) for i in range(2)]
    v = PolyVectorField(tuple(comps))
    q = (Fraction(int(rng.integers(-4, 5)), 8), Fraction(int(rng.integers(-4, 5)), 8))
    k = 0
    while all(c == 0 for c in v.at(q)):
        # walk a diagonal so a coordinate line inside the zero set cannot trap the search
        k += 1
        q = (q[0] + Fraction(1, 8), q[1] + Fraction(k % 2, 8))
    x, y = MultiPoly.variables(2)
    while True:
        u0 = nonzero_rational(rng, 2, 2) * x + rational(rng, 2, 2) * y + rational(rng, 1, 4)
        if u0(q) != 0:
            break
    delta = Fraction(int(rng.integers(1, 5)), 8)
    return MeanderInstance(v, u0, q, delta, d)


# ---------------------------------------------------------------------------
# germs
# ---------------------------------------------------------------------------

def germ_instance(seed: int, index: int) -> tuple[MultiPoly, MultiPoly]:
    """``(x^a + h.o.t., y^b + h.o.t.)`` with ``ab <= 8`` after unimodular coordinate and component changes."""
    rng = instance_rng(seed, index)
    pairs = [(a, b) for a in range(1, 9) for b in range(1, 9) if a * b <= 8]
    a, b = pairs[int(rng.integers(len(pairs)))]
    x, y = MultiPoly.variables(2)
    top = max(a, b)

    def hot():
        p = MultiPoly(2, {})
        for _ in range(int(rng.integers(0, 3))):
            deg = int(rng.integers(top + 1, top + 3))
            i = int(rng.integers(0, deg + 1))
            p = p + nonzero_rational(rng, 2, 2) * x ** i * y ** (deg - i)
        return p

    f1 = x ** a + hot()
    f2 = y ** b + hot()
    # unimodular substitution and component mixing keep the multiplicity
    s = int(rng.integers(-2, 3))
    t = int(rng.integers(-2, 3))
    f1, f2 = (g.substitute([x + s * y, y]) for g in (f1, f2))
    f1, f2 = f1, f2 + t * f1
    return f1, f2


# ---------------------------------------------------------------------------
# Euler equations
# ---------------------------------------------------------------------------

def euler_roots(seed: int, index: int) -> list[Fraction]:
    """Order 1..4 real rational spectrum with repetitions."""
    rng = instance_rng(seed, index)
    n = int(rng.integers(1, 5))
    pool = [Fraction(k, 2) for k in range(-6, 7)]
    return [pool[int(rng.integers(len(pool)))] for _ in range(n)]


def euler_solution(seed: int, index: int) -> tuple[list[Fraction], list[float]]:
    rng = instance_rng(seed, index)
    roots = euler_roots(seed, index + (1 << 32))
    return roots, [float(c) for c in rng.standard_normal(len(roots))]


# ---------------------------------------------------------------------------
# curves
# ---------------------------------------------------------------------------

def trig_curve(seed: int, index: int, dimension: int | None = None, max_degree: int = 3) -> CurveSampler:
    """Closed trigonometric curve of degree at most 3 in R^2 or R^3 avoiding the origin, with nonvanishing
    velocity and (in R^3) a nondegenerate osculating plane on the sampling grid."""
    from .curve_oscillation import curvature_values

    rng = instance_rng(seed, index)
    while True:
        n = dimension or int(rng.integers(2, 4))
        deg = int(rng.integers(1, max_degree + 1))
        comps = []
        for _ in range(n):
            trig = tuple(
                (float(w), float(rng.uniform(-1, 1)), float(rng.uniform(-1, 1))) for w in range(1, deg + 1)
            )
            comps.append(TrigComponent((float(rng.uniform(-1, 1)),), trig))
        c = CurveSampler.from_components(comps, (0.0, 2 * math.pi), closed=True, label=f"trig(seed={seed},i={index})")
        t = c.grid(4096)
        x = np.linalg.norm(c(t), axis=1)
        v = np.linalg.norm(c.derivative_values(t, 1), axis=1)
        if x.min() < 0.05 * x.max() or v.min() < 0.05 * v.max():
            continue
        if n > 2:
            _, bad = curvature_values(c, t)
            if bad.any():
                continue
        return c
