"""Zero bounds for linear ODEs with bounded coefficients.

For ``y^(n) + a_1 y^(n-1) + ... + a_n y = 0`` with ``|a_k| <= A_k``, the quantity
``S(l) = sum_k A_k l^k / k!`` controls oscillation: when ``S(l) < 1`` no solution has
more than ``n - 1`` zeros on a segment (or convex region) of length (diameter) ``l``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .certificate import BoundCertificate, check
from .exact.scalars import PI_UPPER, to_fraction
from .exact.unipoly import UniPoly, certified_sup, root_count_with_multiplicity
from .samplers import CircleContour, PolygonContour

DLVP_THETA = 1 - Fraction(1, 1 << 20)
HALF_THETA = Fraction(1, 2) * DLVP_THETA
BISECTIONS = 64
SQRT_HALF_LOWER = Fraction(7071, 10000)  # 0.7071 < 1/sqrt(2)


@dataclass(frozen=True)
class LinearOdeSpec:
    """Order ``n``, coefficient sup-bounds ``A_1..A_n`` and a real length ``L`` or a complex domain."""

    order: int
    bounds: tuple
    length: Fraction | None = None
    domain: CircleContour | PolygonContour | None = None

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be at least 1")
        a = tuple(to_fraction(x) for x in self.bounds)
        if len(a) != self.order:
            raise ValueError(f"expected {self.order} coefficient bounds, got {len(a)}")
        if any(x < 0 for x in a):
            raise ValueError("coefficient bounds must be nonnegative")
        object.__setattr__(self, "bounds", a)
        if self.length is not None:
            L = to_fraction(self.length)
            if L <= 0:
                raise ValueError("length must be positive")
            object.__setattr__(self, "length", L)


def dlvp_sum(bounds: Sequence, ell) -> Fraction:
    """``sum_{k=1..n} A_k l^k / k!`` evaluated exactly."""
    ell = to_fraction(ell)
    total, power, fact = Fraction(0), Fraction(1), 1
    for k, a in enumerate(bounds, start=1):
        power *= ell
        fact *= k
        total += to_fraction(a) * power / fact
    return total


def dlvp_admissible_length(bounds: Sequence, theta=DLVP_THETA) -> Fraction | None:
    """Largest dyadic ``l`` (after 64 bisections) with ``S(l) <= theta``; None when all ``A_k = 0``."""
    theta = to_fraction(theta)
    if not 0 < theta <= 1:
        raise ValueError("margin theta must lie in (0, 1]")
    bounds = [to_fraction(a) for a in bounds]
    if any(a < 0 for a in bounds):
        raise ValueError("coefficient bounds must be nonnegative")
    if all(a == 0 for a in bounds):
        return None
    lo, hi = Fraction(0), Fraction(1)
    if dlvp_sum(bounds, hi) <= theta:
        while dlvp_sum(bounds, hi) <= theta:
            lo, hi = hi, hi * 2
    else:
        while dlvp_sum(bounds, hi / 2) > theta:
            hi /= 2
        lo = hi / 2
    for _ in range(BISECTIONS):
        mid = (lo + hi) / 2
        if dlvp_sum(bounds, mid) <= theta:
            lo = mid
        else:
            hi = mid
    return lo


def _ceil_div(a: Fraction, b: Fraction) -> int:
    return math.ceil(a / b)


def dlvp_zero_bound(spec: LinearOdeSpec) -> BoundCertificate:
    """Zeros of any nontrivial solution on ``[0, L]``: ``m (n - 1)`` with ``m = ceil(L / l*)``."""
    if spec.length is None:
        raise ValueError("real segment length required")
    n, A, L = spec.order, spec.bounds, spec.length
    ell = dlvp_admissible_length(A, DLVP_THETA)
    trace = [f"summation over k = 1..{n} of A_k l^k / k!", f"theta = 1 - 2^-20"]
    if ell is None:
        trace.append("all A_k vanish: solutions are polynomials of degree < n")
        return BoundCertificate(
            n - 1, "dlvp", "de la Vallee Poussin oscillation bound", [], trace,
            extras={"segments": 1, "admissible_length": None},
        )
    m = _ceil_div(L, ell)
    s = dlvp_sum(A, ell)
    hyps = [
        check("S(l*) <= theta", s, "<=", DLVP_THETA),
        check("m * l* >= L", m * ell, ">=", L),
    ]
    trace += [
        f"l* = {ell} (~{float(ell):.12g})",
        f"m = ceil(L / l*) = {m}",
        f"bound = m * (n - 1) = {m} * {n - 1}",
    ]
    return BoundCertificate(
        m * (n - 1), "dlvp", "de la Vallee Poussin oscillation bound", hyps, trace,
        extras={"segments": m, "admissible_length": ell},
    )


@dataclass
class SymplexVerdict:
    holds: bool
    lhs: tuple[Fraction, Fraction]
    rhs: tuple[Fraction, Fraction]
    roots: int

    def to_dict(self) -> dict:
        from .certificate import jsonable

        return {"holds": self.holds, "lhs": jsonable(self.lhs), "rhs": jsonable(self.rhs), "roots": self.roots}


def symplex_inequality_check(f: UniPoly, n: int, ell, depth: int = 32) -> SymplexVerdict:
    """Check ``||f|| <= l^n / n! * ||f^(n)||`` on ``[0, l]`` for ``f`` with ``n + 1`` roots there.

    ``lhs`` and ``rhs`` are certified ``(lo, hi)`` enclosures of the two sides; the
    verdict is the certified comparison ``lhs.hi <= rhs.lo`` (refined when needed).
    """
    ell = to_fraction(ell)
    if ell <= 0:
        raise ValueError("segment length must be positive")
    roots = root_count_with_multiplicity(f, 0, ell)
    if roots < n + 1:
        raise ValueError(f"insufficient roots: {roots} < {n + 1}")
    scale = ell ** n / math.factorial(n)
    dn = f.derivative(n)
    for d in (depth, depth * 2, depth * 4):
        lhs = certified_sup(f, 0, ell, d)
        s = certified_sup(dn, 0, ell, d)
        rhs = (scale * s[0], scale * s[1])
        if lhs[1] <= rhs[0]:
            return SymplexVerdict(True, lhs, rhs, roots)
        if lhs[0] > rhs[1]:
            return SymplexVerdict(False, lhs, rhs, roots)
    return SymplexVerdict(lhs[1] <= rhs[1], lhs, rhs, roots)


# ---------------------------------------------------------------------------
# complex domains
# ---------------------------------------------------------------------------

def _box_meets_disk(x0, y0, s, cx, cy, r2) -> bool:
    dx = max(x0 - cx, Fraction(0), cx - (x0 + s))
    dy = max(y0 - cy, Fraction(0), cy - (y0 + s))
    return dx * dx + dy * dy <= r2


def _box_meets_convex_polygon(x0, y0, s, verts) -> bool:
    box = [(x0, y0), (x0 + s, y0), (x0 + s, y0 + s), (x0, y0 + s)]
    axes = [(Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))]
    for i in range(len(verts)):
        a, b = verts[i], verts[(i + 1) % len(verts)]
        axes.append((-(b[1] - a[1]), b[0] - a[0]))
    for ax in axes:
        pb = [ax[0] * x + ax[1] * y for x, y in box]
        pp = [ax[0] * x + ax[1] * y for x, y in verts]
        if max(pb) < min(pp) or max(pp) < min(pb):
            return False
    return True


def covering_cells(domain, side: Fraction) -> int:
    """Number of grid squares of the given side meeting the closed domain (exact tests)."""
    if isinstance(domain, CircleContour):
        cx, cy, r = domain.center.re, domain.center.im, domain.radius
        xmin, ymin, xmax, ymax = cx - r, cy - r, cx + r, cy + r
        test = lambda x0, y0: _box_meets_disk(x0, y0, side, cx, cy, r * r)  # noqa: E731
    elif isinstance(domain, PolygonContour):
        if not domain.is_convex:
            raise ValueError("domain must be convex")
        verts = [(v.re, v.im) for v in domain.vertices]
        xmin, xmax = min(v[0] for v in verts), max(v[0] for v in verts)
        ymin, ymax = min(v[1] for v in verts), max(v[1] for v in verts)
        test = lambda x0, y0: _box_meets_convex_polygon(x0, y0, side, verts)  # noqa: E731
    else:
        raise ValueError("unbounded or unsupported domain descriptor")
    nx = max(1, math.ceil((xmax - xmin) / side))
    ny = max(1, math.ceil((ymax - ymin) / side))
    count = 0
    for i in range(nx):
        for j in range(ny):
            if test(xmin + i * side, ymin + j * side):
                count += 1
    return count


def kim_zero_bound(spec: LinearOdeSpec) -> BoundCertificate:
    """Zeros in a bounded convex domain of any solution with holomorphic bounded coefficients."""
    domain = spec.domain
    if domain is None:
        raise ValueError("unbounded domain descriptor: a disk or convex polygon is required")
    if isinstance(domain, PolygonContour) and not domain.is_convex:
        raise ValueError("domain must be convex")
    n, A = spec.order, spec.bounds
    diam = domain.diameter_upper()
    s = dlvp_sum(A, diam)
    theorem = "Kim's complex oscillation theorem"
    trace = [f"diameter <= {diam}", f"S(diameter) = {s}"]
    if n == 1:
        trace.append("first-order equations have nonvanishing solutions")
        return BoundCertificate(0, "kim", theorem, [], trace, extras={"cells": 1})
    if s < 1:
        return BoundCertificate(
            n - 1, "kim", theorem, [check("S(diameter) < 1", s, "<", 1)], trace, extras={"cells": 1}
        )
    ell = dlvp_admissible_length(A, DLVP_THETA)
    side = ell * SQRT_HALF_LOWER
    cells = covering_cells(domain, side)
    diag2 = 2 * side * side
    hyps = [
        check("cell diameter^2 < l*^2", diag2, "<", ell * ell),
        check("S(l*) <= theta", dlvp_sum(A, ell), "<=", DLVP_THETA),
    ]
    trace += [
        f"l* = {float(ell):.12g}, cell side = l* * 0.7071 = {float(side):.12g}",
        f"cells meeting the domain = {cells}",
        f"bound = cells * (n - 1) = {cells * (n - 1)}",
    ]
    return BoundCertificate(cells * (n - 1), "kim", theorem, hyps, trace,
                            extras={"cells": cells, "admissible_length": ell, "cell_side": side})


def complex_variation_bound(spec: LinearOdeSpec) -> BoundCertificate:
    """Bound on the argument variation of any solution along ``[0, l]``, in units of pi.

    The certificate's ``bound`` is the integer ``m (n + 1)``; the variation is at most
    ``m (n + 1) pi`` radians, recorded in ``extras["radians_upper"]``.
    """
    if spec.length is None:
        raise ValueError("segment length required")
    n, A, L = spec.order, spec.bounds, spec.length
    s = dlvp_sum(A, L)
    theorem = "argument variation bound for linear equations with complex coefficients"
    trace = [f"S(l) = {s}"]
    if s < Fraction(1, 2):
        m = 1
        hyps = [check("S(l) < 1/2", s, "<", Fraction(1, 2))]
        ell = None
    else:
        ell = dlvp_admissible_length(A, HALF_THETA)
        m = _ceil_div(L, ell)
        hyps = [
            check("S(l*) <= theta/2", dlvp_sum(A, ell), "<=", HALF_THETA),
            check("m * l* >= l", m * ell, ">=", L),
        ]
        trace.append(f"l* = {float(ell):.12g}, m = ceil(l / l*) = {m}")
    trace.append(f"variation <= m (n + 1) pi = {m * (n + 1)} pi")
    return BoundCertificate(
        m * (n + 1), "argvar", theorem, hyps, trace, unit="pi radians",
        extras={"segments": m, "radians_upper": m * (n + 1) * PI_UPPER, "admissible_length": ell},
    )
