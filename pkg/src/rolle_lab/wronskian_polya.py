"""Wronskian chains, the Polya factorization and the expanded (Riemann) operator of a tuple.

Differential operators are coefficient lists ``[c_0, ..., c_m]`` over Q(t) acting as
``L y = sum_j c_j y^(j)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .exact.linalg import det
from .exact.unipoly import RatFunc, UniPoly
from .samplers import AnalyticSampler

Operator = list[RatFunc]


def _as_poly_tuple(fs: Sequence) -> list[UniPoly]:
    out = []
    for f in fs:
        if isinstance(f, AnalyticSampler) and f.kind == "poly":
            f = f.exact
        if not isinstance(f, UniPoly):
            raise TypeError("exact routines need polynomial entries")
        if not f.is_real:
            raise ValueError("tuple entries must have rational coefficients")
        out.append(f)
    if not out:
        raise ValueError("empty tuple")
    return out


def _wronski_matrix(fs: Sequence[UniPoly], rows: int) -> list[list[RatFunc]]:
    return [[RatFunc(f.derivative(i)) for f in fs] for i in range(rows)]


def _to_poly(r: RatFunc) -> UniPoly:
    if r.den.degree != 0:
        raise ArithmeticError("expected a polynomial")
    return r.num * (1 / r.den.lc)


@dataclass
class WronskianChain:
    """``W_0 = 1, W_1, ..., W_n``; ``W_k`` uses the first ``k`` functions."""

    w: list[UniPoly]

    @property
    def n(self) -> int:
        return len(self.w) - 1

    def __getitem__(self, k: int) -> UniPoly:
        return self.w[k]


def wronskian_chain(fs: Sequence) -> WronskianChain:
    ps = _as_poly_tuple(fs)
    ws = [UniPoly([1])]
    for k in range(1, len(ps) + 1):
        ws.append(_to_poly(det(_wronski_matrix(ps[:k], k))))
    return WronskianChain(ws)


def apply_operator(op: Operator, f) -> RatFunc:
    """``L f`` for a rational function or polynomial ``f``."""
    g = f if isinstance(f, RatFunc) else RatFunc(f)
    total = RatFunc(0)
    for c in op:
        if not c.is_zero():
            total = total + c * g
        g = g.derivative()
    return total


def compose_first_order(r: RatFunc, op: Operator) -> Operator:
    """``(d/dt + r) o L`` in coefficient form."""
    out = [RatFunc(0)] * (len(op) + 1)
    for j, c in enumerate(op):
        out[j] = out[j] + c.derivative() + r * c
        out[j + 1] = out[j + 1] + c
    return out


@dataclass
class PolyaFactorization:
    chain: WronskianChain
    shifts: list[RatFunc]  # D_k = d/dt + shifts[k-1]
    operator: Operator  # expanded D_n ... D_1
    residuals: list[RatFunc]

    @property
    def annihilates(self) -> bool:
        return all(r.is_zero() for r in self.residuals)


def polya_factorization(fs: Sequence) -> PolyaFactorization:
    """``D_k = (W_k / W_{k-1}) d/dt (W_{k-1} / W_k)``, i.e. ``d/dt + g'/g`` with ``g = W_{k-1}/W_k``."""
    ps = _as_poly_tuple(fs)
    chain = wronskian_chain(ps)
    if chain.w[-1].is_zero():
        raise ValueError("linearly dependent tuple")
    shifts = []
    for k in range(1, len(ps) + 1):
        if chain.w[k].is_zero():
            raise ValueError("linearly dependent tuple")
        g = RatFunc(chain.w[k - 1], chain.w[k])
        shifts.append(g.derivative() / g)
    op: Operator = [RatFunc(1)]
    for r in shifts:
        op = compose_first_order(r, op)
    residuals = []
    for f in ps:
        y = RatFunc(f)
        for r in shifts:
            y = y.derivative() + r * y
        residuals.append(y)
    return PolyaFactorization(chain, shifts, op, residuals)


def polya_verify(fs: Sequence) -> bool:
    """True when ``D_n ... D_1`` maps every ``f_i`` to the zero rational function."""
    return polya_factorization(fs).annihilates


def riemann_operator(fs: Sequence) -> list[UniPoly]:
    """Minors ``m_0..m_n`` from expanding the Wronski matrix of ``(f_1, ..., f_n, y)`` along ``y``.

    ``m_k = (-1)^(k+n) det(minor without row k)``, so ``m_n = W_n``.
    """
    ps = _as_poly_tuple(fs)
    n = len(ps)
    full = _wronski_matrix(ps, n + 1)
    coeffs = []
    for k in range(n + 1):
        minor = [row for i, row in enumerate(full) if i != k]
        m = _to_poly(det(minor))
        coeffs.append(m if (k + n) % 2 == 0 else -m)
    if coeffs[-1].is_zero():
        raise ValueError("linearly dependent tuple")
    return coeffs


def riemann_residuals(fs: Sequence, coeffs: Sequence[UniPoly]) -> list[UniPoly]:
    out = []
    for f in _as_poly_tuple(fs):
        total = UniPoly()
        g = f
        for c in coeffs:
            total = total + c * g
            g = g.derivative()
        out.append(total)
    return out


def monic_operator(coeffs: Sequence) -> Operator:
    lead = coeffs[-1] if isinstance(coeffs[-1], RatFunc) else RatFunc(coeffs[-1])
    return [(c if isinstance(c, RatFunc) else RatFunc(c)) / lead for c in coeffs]


def leading_consistency(fs: Sequence) -> bool:
    """The expanded Polya composition times ``W_n`` equals the Riemann operator."""
    fac = polya_factorization(fs)
    riem = riemann_operator(fs)
    wn = RatFunc(fac.chain.w[-1])
    return len(fac.operator) == len(riem) and all(
        c * wn == RatFunc(m) for c, m in zip(fac.operator, riem)
    )


def numeric_riemann_check(fs: Sequence[AnalyticSampler], points: Sequence[float], tol: float = 1e-8) -> bool:
    """Spot-check of the Riemann expansion for black-box tuples with derivative access."""
    n = len(fs)
    pts = np.asarray(points, dtype=float)
    derivs = [[f.derivative(i) if i else f for i in range(n + 1)] for f in fs]
    ok = True
    for x in pts:
        m = np.array([[complex(np.asarray(d[i](np.array([x])))[0]) for d in derivs] for i in range(n + 1)])
        coeffs = []
        for k in range(n + 1):
            minor = np.delete(m, k, axis=0)
            coeffs.append((-1) ** (k + n) * np.linalg.det(minor))
        scale = max(abs(c) for c in coeffs) or 1.0
        for j in range(n):
            val = sum(coeffs[k] * m[k, j] for k in range(n + 1))
            colscale = max(abs(m[k, j]) for k in range(n + 1)) or 1.0
            if abs(val) > tol * scale * colscale:
                ok = False
    return ok


def operator_to_strings(op: Sequence) -> list[str]:
    return [str(c) for c in op]
