"""Intersection multiplicity of polynomial map germs at the origin.

Two routes share the jet matrix ``E(a_1..a_n) = j^k(sum a_i f_i)`` but differ in how they
read it: the dual-space route stops when the annihilator dimension stops growing, the
corank route looks for the first ``k`` with ``corank <= k``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exact.linalg import greedy_pivot_minor, rank
from .exact.multipoly import MultiPoly, jet_dimension, monomials_upto
from .exact.scalars import to_fraction
from .exact.unipoly import UniPoly


@dataclass(frozen=True)
class MapGerm:
    components: tuple

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise ValueError("empty germ")
        n = len(comps)
        for f in comps:
            if not isinstance(f, MultiPoly):
                raise TypeError("components must be MultiPoly")
            if f.nvars != n:
                raise ValueError("square system required: n maps in n variables")
            if f.constant_term() != 0:
                raise ValueError("components must vanish at the origin")
        object.__setattr__(self, "components", comps)

    @property
    def n(self) -> int:
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __str__(self) -> str:
        return "(" + ", ".join(str(f) for f in self.components) + ")"


def as_germ(fs) -> MapGerm:
    return fs if isinstance(fs, MapGerm) else MapGerm(tuple(fs))


@dataclass
class MultiplicityReport:
    mu: int | None
    method: str
    history: list[int] = field(default_factory=list)
    capped: bool = False
    cap: int | None = None

    def display(self) -> str:
        return f">= {self.cap}" if self.capped else str(self.mu)

    def to_dict(self) -> dict:
        return {"mu": self.display(), "method": self.method, "history": self.history, "capped": self.capped}


def univariate_mult(f) -> int:
    """Index of the first nonzero Taylor coefficient at 0."""
    if isinstance(f, UniPoly):
        coeffs = list(f.coeffs)
    else:
        coeffs = [to_fraction(c) for c in f]
    for k, c in enumerate(coeffs):
        if c != 0:
            return k
    raise ValueError(f">= truncation order {len(coeffs)}")


def jet_matrix(germ, k: int) -> list[list[Fraction]]:
    """Matrix of ``E: J^n -> J`` at order ``k`` in the grlex monomial basis.

    Rows are the ``binomial(n+k, n)`` monomials of ``J_k``; columns are ``(i, beta)`` pairs,
    ``n * dim J_k`` of them, holding ``j^k(x^beta f_i)``.
    """
    germ = as_germ(germ)
    n = germ.n
    basis = monomials_upto(n, k)
    index = {m: r for r, m in enumerate(basis)}
    cols = []
    for f in germ:
        for beta in basis:
            col = [Fraction(0)] * len(basis)
            for alpha, c in f.terms.items():
                key = tuple(a + b for a, b in zip(alpha, beta))
                r = index.get(key)
                if r is not None:
                    col[r] = c
            cols.append(col)
    return [[cols[j][i] for j in range(len(cols))] for i in range(len(basis))]


def jet_corank(germ, k: int) -> int:
    germ = as_germ(germ)
    return jet_dimension(germ.n, k) - rank(jet_matrix(germ, k))


def macaulay_matrix(germ, k: int) -> list[list[Fraction]]:
    """Rows ``x^beta f_i`` (``|beta| < k``) truncated at degree ``k``; its kernel is the order-``k`` dual space."""
    germ = as_germ(germ)
    basis = monomials_upto(germ.n, k)
    index = {m: r for r, m in enumerate(basis)}
    rows = []
    for f in germ:
        if f.is_zero() or f.order() > k:
            continue
        for beta in monomials_upto(germ.n, k - f.order()):
            row = [Fraction(0)] * len(basis)
            for alpha, c in f.terms.items():
                r = index.get(tuple(a + b for a, b in zip(alpha, beta)))
                if r is not None:
                    row[r] = c
            if any(row):
                rows.append(row)
    return rows


def dual_space_dimension(germ, k: int) -> int:
    germ = as_germ(germ)
    rows = macaulay_matrix(germ, k)
    return jet_dimension(germ.n, k) - (rank(rows) if rows else 0)


def local_algebra_multiplicity(germ, cap: int = 12, stationary: int = 1) -> MultiplicityReport:
    """``dim O/<F>`` via the growth of the dual space; stops after ``stationary`` non-growing steps."""
    germ = as_germ(germ)
    history: list[int] = []
    still = 0
    for k in range(cap + 1):
        d = dual_space_dimension(germ, k)
        if history and d == history[-1]:
            still += 1
            if still >= stationary:
                history.append(d)
                return MultiplicityReport(d, "local-algebra", history)
        else:
            still = 0
        history.append(d)
    return MultiplicityReport(None, "local-algebra", history, capped=True, cap=history[-1])


def corank_jet_test(germ, k: int) -> tuple[int, bool]:
    c = jet_corank(germ, k)
    return c, c <= k


def corank_threshold_multiplicity(germ, cap: int = 12) -> MultiplicityReport:
    germ = as_germ(germ)
    history = []
    for k in range(cap + 1):
        c, ok = corank_jet_test(germ, k)
        history.append(c)
        if ok:
            return MultiplicityReport(k, "corank-threshold", history)
    return MultiplicityReport(None, "corank-threshold", history, capped=True, cap=cap)


def multiplicity_operator_signal(germ, k: int) -> tuple[bool, Fraction, list[str]]:
    """``(all size-(dim J - k) minors vanish, |det| of a greedily pivoted such minor)``.

    Minors are taken in the coefficient basis, so for ``n = 1`` the nonzero magnitude is a
    product of Taylor coefficients of ``f`` rather than ``|f^(k)(0)|`` itself.
    """
    germ = as_germ(germ)
    e = jet_matrix(germ, k)
    dim = jet_dimension(germ.n, k)
    size = dim - k
    trace = [f"dim J_{k} = {dim}", f"minor size = {size}"]
    if size <= 0:
        trace.append("empty minor: determinant 1 by convention")
        return False, Fraction(1), trace
    rows, cols, d = greedy_pivot_minor(e, size)
    vanish = d == 0
    trace.append(f"pivot rows {rows}, columns {cols}")
    if germ.n == 1 and not vanish:
        trace.append("n = 1: coefficient-basis minor, |f^(k)(0)|/k! up to products of lower Taylor coefficients")
    return vanish, abs(d), trace


def orders(germ) -> list[int]:
    return [f.order() for f in as_germ(germ) if not f.is_zero()]


def multiplicity(germ, cap: int = 12) -> dict:
    """Both routes; raises if they disagree."""
    germ = as_germ(germ)
    a = local_algebra_multiplicity(germ, cap)
    b = corank_threshold_multiplicity(germ, cap)
    if not a.capped and not b.capped and a.mu != b.mu:
        raise ArithmeticError(f"methods disagree: {a.mu} vs {b.mu}")
    return {"local_algebra": a, "corank_threshold": b}
