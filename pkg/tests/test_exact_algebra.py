from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np
import pytest
import sympy as sp

from rolle_lab.exact.interval import Interval, IntervalBox, interval_eval
from rolle_lab.exact.linalg import det, nullspace, rank, solve
from rolle_lab.exact.multipoly import MultiPoly
from rolle_lab.exact.scalars import ComplexRational, parse_complex_rational, sqrt_bounds
from rolle_lab.exact.unipoly import (
    RatFunc,
    UniPoly,
    certified_sup,
    isolate_real_roots,
    real_root_count,
    root_count_with_multiplicity,
    sturm_root_count,
)
from rolle_lab.oracle import instance_rng

T = sp.Symbol("t")


def to_sympy(p: UniPoly):
    return sum(sp.Rational(c.numerator, c.denominator) * T ** k for k, c in enumerate(p.coeffs))


def random_poly(rng, degree: int) -> UniPoly:
    return UniPoly([Fraction(int(rng.integers(-20, 21)), int(rng.integers(1, 6))) for _ in range(degree + 1)])


# -- derivatives ----------------------------------------------------------

def test_derivative_examples():
    t = UniPoly.t()
    assert (t ** 3 - t).derivative() == UniPoly([-1, 0, 3])
    assert UniPoly([5]).derivative().is_zero()
    x, y = MultiPoly.variables(2)
    assert (x ** 2 * y).derivative(0) == 2 * x * y


# -- Sturm ----------------------------------------------------------------

def test_sturm_examples():
    p = UniPoly.from_roots([1, 2, 3])
    assert sturm_root_count(p, 0, 10) == 3
    assert sturm_root_count(UniPoly([1, 0, 1]), -5, 5) == 0


def test_sturm_quintic_against_sympy():
    p = UniPoly([2, 0, -3, 0, 0, 1])  # t^5 - 3t^2 + 2
    oracle = len([r for r in sp.Poly(to_sympy(p), T).real_roots() if r > 0])
    assert oracle == 2
    assert sturm_root_count(p, 0, float("inf")) == oracle


def test_sturm_random_corpus_against_sympy():
    for i in range(40):
        rng = instance_rng(11, i)
        p = random_poly(rng, 9)
        if p.is_zero():
            continue
        roots = sp.Poly(to_sympy(p), T).real_roots()
        distinct = {r for r in roots if -3 <= r <= 3}
        assert real_root_count(p, Fraction(-3), Fraction(3)) == len(distinct)
        assert root_count_with_multiplicity(p, Fraction(-3), Fraction(3)) == len([r for r in roots if -3 <= r <= 3])


def test_multiplicity_count():
    p = UniPoly.from_roots([1, 1, 1])
    assert root_count_with_multiplicity(p, 0, 2) == 3
    assert root_count_with_multiplicity(p.derivative(), 0, 2) == 2
    assert real_root_count(p, 0, 2) == 1


def test_isolation_brackets_each_root():
    p = UniPoly.from_roots([Fraction(1, 3), Fraction(1, 2), 2])
    ivs = isolate_real_roots(p, 0, 3)
    assert len(ivs) == 3
    for (lo, hi), r in zip(ivs, [Fraction(1, 3), Fraction(1, 2), 2]):
        assert lo <= r <= hi


# -- certified sup ----------------------------------------------------------

@pytest.mark.parametrize(
    "coeffs, a, b, value",
    [([0, 1], 0, 1, Fraction(1)), ([0, -1, 1], 0, 1, Fraction(1, 4)), ([0, -3, 0, 1], -2, 2, Fraction(2))],
)
def test_certified_sup_examples(coeffs, a, b, value):
    lo, hi = certified_sup(UniPoly(coeffs), a, b)
    assert lo <= value <= hi
    assert hi - lo < Fraction(1, 10 ** 6)


def test_certified_sup_dominates_grid():
    for i in range(20):
        p = random_poly(instance_rng(12, i), 6)
        lo, hi = certified_sup(p, -1, 1)
        grid = np.linspace(-1, 1, 2001)
        assert lo <= hi
        assert float(np.max(np.abs(p.eval_numeric(grid)))) <= float(hi) + 1e-12


# -- intervals -------------------------------------------------------------

def test_interval_eval_examples():
    x, y = MultiPoly.variables(2)
    box = IntervalBox([Interval(0, 1), Interval(0, 1)])
    e = interval_eval(x + y, box)
    assert e.lo <= 0 and e.hi >= 2
    sq = interval_eval(x ** 2, IntervalBox([Interval(-1, 1), Interval(0, 0)]))
    assert sq.lo <= 0 and sq.hi >= 1
    e = interval_eval(x * y - x, box)
    xs = np.linspace(0, 1, 101)
    vals = [a * b - a for a, b in itertools.product(xs, xs)]
    assert float(e.lo) <= min(vals) and float(e.hi) >= max(vals)


# -- scalars and linear algebra --------------------------------------------

def test_complex_rational_parse_and_arithmetic():
    z = parse_complex_rational("1/2 - 3/4i")
    assert isinstance(z, ComplexRational)
    assert z * z.conjugate() == Fraction(1, 4) + Fraction(9, 16)
    assert parse_complex_rational("3/7") == Fraction(3, 7)


def test_sqrt_bounds_bracket():
    lo, hi = sqrt_bounds(Fraction(2), 60)
    assert lo * lo <= 2 <= hi * hi
    assert hi - lo <= Fraction(1, 2 ** 59)


def test_linear_algebra_against_sympy():
    for i in range(20):
        rng = instance_rng(13, i)
        rows = [[Fraction(int(rng.integers(-3, 4))) for _ in range(5)] for _ in range(4)]
        if i % 3 == 0:
            rows[3] = [a + b for a, b in zip(rows[0], rows[1])]
        m = sp.Matrix(rows)
        assert rank(rows) == m.rank()
        for v in nullspace(rows, 5):
            assert all(sum(r[j] * v[j] for j in range(5)) == 0 for r in rows)
    sq = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(3)]]
    assert det(sq) == 5
    assert solve(sq, [Fraction(3), Fraction(4)]) == [Fraction(1), Fraction(1)]


def test_ratfunc_reduces():
    t = UniPoly.t()
    r = RatFunc(t * t - 1, t - 1)
    assert r == RatFunc(t + 1)
    assert str(r) == str(t + 1)
