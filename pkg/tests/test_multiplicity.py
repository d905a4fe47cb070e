from __future__ import annotations

import mpmath
import pytest
import sympy as sp

from rolle_lab import corpora
from rolle_lab.exact.multipoly import MultiPoly
from rolle_lab.exact.unipoly import UniPoly
from rolle_lab.multiplicity import (
    MapGerm,
    corank_jet_test,
    corank_threshold_multiplicity,
    local_algebra_multiplicity,
    multiplicity,
    multiplicity_operator_signal,
    orders,
    univariate_mult,
)
from rolle_lab.oracle import instance_rng

X, Y = MultiPoly.variables(2)
(Z,) = MultiPoly.variables(1)
SX, SY = sp.symbols("x y")


def to_sympy(p: MultiPoly):
    return sum(sp.Rational(c.numerator, c.denominator) * SX ** a * SY ** b for (a, b), c in p.terms.items())


DPS = 60


def poly_roots(coeffs: list) -> list:
    coeffs = list(coeffs)
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
    if len(coeffs) < 2:
        return []
    return list(mpmath.polyroots(coeffs, maxsteps=800, extraprec=40 * len(coeffs)))


def perturbed_solution_count(f1: MultiPoly, f2: MultiPoly, seed: int, eps_scale=sp.Rational(1, 10 ** 12), radius=0.2) -> int:
    """Solutions of F = eps near the origin, found by eliminating y with a resultant.

    A shear x -> x + y/3 separates the x-projections of distinct solutions.
    Root finding and residuals use 60-digit arithmetic.
    """
    rng = instance_rng(seed, 0)
    e1 = eps_scale * sp.Rational(int(rng.integers(1, 100)), 97)
    e2 = eps_scale * sp.Rational(int(rng.integers(1, 100)), 89)
    shear = {SX: SX + SY / 3}
    g1 = sp.expand((to_sympy(f1) - e1).subs(shear, simultaneous=True))
    g2 = sp.expand((to_sympy(f2) - e2).subs(shear, simultaneous=True))
    res = sp.Poly(sp.resultant(g1, g2, SY), SX)
    mp = lambda c: mpmath.mpf(sp.Rational(c).p) / sp.Rational(c).q
    in_y = [sp.Poly(g, SY) for g in (g1, g2)]
    n1, n2 = (sp.lambdify((SX, SY), g, "mpmath") for g in (g1, g2))
    tol = float(eps_scale) * 1e-6
    count = 0
    with mpmath.workdps(DPS):
        for xr in poly_roots([mp(c) for c in res.all_coeffs()]):
            if abs(xr) >= radius:
                continue
            ys = []
            for p in in_y:
                cs = [sp.lambdify(SX, c, "mpmath")(xr) for c in p.all_coeffs()]
                ys.extend(poly_roots(cs))
            for yr in ys:
                if abs(yr) < radius and max(abs(n1(xr, yr)), abs(n2(xr, yr))) < tol:
                    count += 1
                    break
    return count


@pytest.mark.parametrize("coeffs, k", [([0, 0, 0, 1], 3), ([1, 1], 0), ([0, 0, 1, 0, 0, -1], 2)])
def test_univariate_mult(coeffs, k):
    assert univariate_mult(UniPoly(coeffs)) == k
    assert univariate_mult(coeffs) == k


def test_univariate_mult_all_zero():
    with pytest.raises(ValueError, match="truncation"):
        univariate_mult([0, 0, 0])


@pytest.mark.parametrize("fs, mu", [((X, Y), 1), ((X ** 2, Y ** 3), 6), ((X ** 2 - Y ** 3, Y ** 2), 4)])
def test_mu_examples_both_methods(fs, mu):
    rep = multiplicity(MapGerm(fs))
    assert rep["local_algebra"].mu == mu
    assert rep["corank_threshold"].mu == mu


def test_non_isolated_is_capped():
    rep = local_algebra_multiplicity(MapGerm((X * Y, X * Y)), cap=5)
    assert rep.capped and rep.display() == f">= {rep.cap}"


def test_germ_validation():
    with pytest.raises(ValueError):
        MapGerm((X + 1, Y))
    with pytest.raises(ValueError):
        MapGerm((X,))


def test_corank_examples():
    assert corank_jet_test(MapGerm((Z ** 2,)), 2) == (2, True)
    assert corank_jet_test(MapGerm((Z ** 2,)), 1) == (2, False)
    assert corank_jet_test(MapGerm((X, Y)), 1) == (1, True)
    assert corank_jet_test(MapGerm((X ** 2, Y ** 3)), 5) == (6, False)
    assert corank_jet_test(MapGerm((X ** 2, Y ** 3)), 6) == (6, True)


def test_signal_examples():
    vanish, mag, _ = multiplicity_operator_signal(MapGerm((Z - Z ** 2,)), 1)
    assert not vanish and mag > 0
    vanish, mag, _ = multiplicity_operator_signal(MapGerm((X, Y)), 0)
    assert vanish and mag == 0
    vanish, mag, _ = multiplicity_operator_signal(MapGerm((X ** 2, Y ** 3)), 5)
    assert vanish and mag == 0


def test_order_differs_from_multiplicity():
    g = MapGerm((X ** 2, Y ** 2))
    assert min(orders(g)) == 2
    assert local_algebra_multiplicity(g).mu == 4


def test_threshold_equivalence_on_corpus():
    for i in range(12):
        g = MapGerm(corpora.germ_instance(42, i))
        a = local_algebra_multiplicity(g).mu
        assert corank_threshold_multiplicity(g).mu == a
        assert min(orders(g)) <= a


@pytest.mark.parametrize("fs, mu", [((X, Y), 1), ((X ** 2, Y ** 3), 6), ((X ** 2 - Y ** 3, Y ** 2), 4)])
def test_geometric_oracle_examples(fs, mu):
    assert perturbed_solution_count(*fs, seed=1) == mu


def test_geometric_oracle_on_corpus():
    for i in range(30):
        f1, f2 = corpora.germ_instance(42, i)
        mu = local_algebra_multiplicity(MapGerm((f1, f2))).mu
        assert perturbed_solution_count(f1, f2, seed=i) == mu, i


def test_local_rolle_corpus():
    for i in range(100):
        f = corpora.local_rolle_poly(42, i)
        df = f.derivative()
        if df.is_zero():
            continue
        assert univariate_mult(f) <= univariate_mult(df) + 1
