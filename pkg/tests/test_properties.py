from __future__ import annotations

from fractions import Fraction

from hypothesis import assume, given, settings
from hypothesis import strategies as st

from rolle_lab.complex_counting import jensen_zero_bound
from rolle_lab.exact.multipoly import MultiPoly
from rolle_lab.exact.unipoly import UniPoly, real_root_count
from rolle_lab.fuchsian_petrov import PetrovOperatorSpec, PseudomonomialSum, petrov_apply
from rolle_lab.meandering import lie_chain
from rolle_lab.multiplicity import univariate_mult
from rolle_lab.oracle import ZeroOnContour, count_disk_zeros
from rolle_lab.rolle_univariate import (
    Fewnomial,
    fewnomial_positive_bound,
    multiplicative_triangle,
    positive_root_oracle,
    rolle_chain_check,
)
from rolle_lab.samplers import PolyVectorField
from rolle_lab.wronskian_polya import polya_verify, riemann_operator, riemann_residuals, wronskian_chain

SETTINGS = settings(max_examples=60, deadline=None, derandomize=True)

rationals = st.fractions(min_value=-8, max_value=8, max_denominator=6)


def polys(min_degree=0, max_degree=6):
    return st.lists(rationals, min_size=min_degree + 1, max_size=max_degree + 1).map(UniPoly).filter(
        lambda p: not p.is_zero()
    )


@SETTINGS
@given(polys(1, 7))
def test_rolle_chain_holds(f):
    assert rolle_chain_check(f, -12, 12).all_hold


@SETTINGS
@given(polys(0, 4), polys(0, 4))
def test_multiplicities_add(f, g):
    tri = multiplicative_triangle(f, g, -9, 9)
    assert tri["N_holds"] and tri["N"][2] == tri["N"][0] + tri["N"][1]
    assert tri["Z_holds"]


@SETTINGS
@given(st.dictionaries(st.integers(0, 30), st.integers(-9, 9).filter(bool), min_size=1, max_size=5))
def test_descartes_dominates(terms):
    p = Fewnomial(terms)
    assert positive_root_oracle(p) <= fewnomial_positive_bound(p).bound <= len(terms) - 1


@SETTINGS
@given(polys(1, 6))
def test_local_rolle(f):
    df = f.derivative()
    assume(not df.is_zero())
    assert univariate_mult(f) <= univariate_mult(df) + 1


@SETTINGS
@given(polys(1, 6))
def test_sturm_counts_are_monotone_in_interval(f):
    inner = real_root_count(f, Fraction(-1), Fraction(1))
    outer = real_root_count(f, Fraction(-3), Fraction(3))
    assert 0 <= inner <= outer <= f.degree


@settings(max_examples=30, deadline=None, derandomize=True)
@given(polys(1, 5), st.fractions(min_value=Fraction(1, 8), max_value=Fraction(7, 8), max_denominator=8))
def test_jensen_dominates_winding(f, r):
    assume(f(Fraction(0)) != 0)
    try:
        w = count_disk_zeros(f, 0, r).winding
    except ZeroOnContour:
        assume(False)
    assert jensen_zero_bound(f, r).bound >= w


@settings(max_examples=25, deadline=None, derandomize=True)
@given(st.lists(polys(0, 4), min_size=2, max_size=3))
def test_wronskian_operators_annihilate(fs):
    assume(not wronskian_chain(fs).w[-1].is_zero())
    assert polya_verify(fs)
    assert all(r.is_zero() for r in riemann_residuals(fs, riemann_operator(fs)))


small = st.fractions(min_value=-2, max_value=2, max_denominator=3)


@settings(max_examples=30, deadline=None, derandomize=True)
@given(st.lists(st.lists(small, min_size=6, max_size=6), min_size=2, max_size=2), small, small)
def test_lie_degree_growth(coeffs, a, b):
    x, y = MultiPoly.variables(2)
    mons = [MultiPoly.constant(2, 1), x, y, x * x, x * y, y * y]
    comps = tuple(sum((c * m for c, m in zip(row, mons)), MultiPoly(2, {})) for row in coeffs)
    v = PolyVectorField(comps)
    d = max(v.degree, 1)
    u0 = x + a * y + b
    for k, u in enumerate(lie_chain(u0, v, 4)):
        assert u.degree <= 1 + k * (d - 1)


@SETTINGS
@given(st.fractions(min_value=-3, max_value=3, max_denominator=4), st.integers(1, 5))
def test_petrov_degree_drop(lam, k):
    g = petrov_apply(PetrovOperatorSpec(lam), PseudomonomialSum.monomial(lam, k))
    assert g.degree_in(lam) == k - 1
    for _ in range(k):
        g = petrov_apply(PetrovOperatorSpec(lam), g) if not g.is_zero() else g
    assert g.is_zero()
