from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
import sympy as sp

from rolle_lab import corpora
from rolle_lab.exact.unipoly import RatFunc, UniPoly
from rolle_lab.samplers import AnalyticSampler
from rolle_lab.wronskian_polya import (
    apply_operator,
    leading_consistency,
    numeric_riemann_check,
    polya_factorization,
    polya_verify,
    riemann_operator,
    riemann_residuals,
    wronskian_chain,
)

T = sp.Symbol("t")


def to_sympy(p: UniPoly):
    return sum(sp.Rational(c.numerator, c.denominator) * T ** k for k, c in enumerate(p.coeffs))


def ratfunc_to_sympy(r: RatFunc):
    return to_sympy(r.num) / to_sympy(r.den)


def test_wronskian_examples():
    t = UniPoly.t()
    one = UniPoly([1])
    assert wronskian_chain([one, t]).w == [one, one, one]
    assert wronskian_chain([one, t, t * t])[3] == UniPoly([2])
    assert wronskian_chain([t, t * t])[2] == t * t


def test_wronskian_matches_sympy():
    for i in range(15):
        fs = corpora.polya_triple(3, i)
        ch = wronskian_chain(fs)
        for k in range(1, 4):
            ref = sp.expand(sp.wronskian([to_sympy(f) for f in fs[:k]], T))
            assert sp.expand(to_sympy(ch[k]) - ref) == 0


def test_polya_monomials_give_third_derivative():
    t = UniPoly.t()
    fac = polya_factorization([UniPoly([1]), t, t * t])
    assert fac.annihilates
    op = fac.operator
    assert all(c.is_zero() for c in op[:3]) and not op[3].is_zero()


def test_polya_t_squared_pair():
    t = UniPoly.t()
    fs = [UniPoly([1]), t * t]
    fac = polya_factorization(fs)
    assert fac.annihilates
    for f in fs:
        assert apply_operator(fac.operator, f).is_zero()


def test_polya_operator_kills_triples_in_sympy():
    for i in range(20):
        fs = corpora.polya_triple(5, i)
        fac = polya_factorization(fs)
        assert fac.annihilates
        coeffs = [ratfunc_to_sympy(c) for c in fac.operator]
        for f in fs:
            e = to_sympy(f)
            total = sum(c * sp.diff(e, T, k) for k, c in enumerate(coeffs))
            assert sp.simplify(total) == 0


def test_dependent_tuple_rejected():
    t = UniPoly.t()
    with pytest.raises(ValueError, match="linearly dependent"):
        polya_verify([t, 2 * t])
    with pytest.raises(ValueError, match="linearly dependent"):
        riemann_operator([t, 2 * t])


def test_riemann_examples():
    t = UniPoly.t()
    one = UniPoly([1])
    op = riemann_operator([one, t])
    assert op[0].is_zero() and op[1].is_zero() and op[2] == one
    op = riemann_operator([one, t, t * t])
    assert all(c.is_zero() for c in op[:3]) and op[3].degree == 0
    fs = [t, t * t]
    assert all(r.is_zero() for r in riemann_residuals(fs, riemann_operator(fs)))


def test_leading_consistency_and_permutation():
    t = UniPoly.t()
    fs = [UniPoly([1]), t, t * t]
    perm = [t * t, UniPoly([1]), t]
    assert leading_consistency(fs) and leading_consistency(perm)
    assert polya_factorization(fs).shifts != polya_factorization(perm).shifts
    a, b = riemann_operator(fs), riemann_operator(perm)
    # expansions agree up to the sign of the permutation
    assert a == b or a == [-c for c in b]


def test_numeric_riemann_check_black_box():
    fs = [AnalyticSampler.from_callable(np.sin, derivatives=[np.cos, lambda x: -np.sin(x), lambda x: -np.cos(x)]),
          AnalyticSampler.from_callable(np.cos, derivatives=[lambda x: -np.sin(x), lambda x: -np.cos(x), np.sin])]
    assert numeric_riemann_check(fs, np.linspace(0.1, 3.0, 16))
