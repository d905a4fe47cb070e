from __future__ import annotations

from fractions import Fraction

import pytest
import sympy as sp

from rolle_lab import corpora
from rolle_lab.exact.unipoly import UniPoly
from rolle_lab.oracle import count_real_zeros
from rolle_lab.rolle_univariate import (
    Fewnomial,
    fewnomial_positive_bound,
    multiplicative_triangle,
    positive_root_oracle,
    refined_rolle_bound,
    refined_rolle_from_poly,
    rolle_chain_check,
)


def sympy_positive_roots(p: Fewnomial) -> int:
    t = sp.Symbol("t")
    q = p.normalized()
    expr = sum(sp.Rational(c.numerator, c.denominator) * t ** k for k, c in enumerate(q.coeffs))
    return len({r for r in sp.Poly(expr, t).real_roots() if r > 0})


@pytest.mark.parametrize(
    "terms, bound, roots",
    [({3: 1, 1: -1}, 1, 1), ({5: 7}, 0, 0), ({5: 1, 2: -3, 0: 2}, 2, 2), ({-3: 1, 4: -2}, 1, 1)],
)
def test_descartes_examples(terms, bound, roots):
    p = Fewnomial(terms)
    assert fewnomial_positive_bound(p).bound == bound
    assert sympy_positive_roots(p) == roots
    assert positive_root_oracle(p) == roots


def test_descartes_oracle_matches_sympy_on_corpus():
    for i in range(60):
        p = corpora.fewnomial(5, i)
        assert positive_root_oracle(p) == sympy_positive_roots(p)


def test_refined_rolle_all_positive():
    assert refined_rolle_bound(3, 1, 1, 1, 1).bound == 3


def test_refined_rolle_rejects_inconsistent_signs():
    # f' > 0 at 0 and f' < 0 at 1 forces a zero of f', so Z(f') = 0 is impossible here
    with pytest.raises(ValueError):
        refined_rolle_bound(0, 1, 1, 1, -1)
    assert refined_rolle_bound(1, 1, 1, 1, -1).bound == 0


def test_refined_rolle_on_perturbed_square():
    for k in range(1, 30):
        eps = Fraction(k, 60)
        f = UniPoly([Fraction(1, 4), -1, 1]) + UniPoly([-eps / 10, eps])  # (t - 1/2)^2 + eps (t - 1/10)
        if f(Fraction(0)) == 0 or f(Fraction(1)) == 0 or f.derivative()(Fraction(0)) == 0:
            continue
        cert = refined_rolle_from_poly(f)
        assert count_real_zeros(f.eval_numeric, 0.0, 1.0).count <= cert.bound


def test_rolle_chain_examples():
    f = UniPoly.from_roots([0, 1, 2])
    rep = rolle_chain_check(f, -1, 3)
    assert [r.z for r in rep.rows] == [3, 2, 1, 0] and rep.all_hold
    g = UniPoly.from_roots([1, 1, 1])
    rep = rolle_chain_check(g, 0, 2)
    assert rep.rows[0].n == 3 and rep.rows[1].n == 2


def test_multiplicative_triangle_examples():
    f = UniPoly.from_roots([0, 1])
    g = UniPoly.from_roots([1, 2])
    tri = multiplicative_triangle(f, g, -1, 3)
    assert tri["Z"] == (2, 2, 3) and tri["N"] == (2, 2, 4)
    assert tri["Z_holds"] and tri["N_holds"]
