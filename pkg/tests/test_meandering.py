from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest

from rolle_lab import corpora
from rolle_lab.exact.multipoly import MultiPoly
from rolle_lab.meandering import (
    ChainError,
    chain_stabilize,
    lie_chain,
    lie_derivative,
    meandering_bound,
    tangency_order,
)
from rolle_lab.oracle import integrate_field
from rolle_lab.samplers import PolyVectorField

X, Y = MultiPoly.variables(2)
ZERO = MultiPoly(2, {})
ONE = MultiPoly.constant(2, 1)
ROT = PolyVectorField((Y, -X))


def test_lie_examples():
    assert lie_derivative(X, ROT) == Y
    assert lie_derivative(X * X + Y * Y, ROT).is_zero()
    assert lie_derivative(Y, PolyVectorField((ONE, X))) == X


def test_lie_dimension_mismatch():
    with pytest.raises(ValueError):
        lie_derivative(MultiPoly.variables(3)[0], ROT)


def test_chain_examples():
    c = chain_stabilize(X, ROT)
    assert c.nu == 2 and c.cofactors == [ZERO, -ONE] and c.verify(ROT)
    c = chain_stabilize(X, PolyVectorField((X, Y)))
    assert c.nu == 1 and c.cofactors == [ONE]
    c = chain_stabilize(X, PolyVectorField((ONE, ZERO)))
    assert c.nu == 2 and all(h.is_zero() for h in c.cofactors)


def test_chain_cap_error():
    # x' = x^2 makes u_k = k! x^(k+1); membership needs cofactors of growing degree
    v = PolyVectorField((X * X, ONE))
    try:
        c = chain_stabilize(X, v, cap=1, slack=0, max_slack=0)
    except ChainError as e:
        assert "no certificate within cap" in str(e)
    else:
        assert c.verify(v)
    with pytest.raises(ValueError):
        chain_stabilize(ZERO, ROT)


def test_tangency_examples():
    v = PolyVectorField((ONE, X))
    assert tangency_order(v, Y, (0, 0)) == 2
    assert tangency_order(v, Y - X, (0, 0)) == 1
    assert tangency_order(PolyVectorField((ONE, X * X)), Y, (0, 0)) == 3
    with pytest.raises(ValueError, match="singular point"):
        tangency_order(ROT, X, (0, 0))
    with pytest.raises(ValueError, match="possibly invariant"):
        tangency_order(ROT, X * X + Y * Y - 1, (1, 0), cap=5)


def test_tangency_matches_numeric_slope():
    v = PolyVectorField((ONE, X * X))
    tr = integrate_field(v, [0, 0], Fraction(1, 50))
    ts = np.array([1e-3, 1e-2])
    vals = np.abs(tr(ts)[:, 1])
    slope = (math.log(vals[1]) - math.log(vals[0])) / (math.log(ts[1]) - math.log(ts[0]))
    assert abs(slope - 3) <= 0.05 * 3


def test_oscillator_bound():
    res = meandering_bound(ROT, X, (1, 0), 10, verify=True)
    assert res.chain.nu == 2
    # zeros of cos t on [-10, 10]
    assert sum(1 for k in range(-5, 5) if abs(math.pi / 2 + k * math.pi) <= 10) == 6
    assert res.oracle.count == 6
    assert res.certificate.bound >= 6 and res.ok


def test_translation_bound():
    v = PolyVectorField((ONE, ZERO))
    res = meandering_bound(v, X - 5, (0, 0), 1, verify=True)
    assert res.oracle.count == 0 and res.certificate.bound >= 1


def test_first_order_bound_is_zero():
    v = PolyVectorField((X, Y))
    res = meandering_bound(v, X, (1, 0), Fraction(1, 2), verify=True)
    assert res.chain.nu == 1 and res.certificate.bound == 0 and res.oracle.count == 0


def test_nonaffine_rejected():
    with pytest.raises(ValueError):
        meandering_bound(ROT, X * X, (1, 0), 1)


def test_corpus_instances_and_degree_growth():
    for i in range(15):
        inst = corpora.meander_instance(42, i)
        res = meandering_bound(inst.field, inst.u0, inst.q, inst.delta, verify=True)
        assert res.chain.verify(inst.field)
        if res.certificate.bound is not None:
            assert res.certificate.bound >= res.oracle.count, i
        d = inst.field.degree
        for k, u in enumerate(lie_chain(inst.u0, inst.field, 4)):
            assert u.degree <= 1 + k * (d - 1), (i, k)


def test_persistence_of_certificate():
    c = chain_stabilize(X, ROT)
    chain = lie_chain(X, ROT, c.nu + 1)
    # u_{nu+1} = D_v u_nu = sum D_v(h_i u_{nu-i}); constant cofactors shift unchanged
    total = ZERO
    for i, h in enumerate(c.cofactors, start=1):
        total = total + h * chain[c.nu + 1 - i]
    assert total == chain[c.nu + 1]
