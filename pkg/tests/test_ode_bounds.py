from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest

from rolle_lab.exact.scalars import PI_UPPER, parse_complex_rational, sqrt_bounds
from rolle_lab.exact.unipoly import UniPoly
from rolle_lab.ode_bounds import (
    LinearOdeSpec,
    complex_variation_bound,
    covering_cells,
    dlvp_admissible_length,
    dlvp_sum,
    dlvp_zero_bound,
    kim_zero_bound,
    symplex_inequality_check,
)
from rolle_lab.oracle import argument_variation, count_disk_zeros, count_real_zeros, instance_rng
from rolle_lab.samplers import CircleContour, PolygonContour


def test_admissible_length_sqrt2():
    ell = dlvp_admissible_length([0, 1], theta=1)
    lo, hi = sqrt_bounds(Fraction(2), 80)
    assert ell <= lo and hi - ell < Fraction(1, 2 ** 60)


def test_admissible_length_unbounded_and_substitution():
    assert dlvp_admissible_length([0, 0, 0]) is None
    ell = dlvp_admissible_length([1, 1, 1], theta=Fraction(1, 2))
    assert dlvp_sum([1, 1, 1], ell) <= Fraction(1, 2)
    assert dlvp_sum([1, 1, 1], ell + Fraction(1, 2 ** 60)) > Fraction(1, 2)


def test_dlvp_oscillator():
    cert = dlvp_zero_bound(LinearOdeSpec(2, (0, 1), 10 * PI_UPPER))
    assert cert.bound == 23 and cert.valid
    assert count_real_zeros(np.sin, 0.0, 10 * math.pi).count == 11


def test_dlvp_trivial_orders():
    assert dlvp_zero_bound(LinearOdeSpec(1, (3,), 100)).bound == 0
    assert dlvp_zero_bound(LinearOdeSpec(2, (0, 0), 100)).bound == 1


def test_dlvp_bound_grows_with_length():
    a = dlvp_zero_bound(LinearOdeSpec(3, (1, 2, 1), 4)).bound
    b = dlvp_zero_bound(LinearOdeSpec(3, (1, 2, 1), 8)).bound
    assert a <= b


def test_symplex_examples():
    v = symplex_inequality_check(UniPoly([0, -1, 1]), 1, 1)
    assert v.holds and v.lhs[0] <= Fraction(1, 4) <= v.lhs[1]
    f = UniPoly.from_roots([0, 1, 2]) * Fraction(1, 6)
    assert symplex_inequality_check(f, 2, 2).holds


def test_symplex_rejects_insufficient_roots():
    with pytest.raises(ValueError):
        symplex_inequality_check(UniPoly([1, 0, 1]), 1, 1)


def test_symplex_corpus():
    for i in range(200):
        rng = instance_rng(31, i)
        n = int(rng.integers(1, 4))
        roots = [Fraction(int(rng.integers(0, 33)), 32) for _ in range(n + 1)]
        extra = [Fraction(int(rng.integers(-40, 41)), 8) for _ in range(int(rng.integers(0, 3)))]
        f = UniPoly.from_roots(roots + extra) * Fraction(int(rng.integers(1, 9)), 3)
        assert symplex_inequality_check(f, n, 1).holds, i


def test_kim_examples():
    disk = CircleContour(0, Fraction(1, 2))
    assert kim_zero_bound(LinearOdeSpec(2, (0, 1), None, disk)).bound == 1
    assert kim_zero_bound(LinearOdeSpec(1, (7,), None, CircleContour(0, 100))).bound == 0
    big = CircleContour(0, 5)
    cert = kim_zero_bound(LinearOdeSpec(2, (0, 1), None, big))
    assert cert.valid
    w = count_disk_zeros(np.cos, 0, 5)
    assert w.winding == 4 and cert.bound >= w.winding


def test_kim_requires_bounded_convex_domain():
    with pytest.raises(ValueError):
        kim_zero_bound(LinearOdeSpec(2, (0, 1)))
    dart = PolygonContour(tuple(parse_complex_rational(v) for v in ("0", "2", "2+2i", "1+1/2i")))
    with pytest.raises(ValueError):
        kim_zero_bound(LinearOdeSpec(2, (0, 1), None, dart))


def test_covering_cells_counts_unit_square():
    sq = PolygonContour(tuple(parse_complex_rational(v) for v in ("0", "1", "1+i", "i")))
    assert covering_cells(sq, Fraction(1, 2)) == 4


def test_argvar_examples():
    c = complex_variation_bound(LinearOdeSpec(1, (1,), 1))
    assert c.extras["segments"] == 3 and c.bound == 6
    assert argument_variation(lambda t: np.exp(1j * t), 0, 1) == pytest.approx(1.0, abs=1e-9)
    assert complex_variation_bound(LinearOdeSpec(3, (0, 0, 0), 9)).bound == 4
    c = complex_variation_bound(LinearOdeSpec(2, (0, 1), Fraction(1, 2)))
    assert c.bound == 3
    assert argument_variation(lambda t: np.cos(t) + 1j * np.sin(t), 0, 0.5) <= 3 * math.pi
