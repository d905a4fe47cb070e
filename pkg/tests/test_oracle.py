from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest

from rolle_lab.curve_oscillation import spherical_length
from rolle_lab.exact.multipoly import MultiPoly
from rolle_lab.exact.unipoly import UniPoly, real_root_count
from rolle_lab.oracle import (
    ZeroOnContour,
    count_disk_zeros,
    count_real_zeros,
    integrate_field,
    instance_rng,
    make_rng,
    random_hyperplane_hits,
)
from rolle_lab.samplers import CurveSampler, PolyVectorField


def test_sin_zero_count():
    r = count_real_zeros(np.sin, 0.0, 10 * math.pi)
    assert r.count == 11
    assert not r.certified


def test_exact_polynomial_uses_sturm():
    r = count_real_zeros(UniPoly.from_roots([1, 2]), 0, 3)
    assert r.count == 2 and r.certified and r.method == "sturm"


def test_sign_scan_agrees_with_sturm_on_random_polynomials():
    for i in range(30):
        rng = instance_rng(21, i)
        p = UniPoly([Fraction(int(rng.integers(-20, 21)), 4) for _ in range(10)])
        if p.is_zero():
            continue
        exact = real_root_count(p, Fraction(-2), Fraction(2))
        scan = count_real_zeros(p.eval_numeric, -2.0, 2.0)
        assert scan.count == exact, i


def test_disk_zero_examples():
    w = count_disk_zeros(UniPoly([0, 0, 0, 1]), 0, 1)
    assert w.winding == 3 and abs(w.total_variation - 6 * math.pi) < 1e-6
    w = count_disk_zeros(UniPoly([2]), 0, 1)
    assert w.winding == 0 and w.total_variation == 0
    w = count_disk_zeros(UniPoly([0, 1, 1]), 0, 2)
    assert w.winding == 2 and w.total_variation >= 4 * math.pi - 1e-9


def test_zero_on_contour_detected():
    with pytest.raises(ZeroOnContour):
        count_disk_zeros(UniPoly([-1, 1]), 0, 1)


def test_integrate_rotation():
    x, y = MultiPoly.variables(2)
    v = PolyVectorField((y, -x))
    tr = integrate_field(v, [1, 0], Fraction(157, 100))
    end = tr(1.57)
    assert np.allclose(end, [math.cos(1.57), -math.sin(1.57)], atol=1e-8)
    assert tr.samples_inside()
    assert tr.enclosure.contains([1, 0])


def test_integrate_closed_form():
    x, y = MultiPoly.variables(2)
    v = PolyVectorField((MultiPoly.constant(2, 1), x))
    tr = integrate_field(v, [0, 0], 1)
    ts = np.linspace(0, 1, 11)
    assert np.allclose(tr(ts), np.stack([ts, ts ** 2 / 2], axis=1), atol=1e-9)


def test_integrate_step_halving():
    x, y = MultiPoly.variables(2)
    v = PolyVectorField((y, -x - Fraction(1, 2) * y))
    a = integrate_field(v, [1, 0], 2, tol=1e-10)(2.0)
    b = integrate_field(v, [1, 0], 2, tol=1e-11)(2.0)
    assert np.allclose(a, b, atol=1e-9)


def test_hyperplane_hits_circle_and_segment():
    h = random_hyperplane_hits(CurveSampler.circle(), 200, seed=3)
    assert np.all(h.counts == 2) and h.mean == 2
    seg = CurveSampler.segment([1, 0], [1, 1])
    h = random_hyperplane_hits(seg, 20000, seed=4)
    length = spherical_length(seg)
    assert abs(math.pi * h.mean - length) <= 3 * math.pi * h.std_error + 1e-9


def test_hyperplane_hits_deterministic():
    a = random_hyperplane_hits(CurveSampler.ellipse(2, 1), 500, seed=9, affine=True)
    b = random_hyperplane_hits(CurveSampler.ellipse(2, 1), 500, seed=9, affine=True)
    assert np.array_equal(a.counts, b.counts)


def test_rng_streams_are_independent_and_reproducible():
    assert make_rng(5).integers(0, 1 << 30) == make_rng(5).integers(0, 1 << 30)
    xs = [instance_rng(5, i).integers(0, 1 << 62) for i in range(50)]
    assert len(set(xs)) == 50
