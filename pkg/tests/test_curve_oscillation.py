from __future__ import annotations

import math

import numpy as np
import pytest

from rolle_lab import corpora
from rolle_lab.curve_oscillation import (
    DegenerateFrame,
    buffon_estimate,
    frenet_curvatures,
    hyperplane_rotation_bound,
    rolle_rn_check,
    shapiro_certificate,
    spherical_length,
)
from rolle_lab.oracle import random_hyperplane_hits
from rolle_lab.samplers import CurveSampler, TrigComponent


def angle_winding(curve: CurveSampler, n: int = 20001) -> float:
    """Total absolute change of the polar angle, for planar curves."""
    a, b = curve.interval
    x = curve(np.linspace(a, b, n))
    theta = np.unwrap(np.arctan2(x[:, 1], x[:, 0]))
    return float(np.sum(np.abs(np.diff(theta))))


def test_spherical_length_examples():
    assert spherical_length(CurveSampler.circle()) == pytest.approx(2 * math.pi, rel=1e-6)
    ray = CurveSampler.from_components([TrigComponent((1.0, 1.0), ()), TrigComponent((), ())], (0.0, 1.0))
    assert spherical_length(ray) == pytest.approx(0.0, abs=1e-9)
    ell = CurveSampler.ellipse(2, 1)
    assert spherical_length(ell) == pytest.approx(2 * math.pi, rel=1e-6)
    assert angle_winding(ell) == pytest.approx(2 * math.pi, rel=1e-6)


def test_spherical_length_matches_angle_on_corpus():
    for i in range(6):
        c = corpora.trig_curve(11, i, dimension=2)
        assert spherical_length(c) == pytest.approx(angle_winding(c), rel=1e-4)


def test_origin_proximity_rejected():
    through = CurveSampler.segment([-1, -1], [1, 1])
    with pytest.raises(ValueError):
        spherical_length(through)


def test_rolle_rn_examples():
    rep = rolle_rn_check(CurveSampler.circle())
    assert rep.holds and rep.length == pytest.approx(2 * math.pi, abs=1e-6)
    assert rep.derivative_length == pytest.approx(2 * math.pi, abs=1e-6)
    assert rolle_rn_check(CurveSampler.helix(1.0, 0.5, 0.5 + 2 * math.pi)).holds
    for i in range(10):
        assert rolle_rn_check(corpora.trig_curve(5, i)).holds, i


def test_frenet_circle_and_helix():
    assert frenet_curvatures(CurveSampler.circle(), 0.3).curvatures[0] == pytest.approx(1.0, rel=1e-9)
    for c in (0.5, 1.0, 2.0):
        fd = frenet_curvatures(CurveSampler.helix(c), 0.7)
        assert fd.curvatures[0] == pytest.approx(1 / (1 + c * c), rel=1e-9)
        assert fd.curvatures[1] == pytest.approx(c / (1 + c * c), rel=1e-9)


def test_frenet_line_degenerate():
    assert frenet_curvatures(CurveSampler.segment([1, 0], [2, 1]), 0.5).curvatures[0] == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(DegenerateFrame):
        frenet_curvatures(CurveSampler.segment([1, 0, 0], [2, 1, 3]), 0.5)


def test_hyperplane_bound_examples():
    cert = hyperplane_rotation_bound(CurveSampler.circle())
    assert cert.bound == 8
    assert cert.extras["total_curvatures"][0] == pytest.approx(2 * math.pi, rel=1e-6)
    assert random_hyperplane_hits(CurveSampler.circle(), 500, seed=1, affine=True).counts.max() <= 2
    seg = CurveSampler.segment([1, 0], [2, 1])
    assert hyperplane_rotation_bound(seg).bound == 2


def test_hyperplane_bound_dominates_hits_on_corpus():
    for i in range(5):
        c = corpora.trig_curve(42, i)
        hits = random_hyperplane_hits(c, 1000, seed=i, affine=True)
        assert int(hits.counts.max()) <= hyperplane_rotation_bound(c).bound, i


def test_shapiro_examples():
    arc = CurveSampler.helix(1.0, 0.0, 0.1)
    v = shapiro_certificate(arc)
    # kappa_1 = kappa_2 = 1/2 and ds = sqrt(2) dt, so the integral is sqrt(1/2) * sqrt(2) * 0.1
    assert v.integral == pytest.approx(0.1, rel=1e-6)
    assert v.certified and v.threshold == pytest.approx(1 / (3 * math.sqrt(2)))
    hits = random_hyperplane_hits(arc, 1000, seed=2, affine=True)
    assert hits.counts.max() <= 3
    assert not shapiro_certificate(CurveSampler.helix(1.0)).certified
    with pytest.raises(ValueError):
        shapiro_certificate(CurveSampler.segment([1, 0, 0], [2, 1, 3]))


def test_buffon_examples():
    b = buffon_estimate(CurveSampler.circle(), 500, seed=3)
    assert b.estimate == pytest.approx(2 * math.pi) and b.std_error == 0
    ell = CurveSampler.ellipse(2, 1)
    b = buffon_estimate(ell, 10_000, seed=4)
    lo, hi = b.interval()
    assert lo <= spherical_length(ell) <= hi
    assert buffon_estimate(ell, 2000, seed=5).estimate == buffon_estimate(ell, 2000, seed=5).estimate
