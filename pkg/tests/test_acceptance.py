"""Acceptance suite: one test per criterion, each timed against its runtime limit.

A PASS/FAIL line per criterion is printed in the pytest terminal summary.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from rolle_lab import corpora
from rolle_lab.cli.main import main
from rolle_lab.complex_counting import jensen_zero_bound, voorhoeve_index, voorhoeve_triangle_check
from rolle_lab.curve_oscillation import (
    buffon_estimate,
    frenet_curvatures,
    rolle_rn_check,
    shapiro_certificate,
    spherical_length,
)
from rolle_lab.exact.multipoly import MultiPoly
from rolle_lab.exact.scalars import PI_UPPER, ComplexRational, sqrt_bounds
from rolle_lab.exact.unipoly import UniPoly
from rolle_lab.fuchsian_petrov import (
    Coef,
    EulerOperatorSpec,
    PetrovOperatorSpec,
    PseudomonomialSum,
    annihilator_check,
    euler_solve,
    petrov_apply,
    roitman_zero_bound,
    solution_zero_oracle,
)
from rolle_lab.meandering import chain_stabilize, meandering_bound
from rolle_lab.multiplicity import (
    MapGerm,
    corank_threshold_multiplicity,
    local_algebra_multiplicity,
    univariate_mult,
)
from rolle_lab.ode_bounds import LinearOdeSpec, dlvp_admissible_length, dlvp_zero_bound
from rolle_lab.oracle import count_disk_zeros, count_real_zeros, integrate_linear_ode, random_hyperplane_hits
from rolle_lab.rolle_univariate import (
    fewnomial_positive_bound,
    multiplicative_triangle,
    positive_root_oracle,
    rolle_chain_check,
)
from rolle_lab.samplers import CircleContour, CurveSampler, PolyVectorField
from rolle_lab.wronskian_polya import polya_factorization, riemann_operator

from conftest import criterion

pytestmark = pytest.mark.slow

SEED = 42
FIXTURES = Path(__file__).resolve().parents[1] / "src" / "rolle_lab" / "cli" / "fixtures"


def test_criterion_01_rolle_chain():
    with criterion(1, "Rolle chain and multiplicative triangle on 500 polynomials", 30):
        for i in range(500):
            f = corpora.rolle_poly(SEED, i)
            assert f.degree <= 8 and all(abs(c) <= 10 for c in f.coeffs)
            assert rolle_chain_check(f, -11, 11).all_hold, i
            pair = corpora.rolle_pair(SEED, i)
            tri = multiplicative_triangle(pair.f, pair.g, pair.a, pair.b)
            n_f, n_g, n_fg = tri["N"]
            assert n_fg == n_f + n_g, i


def test_criterion_02_descartes():
    with criterion(2, "Descartes bound on 1000 fewnomials, with a sharp instance", 60):
        sharp = 0
        for i in range(1000):
            p = corpora.fewnomial(SEED, i)
            assert len(p.terms) <= 5 and max(p.terms) <= 30
            limit = min(len(p.terms) - 1, p.sign_changes())
            n = positive_root_oracle(p)
            assert n <= limit, i
            assert fewnomial_positive_bound(p).bound == limit
            sharp += n == limit
        assert sharp >= 1


def test_criterion_03_dlvp():
    with criterion(3, "de la Vallee Poussin: sqrt 2 length, 23 >= 11, 100 random ODEs", 120):
        ell = dlvp_admissible_length([0, 1], theta=1)
        lo, hi = sqrt_bounds(Fraction(2), 80)
        assert abs(ell - lo) < Fraction(1, 2 ** 60) and abs(hi - ell) < Fraction(1, 2 ** 60)
        cert = dlvp_zero_bound(LinearOdeSpec(2, (0, 1), 10 * PI_UPPER))
        oracle = count_real_zeros(np.sin, 0.0, 10 * math.pi).count
        assert cert.bound == 23 and oracle == 11
        for i in range(100):
            inst = corpora.ode_instance(SEED, i)
            assert inst.order <= 3
            b = dlvp_zero_bound(LinearOdeSpec(inst.order, inst.amplitudes, inst.length)).bound
            L = float(inst.length)
            y = integrate_linear_ode(inst.coefficient_functions(), inst.initial, (0.0, L))
            assert count_real_zeros(y, 0.0, L).count <= b, i


def test_criterion_04_jensen_voorhoeve():
    with criterion(4, "Jensen >= winding on 200, V(z^k) = 2 pi k, triangle on 100 pairs", 120):
        for i in range(200):
            f, r = corpora.jensen_instance(SEED, i)
            assert f(Fraction(0)) != 0
            assert jensen_zero_bound(f, r).bound >= count_disk_zeros(f, 0, r).winding, i
        unit = CircleContour(0, 1)
        for k in range(7):
            assert abs(voorhoeve_index(UniPoly.monomial(k), unit).variation - 2 * math.pi * k) <= 1e-6
        for i in range(100):
            f, g = corpora.voorhoeve_pair(SEED, i)
            t = voorhoeve_triangle_check(f, g, unit)
            assert abs(t.v_f - t.v_g) <= t.v_fg + 1e-6 and t.v_fg <= t.v_f + t.v_g + 1e-6, i


def test_criterion_05_polya():
    with criterion(5, "Polya annihilation on 100 triples; (1, t, t^2) gives y'''", 60):
        for i in range(100):
            assert polya_factorization(corpora.polya_triple(SEED, i)).annihilates, i
        t = UniPoly.t()
        fs = [UniPoly([1]), t, t * t]
        op = polya_factorization(fs).operator
        assert all(c.is_zero() for c in op[:3]) and not op[3].is_zero()
        riem = riemann_operator(fs)
        assert all(c.is_zero() for c in riem[:3]) and riem[3].degree == 0


def test_criterion_06_meandering():
    with criterion(6, "Meandering: oscillator chain, 100 certified instances, degree growth", 300):
        x, y = MultiPoly.variables(2)
        rot = PolyVectorField((y, -x))
        c = chain_stabilize(x, rot)
        assert c.nu == 2 and c.cofactors == [MultiPoly(2, {}), -MultiPoly.constant(2, 1)]
        for i in range(100):
            inst = corpora.meander_instance(SEED, i)
            assert inst.field.dimension == 2 and inst.degree <= 3
            r = meandering_bound(inst.field, inst.u0, inst.q, inst.delta, verify=True)
            assert r.chain.verify(inst.field), i
            assert r.certificate.bound is not None and r.certificate.bound >= r.oracle.count, i
            d = max(inst.field.degree, 1)
            assert all(u.degree <= 1 + k * (d - 1) for k, u in enumerate(r.chain.chain)), i


def test_criterion_07_multiplicity():
    with criterion(7, "Multiplicity examples, threshold equivalence on 30 germs, local Rolle on 500", 180):
        x, y = MultiPoly.variables(2)
        for fs, mu in (((x, y), 1), ((x ** 2, y ** 3), 6), ((x ** 2 - y ** 3, y ** 2), 4)):
            g = MapGerm(fs)
            assert local_algebra_multiplicity(g).mu == mu
            assert corank_threshold_multiplicity(g).mu == mu
        for i in range(30):
            g = MapGerm(corpora.germ_instance(SEED, i))
            mu = local_algebra_multiplicity(g).mu
            assert mu is not None and mu <= 8
            assert corank_threshold_multiplicity(g).mu == mu, i
        checked = 0
        for i in range(500):
            f = corpora.local_rolle_poly(SEED, i)
            df = f.derivative()
            if df.is_zero():
                continue
            assert univariate_mult(f) <= univariate_mult(df) + 1, i
            checked += 1
        assert checked >= 450


def test_criterion_08_petrov():
    with criterion(8, "Petrov annihilation on 50 operators, roitman on 200 solutions, 4 pi i", 120):
        for i in range(50):
            spec = EulerOperatorSpec.from_roots(corpora.euler_roots(SEED, i))
            assert spec.order <= 4
            sol = euler_solve(spec)
            assert sol.spectrum.real and len(sol.basis) == spec.order
            for lam, k in sol.basis:
                assert annihilator_check(sol.spectrum, PseudomonomialSum.monomial(lam, k)).annihilated, i
        for i in range(200):
            roots, coeffs = corpora.euler_solution(SEED, i)
            spec = EulerOperatorSpec.from_roots(roots)
            sol = euler_solve(spec)
            assert solution_zero_oracle(sol.spectrum, coeffs, eps=1e-6).count <= roitman_zero_bound(spec).bound, i
        lam = Fraction(2, 5)
        g = petrov_apply(PetrovOperatorSpec(lam), PseudomonomialSum.monomial(lam, 1))
        assert g == PseudomonomialSum({(lam, 0): Coef({(Fraction(0), 1): ComplexRational(0, 4)})})


def test_criterion_09_curves():
    with criterion(9, "Curves: circle 2 pi, helix curvatures, Buffon on 5 curves, Shapiro", 180):
        rep = rolle_rn_check(CurveSampler.circle())
        assert abs(rep.length - 2 * math.pi) <= 1e-6 and abs(rep.derivative_length - 2 * math.pi) <= 1e-6
        for c in (0.5, 1.0, 3.0):
            k = frenet_curvatures(CurveSampler.helix(c), 1.3).curvatures
            assert abs(k[0] - 1 / (1 + c * c)) <= 1e-6 and abs(k[1] - c / (1 + c * c)) <= 1e-6
        for i in range(5):
            curve = corpora.trig_curve(SEED, i)
            length = spherical_length(curve)
            est = buffon_estimate(curve, 10_000, seed=SEED + i)
            assert abs(est.estimate - length) <= 3 * est.std_error, i
        certified = 0
        for c, t1 in ((1.0, 0.1), (0.5, 0.15), (2.0, 0.1), (1.0, 2 * math.pi)):
            arc = CurveSampler.helix(c, 0.0, t1)
            v = shapiro_certificate(arc)
            if v.certified:
                certified += 1
                hits = random_hyperplane_hits(arc, 1000, seed=7, affine=True)
                assert int(hits.counts.max()) <= arc.dimension
        assert certified >= 1


def _run_to_bytes(args, path):
    status = main(args + ["--out", str(path)])
    return status, path.read_bytes()


def test_criterion_10_determinism(tmp_path):
    with criterion(10, "Byte-identical corpus reports; exit 3 only from the contradiction fixture"):
        for name in ("corpus_rolle.json", "corpus_meander.json", "corpus_empty.json"):
            s1, b1 = _run_to_bytes(["corpus", str(FIXTURES / name)], tmp_path / "a.json")
            s2, b2 = _run_to_bytes(["corpus", str(FIXTURES / name)], tmp_path / "b.json")
            assert s1 == s2 == 0, name
            assert b1 == b2, name
        for p in sorted(FIXTURES.glob("*.json")):
            if p.name.startswith("corpus_"):
                continue
            kind = json.loads(p.read_text())["kind"]
            try:
                status = main([kind, str(p), "--verify", "--out", str(tmp_path / "r.json")])
            except SystemExit as exc:
                status = exc.code
            assert (status == 3) == (p.name == "contradiction_dlvp.json"), p.name
