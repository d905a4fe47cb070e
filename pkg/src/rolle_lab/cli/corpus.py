"""Seeded corpus sweeps: instances are regenerated from (seed, index) and checked against oracles."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from .. import corpora
from ..certificate import jsonable
from .parsing import Fields, ParseError

THREADS_ENV = "ROLLE_LAB_THREADS"


@dataclass
class InstanceResult:
    index: int
    passed: bool
    data: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"index": self.index, "pass": self.passed, **jsonable(self.data)}


def _rolle(seed: int, i: int, params: dict) -> InstanceResult:
    from ..rolle_univariate import multiplicative_triangle, rolle_chain_check

    a, b = Fraction(-11), Fraction(11)
    f = corpora.rolle_poly(seed, i)
    chain = rolle_chain_check(f, a, b)
    pair = corpora.rolle_pair(seed, i)
    tri = multiplicative_triangle(pair.f, pair.g, pair.a, pair.b)
    ok = chain.all_hold and tri["Z_holds"] and tri["N_holds"]
    return InstanceResult(i, ok, {"Z": [r.z for r in chain.rows], "N_triangle": tri["N"]})


def _descartes(seed: int, i: int, params: dict) -> InstanceResult:
    from ..rolle_univariate import fewnomial_positive_bound, positive_root_oracle

    p = corpora.fewnomial(seed, i)
    cert = fewnomial_positive_bound(p)
    n = positive_root_oracle(p)
    return InstanceResult(i, cert.bound >= n, {"bound": cert.bound, "oracle": n, "sharp": cert.bound == n})


def _dlvp(seed: int, i: int, params: dict) -> InstanceResult:
    from ..ode_bounds import LinearOdeSpec, dlvp_zero_bound
    from ..oracle import count_real_zeros, integrate_linear_ode

    inst = corpora.ode_instance(seed, i)
    cert = dlvp_zero_bound(LinearOdeSpec(inst.order, inst.amplitudes, inst.length))
    L = float(inst.length)
    y = integrate_linear_ode(inst.coefficient_functions(), inst.initial, (0.0, L))
    n = count_real_zeros(y, 0.0, L).count
    ok = cert.bound is None or cert.bound >= n
    return InstanceResult(i, ok, {"order": inst.order, "bound": cert.bound, "oracle": n})


def _jensen(seed: int, i: int, params: dict) -> InstanceResult:
    from ..complex_counting import jensen_zero_bound
    from ..oracle import count_disk_zeros

    f, r = corpora.jensen_instance(seed, i)
    cert = jensen_zero_bound(f, r)
    w = count_disk_zeros(f, 0, r).winding
    return InstanceResult(i, cert.bound >= w, {"bound": cert.bound, "oracle": w})


def _voorhoeve(seed: int, i: int, params: dict) -> InstanceResult:
    from ..complex_counting import voorhoeve_rolle_check, voorhoeve_triangle_check
    from ..samplers import AnalyticSampler, CircleContour

    f, g = corpora.voorhoeve_pair(seed, i)
    c = CircleContour(0, 1)
    tri = voorhoeve_triangle_check(f, g, c)
    data = {"V_f": tri.v_f, "V_g": tri.v_g, "V_fg": tri.v_fg}
    ok = tri.holds
    if not f.derivative().is_zero():
        roll = voorhoeve_rolle_check(AnalyticSampler.from_poly(f), c)
        data["V_df"] = roll.v_df
        ok = ok and roll.holds
    return InstanceResult(i, ok, data)


def _polya(seed: int, i: int, params: dict) -> InstanceResult:
    from ..wronskian_polya import polya_verify

    fs = corpora.polya_triple(seed, i)
    return InstanceResult(i, polya_verify(fs), {"functions": [str(f) for f in fs]})


def _meander(seed: int, i: int, params: dict) -> InstanceResult:
    from ..meandering import meandering_bound

    inst = corpora.meander_instance(seed, i)
    r = meandering_bound(inst.field, inst.u0, inst.q, inst.delta, cap=int(params.get("cap", 6)), verify=True)
    d = max(inst.field.degree, 1)
    growth = all(u.degree <= inst.u0.degree + k * (d - 1) for k, u in enumerate(r.chain.chain))
    ok = bool(r.ok is not False and growth and r.chain.verify(inst.field))
    return InstanceResult(i, ok, {"nu": r.chain.nu, "bound": r.certificate.bound, "oracle": r.oracle.count})


def _mult(seed: int, i: int, params: dict) -> InstanceResult:
    from ..multiplicity import multiplicity

    germ = corpora.germ_instance(seed, i)
    try:
        res = multiplicity(germ, int(params.get("cap", 12)))
    except ArithmeticError as exc:
        return InstanceResult(i, False, {"error": str(exc)})
    a = res["local_algebra"]
    return InstanceResult(i, not a.capped, {"mu": a.display()})


def _local_rolle(seed: int, i: int, params: dict) -> InstanceResult:
    from ..multiplicity import univariate_mult

    f = corpora.local_rolle_poly(seed, i)
    m = univariate_mult(f)
    df = f.derivative()
    if df.is_zero():  # constant f: the derivative has infinite order
        return InstanceResult(i, True, {"mult": m, "mult_derivative": None})
    m1 = univariate_mult(df)
    return InstanceResult(i, m <= m1 + 1, {"mult": m, "mult_derivative": m1})


def _fuchs(seed: int, i: int, params: dict) -> InstanceResult:
    from ..fuchsian_petrov import (
        EulerOperatorSpec,
        annihilator_check,
        euler_solve,
        roitman_zero_bound,
        solution_from_basis,
        solution_zero_oracle,
    )

    roots, coeffs = corpora.euler_solution(seed, i)
    spec = EulerOperatorSpec.from_roots(roots)
    sol = euler_solve(spec)
    cert = roitman_zero_bound(spec)
    n = solution_zero_oracle(sol.spectrum, coeffs).count
    exact = [Fraction(c).limit_denominator(1 << 20) for c in coeffs]
    kill = annihilator_check(sol.spectrum, solution_from_basis(sol.basis, exact)).annihilated
    return InstanceResult(i, cert.bound >= n and kill, {"bound": cert.bound, "oracle": n, "annihilated": kill})


def _curve(seed: int, i: int, params: dict) -> InstanceResult:
    from ..curve_oscillation import buffon_estimate, rolle_rn_check, spherical_length

    samples = int(params.get("buffon_samples", 10000))
    c = corpora.trig_curve(seed, i)
    rot = rolle_rn_check(c)
    length = spherical_length(c)
    est = buffon_estimate(c, samples, seed=(seed + i) % (1 << 64))
    within = abs(est.estimate - length) <= 3 * est.std_error + 1e-6 * length
    return InstanceResult(i, rot.holds and within, {"dimension": c.dimension, "length": length,
                                                     "buffon": est.estimate, "std_error": est.std_error})


CORPUS_KINDS: dict[str, Callable[[int, int, dict], InstanceResult]] = {
    "rolle": _rolle,
    "descartes": _descartes,
    "dlvp": _dlvp,
    "jensen": _jensen,
    "voorhoeve": _voorhoeve,
    "polya": _polya,
    "meander": _meander,
    "mult": _mult,
    "local-rolle": _local_rolle,
    "fuchs": _fuchs,
    "curve": _curve,
}


def thread_count() -> int:
    raw = os.environ.get(THREADS_ENV, "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


@dataclass
class CorpusConfig:
    kind: str
    count: int
    seed: int
    params: dict

    @classmethod
    def parse(cls, data: Any, path: str = "corpus", seed_override: int | None = None) -> "CorpusConfig":
        f = Fields(data, path)
        kind = f.string("kind")
        if kind not in CORPUS_KINDS:
            raise ParseError(f.where("kind"), f"unknown corpus kind {kind!r}; choose from {sorted(CORPUS_KINDS)}")
        count = f.integer("count", minimum=0)
        seed = seed_override if seed_override is not None else f.integer("seed", 0, minimum=0)
        if seed >= 1 << 64:
            raise ParseError(f.where("seed"), "must fit in 64 bits")
        params = f.raw("params", {})
        if not isinstance(params, dict):
            raise ParseError(f.where("params"), "expected an object")
        return cls(kind, count, seed, params)


def run_corpus(cfg: CorpusConfig, threads: int | None = None) -> dict:
    fn = CORPUS_KINDS[cfg.kind]
    workers = threads or thread_count()

    def one(i: int) -> InstanceResult:
        return fn(cfg.seed, i, cfg.params)

    if workers == 1:
        results = [one(i) for i in range(cfg.count)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(one, range(cfg.count)))  # ordered by index
    failing = [r.index for r in results if not r.passed]
    out = {
        "corpus_kind": cfg.kind,
        "count": cfg.count,
        "params": jsonable(cfg.params),
        "passed": cfg.count - len(failing),
        "failed": len(failing),
        "failing_indices": failing,
        "instances": [r.to_dict() for r in results],
        "ok": not failing,
    }
    if cfg.kind == "descartes":
        out["sharp_instances"] = sum(1 for r in results if r.data.get("sharp"))
    return out


def first_failure(summary: dict) -> int | None:
    return summary["failing_indices"][0] if summary["failing_indices"] else None


__all__ = ["CORPUS_KINDS", "CorpusConfig", "InstanceResult", "run_corpus", "thread_count", "first_failure"]
