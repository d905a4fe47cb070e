"""Problem kinds: parse a payload, run the module, optionally cross-check with the oracle."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

import numpy as np

from ..certificate import BoundCertificate, check, jsonable
from ..exact.scalars import ComplexRational, parse_complex_rational
from ..oracle import (
    argument_variation,
    count_contour_zeros,
    count_disk_zeros,
    count_real_zeros,
    integrate_field,
    integrate_linear_ode,
    make_rng,
    random_hyperplane_hits,
)
from .parsing import (
    Fields,
    FloatLiteral,
    ParseError,
    domain,
    expression,
    multipoly,
    pi_length,
    unipoly,
)


class HypothesisFailure(Exception):
    """A module refused the input or a certificate hypothesis failed."""


@dataclass
class Outcome:
    certificates: dict[str, BoundCertificate] = field(default_factory=dict)
    oracle: dict[str, Any] = field(default_factory=dict)
    results: dict[str, Any] = field(default_factory=dict)
    series: dict[str, Any] = field(default_factory=dict)
    comparisons: list[tuple[str, Any, Any]] = field(default_factory=list)  # (name, bound, oracle value)

    @property
    def ok(self) -> bool | None:
        if not self.comparisons:
            return None
        return all(b is not None and b >= o for _, b, o in self.comparisons)


def _lambdify(exprs, var: str = "t", complex_: bool = False) -> list[Callable]:
    import sympy as sp

    s = sp.Symbol(var)
    out = []
    for e in exprs:
        fn = sp.lambdify(s, e, modules="numpy")
        if complex_:
            out.append(lambda x, fn=fn: complex(fn(x)))
        else:
            out.append(lambda x, fn=fn: float(fn(x)))
    return out


def _field(f: Fields, name: str = "field"):
    from ..samplers import PolyVectorField

    comps = f.list(name)
    n = len(comps)
    if n < 1:
        raise ParseError(f.where(name), "empty vector field")
    polys = tuple(multipoly(c, f"{f.where(name)}[{i}]", n) for i, c in enumerate(comps))
    return PolyVectorField(polys)


def _point(f: Fields, name: str, n: int) -> list[Fraction]:
    pt = f.rationals(name)
    if len(pt) != n:
        raise ParseError(f.where(name), f"expected {n} coordinates")
    return pt


def _ode_spec(f: Fields, need_length: bool = True):
    from ..ode_bounds import LinearOdeSpec

    order = f.integer("order", minimum=1)
    bounds = f.rationals("bounds")
    if len(bounds) != order:
        raise ParseError(f.where("bounds"), f"expected {order} entries")
    if any(b < 0 for b in bounds):
        raise ParseError(f.where("bounds"), "bounds must be nonnegative")
    length = None
    numeric_length = None
    if need_length:
        length, numeric_length = pi_length(f.raw("length"), f.where("length"))
        if length <= 0:
            raise ParseError(f.where("length"), "must be positive")
    return LinearOdeSpec(order, tuple(bounds), length), numeric_length


# ---------------------------------------------------------------------------
# kinds
# ---------------------------------------------------------------------------

def run_descartes(f: Fields, verify: bool, seed: int) -> Outcome:
    from ..rolle_univariate import Fewnomial, fewnomial_positive_bound, positive_root_oracle

    if f.has("terms"):
        terms = {}
        for i, pair in enumerate(f.list("terms")):
            w = f"{f.where('terms')}[{i}]"
            if not isinstance(pair, list) or len(pair) != 2:
                raise ParseError(w, "expected [exponent, coefficient]")
            e = pair[0]
            if isinstance(e, bool) or not isinstance(e, int):
                raise ParseError(w, "exponent must be an integer")
            from .parsing import rational

            terms[e] = terms.get(e, Fraction(0)) + rational(pair[1], w)
        p = Fewnomial(terms)
    else:
        poly = unipoly(f.raw("poly"), f.where("poly"))
        if not poly.is_real:
            raise ParseError(f.where("poly"), "real coefficients required")
        p = Fewnomial({k: c for k, c in enumerate(poly.coeffs) if c})
    if not p.terms:
        raise HypothesisFailure("zero fewnomial")
    out = Outcome()
    cert = fewnomial_positive_bound(p)
    out.certificates["descartes"] = cert
    out.results["fewnomial"] = str(p)
    if verify:
        n = positive_root_oracle(p)
        out.oracle["positive_roots"] = {"count": n, "method": "sturm", "certified": True}
        out.comparisons.append(("descartes", cert.bound, n))
    return out


def run_dlvp(f: Fields, verify: bool, seed: int) -> Outcome:
    from ..ode_bounds import dlvp_zero_bound

    spec, length_f = _ode_spec(f)
    out = Outcome()
    cert = dlvp_zero_bound(spec)
    out.certificates["dlvp"] = cert
    out.results["length_upper"] = spec.length
    if verify:
        if not f.has("coefficients"):
            raise ParseError(f.where("coefficients"), "missing field (needed for --verify)")
        exprs = [expression(e, f"{f.where('coefficients')}[{i}]") for i, e in enumerate(f.list("coefficients"))]
        if len(exprs) != spec.order:
            raise ParseError(f.where("coefficients"), f"expected {spec.order} entries")
        coeffs = _lambdify(exprs)
        trials = f.integer("trials", 8, minimum=1)
        rng = make_rng(seed)
        grid = np.linspace(0.0, length_f, 2001)
        sampled_sup = [float(np.max(np.abs([c(x) for x in grid]))) for c in coeffs]
        out.results["coefficient_sup_sampled"] = sampled_sup
        best = 0
        counts = []
        for k in range(trials):
            init = np.zeros(spec.order)
            if k < spec.order:
                init[k] = 1.0
            else:
                init = rng.standard_normal(spec.order)
            y = integrate_linear_ode(coeffs, init, (0.0, length_f))
            # samples within the integrator's accuracy count as zeros (endpoint zeros such as sin(10 pi))
            r = count_real_zeros(y, 0.0, length_f, zero_rel=1e-8)
            counts.append(r.count)
            best = max(best, r.count)
        out.oracle["solution_zeros"] = {"max": best, "counts": counts, "trials": trials, "method": "sign-scan"}
        out.comparisons.append(("dlvp", cert.bound, best))
    return out


def run_kim(f: Fields, verify: bool, seed: int) -> Outcome:
    from ..ode_bounds import LinearOdeSpec, kim_zero_bound

    spec, _ = _ode_spec(f, need_length=False)
    dom = domain(f.raw("domain"), f.where("domain"))
    out = Outcome()
    out.certificates["kim"] = kim_zero_bound(LinearOdeSpec(spec.order, spec.bounds, None, dom))
    if verify:
        out.results["oracle_note"] = "no oracle for complex-domain solution zeros"
    return out


def run_argvar(f: Fields, verify: bool, seed: int) -> Outcome:
    from ..ode_bounds import complex_variation_bound

    spec, length_f = _ode_spec(f)
    out = Outcome()
    cert = complex_variation_bound(spec)
    out.certificates["argvar"] = cert
    if verify:
        if not f.has("coefficients"):
            raise ParseError(f.where("coefficients"), "missing field (needed for --verify)")
        exprs = [expression(e, f"{f.where('coefficients')}[{i}]") for i, e in enumerate(f.list("coefficients"))]
        if len(exprs) != spec.order:
            raise ParseError(f.where("coefficients"), f"expected {spec.order} entries")
        coeffs = _lambdify(exprs, complex_=True)
        rng = make_rng(seed)
        worst = 0.0
        for _ in range(f.integer("trials", 4, minimum=1)):
            init = rng.standard_normal(spec.order) + 1j * rng.standard_normal(spec.order)
            y = integrate_linear_ode(coeffs, init, (0.0, length_f))
            worst = max(worst, argument_variation(y, 0.0, length_f))
        turns = worst / math.pi
        out.oracle["argument_variation"] = {"radians": worst, "units_of_pi": turns, "method": "sampled phase"}
        out.comparisons.append(("argvar", cert.bound, turns))
    return out


def run_jensen(f: Fields, verify: bool, seed: int) -> Outcome:
    from ..complex_counting import jensen_zero_bound

    p = unipoly(f.raw("poly"), f.where("poly"), "z")
    r = f.rational("radius")
    if not 0 < r < 1:
        raise ParseError(f.where("radius"), "inner radius must lie in (0, 1)")
    bmax = f.rational("boundary_max") if f.has("boundary_max") else None
    out = Outcome()
    try:
        cert = jensen_zero_bound(p, r, boundary_max=bmax)
    except ValueError as exc:
        raise HypothesisFailure(str(exc)) from None
    out.certificates["jensen"] = cert
    if verify:
        w = count_disk_zeros(p.eval_numeric, 0, r)
        out.oracle["disk_zeros"] = w.to_dict()
        out.comparisons.append(("jensen", cert.bound, w.winding))
    return out


def _analytic(f: Fields, name: str):
    """A polynomial in z if possible, otherwise a sympy-backed sampler."""
    import sympy as sp

    from ..samplers import AnalyticSampler

    raw = f.raw(name)
    e = expression(raw, f.where(name), ("z",))
    try:
        return AnalyticSampler.from_poly(unipoly(raw, f.where(name), "z"))
    except ParseError:
        return AnalyticSampler.from_sympy(e, sp.Symbol("z"))


def run_bernstein(f: Fields, verify: bool, seed: int) -> Outcome:
    from ..complex_counting import CPGonPair, bernstein_index, bernstein_rolle_report

    g = _analytic(f, "function")
    inner = domain(f.raw("inner"), f.where("inner"))
    outer = domain(f.raw("outer"), f.where("outer"))
    out = Outcome()
    try:
        if f.has("k_prime"):
            kp = domain(f.raw("k_prime"), f.where("k_prime"))
            rep = bernstein_rolle_report(g, kp, inner, outer)
            out.results["bernstein_rolle"] = rep.to_dict()
        else:
            out.results["bernstein"] = bernstein_index(g, CPGonPair(inner, outer)).to_dict()
    except ValueError as exc:
        raise HypothesisFailure(str(exc)) from None
    return out


def run_voorhoeve(f: Fields, verify: bool, seed: int) -> Outcome:
    from ..complex_counting import voorhoeve_index, voorhoeve_rolle_check

    g = _analytic(f, "function")
    contour = domain(f.raw("contour"), f.where("contour"))
    out = Outcome()
    v = voorhoeve_index(g, contour)
    out.results["voorhoeve"] = v.to_dict()
    out.results["majorizes_winding"] = v.variation + 1e-6 >= 2 * math.pi * abs(v.winding)
    try:
        out.results["rolle"] = voorhoeve_rolle_check(g, contour).to_dict()
    except ValueError as exc:
        out.results["rolle"] = {"skipped": str(exc)}
    return out


def run_pseudopoly(f: Fields, verify: bool, seed: int) -> Outcome:
    from ..complex_counting import PseudoPolynomial, pseudopoly_voorhoeve_bound
    from .parsing import complex_rational

    spectrum = []
    for i, item in enumerate(f.list("spectrum")):
        w = f"{f.where('spectrum')}[{i}]"
        it = Fields(item, w)
        lam = it.complex_rational("lambda")
        coeffs = [complex_rational(c, f"{w}.coefficients[{j}]") for j, c in enumerate(it.list("coefficients"))]
        spectrum.append((lam, coeffs))
    try:
        p = PseudoPolynomial(spectrum)
    except ValueError as exc:
        raise ParseError(f.where("spectrum"), str(exc)) from None
    contour = domain(f.raw("contour"), f.where("contour"))
    out = Outcome()
    try:
        cert = pseudopoly_voorhoeve_bound(p, contour)
    except ValueError as exc:
        raise HypothesisFailure(str(exc)) from None
    out.certificates["pseudopoly"] = cert
    out.results["pseudopolynomial"] = str(p)
    if verify:
        w = count_contour_zeros(p.eval_numeric, contour)
        out.oracle["contour_zeros"] = w.to_dict()
        out.comparisons.append(("pseudopoly", cert.bound, w.winding))
    return out


def run_polya(f: Fields, verify: bool, seed: int) -> Outcome:
    from ..wronskian_polya import (
        leading_consistency,
        operator_to_strings,
        polya_factorization,
        riemann_operator,
        riemann_residuals,
    )

    fs = [unipoly(e, f"{f.where('functions')}[{i}]") for i, e in enumerate(f.list("functions"))]
    if not fs:
        raise ParseError(f.where("functions"), "empty tuple")
    try:
        fac = polya_factorization(fs)
        riem = riemann_operator(fs)
    except ValueError as exc:
        raise HypothesisFailure(str(exc)) from None
    res = riemann_residuals(fs, riem)
    out = Outcome()
    out.certificates["polya"] = BoundCertificate(
        None, "polya", "Polya factorization of a disconjugate operator",
        [
            check("composition annihilates the tuple", fac.annihilates, "==", True),
            check("Riemann residuals vanish", all(r.is_zero() for r in res), "==", True),
            check("W_n times composition equals the expanded operator", leading_consistency(fs), "==", True),
        ],
        [f"W = {[str(w) for w in fac.chain.w]}"],
        unit="identity",
    )
    out.results["wronskians"] = [str(w) for w in fac.chain.w]
    out.results["shifts"] = operator_to_strings(fac.shifts)
    out.results["operator"] = operator_to_strings(fac.operator)
    out.results["riemann"] = [str(m) for m in riem]
    return out


def run_chain(f: Fields, verify: bool, seed: int) -> Outcome:
    from ..meandering import ChainError, chain_stabilize

    v = _field(f)
    u0 = multipoly(f.raw("u0"), f.where("u0"), v.dimension)
    if u0.is_zero():
        raise ParseError(f.where("u0"), "must be nonzero")
    try:
        c = chain_stabilize(u0, v, cap=f.integer("cap", 6, minimum=1), slack=f.integer("slack", 2, minimum=0),
                            max_slack=f.integer("max_slack", 8, minimum=0))
    except ChainError as exc:
        raise HypothesisFailure(str(exc)) from None
    d = max(v.degree, 1)
    growth = all(u.degree <= u0.degree + i * (d - 1) for i, u in enumerate(c.chain))
    out = Outcome()
    out.certificates["chain"] = BoundCertificate(
        c.nu, "chain", "stabilization of the Lie-derivative ideal chain",
        [check("cofactor identity re-expands exactly", c.verify(v), "==", True),
         check("degree growth deg u_i <= deg u_0 + i(d-1)", growth, "==", True)],
        [f"slack used = {c.slack}", f"degree caps = {c.degree_caps}"],
        unit="chain length", extras=c.to_dict(),
    )
    return out


def run_tangency(f: Fields, verify: bool, seed: int) -> Outcome:
    from ..meandering import tangency_order

    v = _field(f)
    p = multipoly(f.raw("P"), f.where("P"), v.dimension)
    q = _point(f, "point", v.dimension)
    try:
        mu = tangency_order(v, p, q, cap=f.integer("cap", 32, minimum=0))
    except ValueError as exc:
        raise HypothesisFailure(str(exc)) from None
    out = Outcome()
    out.results["tangency_order"] = mu
    if verify:
        traj = integrate_field(v, q, Fraction(1, 8), symmetric=True)
        ts = np.array([2.0 ** -k for k in range(4, 9)])
        vals = np.abs(p.eval_numeric(traj(ts)))
        with np.errstate(divide="ignore"):
            slopes = np.diff(np.log(vals)) / np.diff(np.log(ts))
        est = float(slopes[-1]) if np.all(np.isfinite(slopes)) else None
        out.oracle["order_estimate"] = {"slope": est, "samples": ts.tolist()}
    return out


def run_meander(f: Fields, verify: bool, seed: int) -> Outcome:
    from ..meandering import ChainError, meandering_bound
    from ..oracle import EnclosureError

    v = _field(f)
    u0 = multipoly(f.raw("u0"), f.where("u0"), v.dimension)
    q = _point(f, "point", v.dimension)
    delta = f.rational("delta")
    if delta <= 0:
        raise ParseError(f.where("delta"), "must be positive")
    try:
        r = meandering_bound(v, u0, q, delta, cap=f.integer("cap", 6, minimum=1), verify=verify)
    except (ChainError, EnclosureError, ValueError) as exc:
        raise HypothesisFailure(str(exc)) from None
    out = Outcome()
    out.certificates["meander"] = r.certificate
    out.results["chain"] = r.chain.to_dict()
    if verify:
        out.oracle["trajectory_zeros"] = r.oracle.to_dict()
        out.comparisons.append(("meander", r.certificate.bound, r.oracle.count))
    return out


def run_mult(f: Fields, verify: bool, seed: int) -> Outcome:
    from ..multiplicity import MapGerm, multiplicity, multiplicity_operator_signal, orders

    comps = f.list("components")
    n = len(comps)
    if n < 1:
        raise ParseError(f.where("components"), "empty germ")
    polys = tuple(multipoly(c, f"{f.where('components')}[{i}]", n) for i, c in enumerate(comps))
    try:
        germ = MapGerm(polys)
    except ValueError as exc:
        raise ParseError(f.where("components"), str(exc)) from None
    cap = f.integer("cap", 12, minimum=0)
    res = multiplicity(germ, cap)
    a, b = res["local_algebra"], res["corank_threshold"]
    out = Outcome()
    out.results["mu"] = a.display()
    out.results["local_algebra"] = a.to_dict()
    out.results["corank_threshold"] = b.to_dict()
    out.results["orders"] = orders(germ)
    if f.has("k"):
        k = f.integer("k", minimum=0)
        vanish, mag, trace = multiplicity_operator_signal(germ, k)
        out.results["operator_signal"] = {"k": k, "all_minors_vanish": vanish, "pivot_minor": mag, "trace": trace}
    return out


def run_fuchs(f: Fields, verify: bool, seed: int) -> Outcome:
    from ..fuchsian_petrov import (
        EulerOperatorSpec,
        annihilator_check,
        euler_solve,
        roitman_zero_bound,
        solution_from_basis,
        solution_zero_oracle,
    )

    spec = EulerOperatorSpec(tuple(f.rationals("coefficients")))
    sol = euler_solve(spec)
    out = Outcome()
    out.results["spectrum"] = [[r, m] for r, m in sol.spectrum.roots]
    out.results["basis"] = sol.basis_strings()
    out.results["real_spectrum"] = sol.spectrum.real
    coeffs = None
    if f.has("solution"):
        coeffs = f.rationals("solution")
        if len(coeffs) != spec.order:
            raise ParseError(f.where("solution"), f"expected {spec.order} coefficients")
        if sol.spectrum.exact:
            verdict = annihilator_check(sol.spectrum, solution_from_basis(sol.basis, coeffs))
            out.results["annihilation"] = verdict.to_dict()
    try:
        cert = roitman_zero_bound(spec)
    except ValueError as exc:
        raise HypothesisFailure(str(exc)) from None
    out.certificates["fuchs"] = cert
    if verify:
        if coeffs is None:
            coeffs = list(make_rng(seed).standard_normal(spec.order))
        r = solution_zero_oracle(sol.spectrum, [float(c) for c in coeffs])
        out.oracle["solution_zeros"] = r.to_dict()
        out.comparisons.append(("fuchs", cert.bound, r.count))
    return out


def run_curve(f: Fields, verify: bool, seed: int) -> Outcome:
    import sympy as sp

    from ..curve_oscillation import (
        DegenerateFrame,
        buffon_estimate,
        frenet_curvatures,
        hyperplane_rotation_bound,
        rolle_rn_check,
        shapiro_certificate,
        spherical_length,
    )
    from ..samplers import CurveSampler

    comps = [expression(e, f"{f.where('components')}[{i}]") for i, e in enumerate(f.list("components"))]
    if len(comps) < 2:
        raise ParseError(f.where("components"), "at least two components")
    iv = f.list("interval")
    if len(iv) != 2:
        raise ParseError(f.where("interval"), "expected [a, b]")
    a = pi_length(iv[0], f.where("interval") + "[0]")[1] if iv[0] not in (0, "0") else 0.0
    b = pi_length(iv[1], f.where("interval") + "[1]")[1]
    if not a < b:
        raise ParseError(f.where("interval"), "needs a < b")
    curve = CurveSampler.from_sympy(comps, sp.Symbol("t"), (a, b), closed=f.boolean("closed", False))
    out = Outcome()
    try:
        rot = rolle_rn_check(curve)
        out.results["rotation"] = rot.to_dict()
    except ValueError as exc:
        out.results["rotation"] = {"skipped": str(exc)}
    try:
        cert = hyperplane_rotation_bound(curve)
        out.certificates["hyperplanes"] = cert
    except (DegenerateFrame, ValueError) as exc:
        raise HypothesisFailure(str(exc)) from None
    try:
        out.results["frenet_mid"] = frenet_curvatures(curve, (a + b) / 2).to_dict()
    except DegenerateFrame as exc:
        out.results["frenet_mid"] = {"degenerate": str(exc)}
    try:
        out.results["shapiro"] = shapiro_certificate(curve).to_dict()
    except ValueError as exc:
        out.results["shapiro"] = {"skipped": str(exc)}
    buffon_samples = f.integer("buffon_samples", 10000, minimum=2)
    try:
        est = buffon_estimate(curve, buffon_samples, seed)
        out.results["buffon"] = est.to_dict()
        out.results["spherical_length"] = spherical_length(curve)
    except ValueError as exc:
        out.results["buffon"] = {"skipped": str(exc)}
    ts = curve.grid(64)
    pts = curve(ts)
    out.series["curve"] = {"t": ts.tolist(), "points": pts.tolist()}
    with np.errstate(invalid="ignore", divide="ignore"):
        out.series["spherical_projection"] = (pts / np.linalg.norm(pts, axis=1, keepdims=True)).tolist()
    if verify:
        hits = random_hyperplane_hits(curve, f.integer("samples", 1000, minimum=1), seed, affine=True)
        out.oracle["hyperplane_hits"] = hits.to_dict()
        out.comparisons.append(("hyperplanes", cert.bound, int(hits.counts.max())))
    return out


# ---------------------------------------------------------------------------
# re-validation of emitted reports
# ---------------------------------------------------------------------------

def _exact_value(x: Any, where: str):
    if isinstance(x, FloatLiteral):
        raise ParseError(where, "hypothesis values must be exact")
    if isinstance(x, (bool, int)):
        return x
    if isinstance(x, str):
        try:
            return parse_complex_rational(x)
        except (ValueError, ZeroDivisionError):
            raise ParseError(where, f"not an exact value: {x!r}") from None
    raise ParseError(where, f"unsupported hypothesis value {x!r}")


def run_verify(f: Fields, verify: bool, seed: int) -> Outcome:
    report = f.data.get("report", f.data)
    rf = Fields(report, f.path)
    certs = rf.raw("certificates")
    if not isinstance(certs, dict):
        raise ParseError(rf.where("certificates"), "expected an object")
    out = Outcome()
    checked = 0
    mismatches = []
    failing = []
    for name in sorted(certs):
        cf = Fields(certs[name], rf.where("certificates") + f".{name}")
        for i, h in enumerate(cf.list("hypotheses")):
            hf = Fields(h, cf.where("hypotheses") + f"[{i}]")
            rel = hf.string("relation")
            if rel not in ("<", "<=", "==", "!=", ">", ">="):
                raise ParseError(hf.where("relation"), f"unknown relation {rel!r}")
            lhs = _exact_value(hf.raw("lhs"), hf.where("lhs"))
            rhs = _exact_value(hf.raw("rhs"), hf.where("rhs"))
            if isinstance(lhs, ComplexRational) or isinstance(rhs, ComplexRational):
                if rel not in ("==", "!="):
                    raise ParseError(hf.where("relation"), "order relation on complex values")
            again = check(hf.string("name"), lhs, rel, rhs)
            checked += 1
            if again.holds != hf.boolean("holds"):
                mismatches.append(f"{name}: {again.name}")
            if not again.holds:
                failing.append(f"{name}: {again.name}")
    out.results["revalidated"] = checked
    out.results["mismatches"] = mismatches
    out.results["failing"] = failing
    out.results["recorded_ok"] = report.get("ok")
    if mismatches or failing:
        raise HypothesisFailure("; ".join(mismatches + failing))
    return out


KINDS: dict[str, Callable[[Fields, bool, int], Outcome]] = {
    "descartes": run_descartes,
    "dlvp": run_dlvp,
    "kim": run_kim,
    "argvar": run_argvar,
    "jensen": run_jensen,
    "bernstein": run_bernstein,
    "voorhoeve": run_voorhoeve,
    "pseudopoly": run_pseudopoly,
    "polya": run_polya,
    "chain": run_chain,
    "tangency": run_tangency,
    "meander": run_meander,
    "mult": run_mult,
    "fuchs": run_fuchs,
    "curve": run_curve,
    "verify": run_verify,
}


def outcome_to_dict(out: Outcome) -> dict:
    d: dict[str, Any] = {"certificates": {k: c.to_dict() for k, c in out.certificates.items()}}
    if out.oracle:
        d["oracle"] = jsonable(out.oracle)
    if out.results:
        d["results"] = jsonable(out.results)
    if out.series:
        d["series"] = jsonable(out.series)
    if out.ok is not None:
        d["ok"] = out.ok
        d["comparisons"] = [{"name": n, "bound": jsonable(b), "oracle": jsonable(o)} for n, b, o in out.comparisons]
    return d
