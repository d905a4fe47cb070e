"""Lie-derivative ideal chains, stabilization certificates, tangency orders and the induced
intersection bound between a trajectory of a polynomial field and a hyperplane."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .certificate import BoundCertificate, check
from .exact.interval import interval_eval
from .exact.linalg import solve
from .exact.multipoly import MultiPoly, grlex_key, monomials_upto
from .exact.scalars import to_fraction
from .ode_bounds import LinearOdeSpec, dlvp_zero_bound
from .oracle import RootCountReport, Trajectory, count_real_zeros, integrate_field
from .samplers import PolyVectorField

SLACK_SCHEDULE = (2, 4, 6, 8)


class ChainError(ValueError):
    """No bounded-degree certificate was found within the cap."""


def lie_derivative(u: MultiPoly, v: PolyVectorField) -> MultiPoly:
    return v.lie_derivative(u)


def lie_chain(u0: MultiPoly, v: PolyVectorField, length: int) -> list[MultiPoly]:
    chain = [u0]
    for _ in range(length):
        chain.append(lie_derivative(chain[-1], v))
    return chain


@dataclass
class IdealChainCertificate:
    """``u_nu = sum_{i=1..nu} h_i u_{nu-i}`` with ``u_{i+1} = D_v u_i``."""

    nu: int
    chain: list[MultiPoly]
    cofactors: list[MultiPoly]  # h_1..h_nu
    slack: int
    degree_caps: list[int]
    schedule: tuple = SLACK_SCHEDULE

    def verify(self, v: PolyVectorField | None = None) -> bool:
        if v is not None:
            for a, b in zip(self.chain, self.chain[1:]):
                if lie_derivative(a, v) != b:
                    return False
        n = self.chain[0].nvars
        total = MultiPoly(n, {})
        for i, h in enumerate(self.cofactors, start=1):
            total = total + h * self.chain[self.nu - i]
        return total == self.chain[self.nu]

    def to_dict(self) -> dict:
        return {
            "nu": self.nu,
            "chain": [str(u) for u in self.chain],
            "cofactors": [str(h) for h in self.cofactors],
            "slack": self.slack,
            "degree_caps": self.degree_caps,
            "schedule": list(self.schedule),
        }


def _cofactor_solve(chain: Sequence[MultiPoly], nu: int, slack: int) -> tuple[list[MultiPoly], list[int]] | None:
    n = chain[0].nvars
    target = chain[nu]
    dt = max(target.degree, 0)
    caps = []
    columns = []  # (sort key, i, monomial)
    for i in range(1, nu + 1):
        base = chain[nu - i]
        if base.is_zero():
            caps.append(-1)
            continue
        cap = dt - base.degree + slack
        caps.append(cap)
        if cap < 0:
            continue
        for m in monomials_upto(n, cap):
            columns.append((grlex_key(m), i, m))
    columns.sort(key=lambda c: (c[0], c[1]))
    if not columns:
        return ([MultiPoly(n, {}) for _ in range(nu)], caps) if target.is_zero() else None
    # rows indexed by monomials of the products
    row_index: dict[tuple, int] = {}
    entries: list[dict[int, Fraction]] = []
    for j, (_, i, m) in enumerate(columns):
        base = chain[nu - i]
        col: dict[int, Fraction] = {}
        for alpha, c in base.terms.items():
            key = tuple(a + b for a, b in zip(alpha, m))
            if key not in row_index:
                row_index[key] = len(row_index)
            col[row_index[key]] = c
        entries.append(col)
    for alpha in target.terms:
        if alpha not in row_index:
            row_index[alpha] = len(row_index)
    nrows = len(row_index)
    a = [[Fraction(0)] * len(columns) for _ in range(nrows)]
    for j, col in enumerate(entries):
        for r, c in col.items():
            a[r][j] = c
    b = [Fraction(0)] * nrows
    for alpha, c in target.terms.items():
        b[row_index[alpha]] = c
    x = solve(a, b)
    if x is None:
        return None
    hs = [dict() for _ in range(nu)]
    for xj, (_, i, m) in zip(x, columns):
        if xj:
            hs[i - 1][m] = xj
    return [MultiPoly(n, h) for h in hs], caps


def chain_stabilize(
    u0: MultiPoly, v: PolyVectorField, cap: int = 6, slack: int = 2, max_slack: int = 8
) -> IdealChainCertificate:
    """Smallest ``nu <= cap`` with a bounded-degree cofactor certificate.

    For each ``nu`` the degree slack escalates from ``slack`` by 2 up to ``max_slack``.
    Failure means the degree caps were too small, not that the chain never stabilizes.
    """
    if u0.is_zero():
        raise ValueError("u0 must be nonzero")
    if u0.nvars != v.dimension:
        raise ValueError("dimension mismatch")
    schedule = tuple(range(slack, max_slack + 1, 2))
    chain = [u0]
    for nu in range(1, cap + 1):
        chain.append(lie_derivative(chain[-1], v))
        for s in schedule:
            res = _cofactor_solve(chain, nu, s)
            if res is not None:
                hs, caps = res
                cert = IdealChainCertificate(nu, list(chain), hs, s, caps, schedule)
                if not cert.verify():
                    raise ArithmeticError("cofactor certificate failed re-expansion")
                return cert
    raise ChainError(f"no certificate within cap {cap} (slack up to {max_slack})")


def tangency_order(v: PolyVectorField, p: MultiPoly, q: Sequence, cap: int = 32) -> int:
    """``min{k : (L_v^k P)(q) != 0}``, the order of contact of the trajectory through ``q`` with ``P = 0``."""
    q = [to_fraction(c) for c in q]
    if all(c == 0 for c in v.at(q)):
        raise ValueError("singular point: v(q) = 0")
    u = p
    for k in range(cap + 1):
        if u(q) != 0:
            return k
        u = lie_derivative(u, v)
    raise ValueError(f"tangency >= {cap} (possibly invariant)")


@dataclass
class MeanderingResult:
    certificate: BoundCertificate
    chain: IdealChainCertificate
    trajectory: Trajectory
    oracle: RootCountReport | None = None

    @property
    def ok(self) -> bool | None:
        if self.oracle is None or self.certificate.bound is None:
            return None
        return self.certificate.bound >= self.oracle.count


def trajectory_oracle(u0: MultiPoly, traj: Trajectory, delta) -> RootCountReport:
    delta = float(delta)

    def f(t):
        return u0.eval_numeric(traj(t))

    return count_real_zeros(f, -delta, delta)


def meandering_bound(
    v: PolyVectorField,
    u0: MultiPoly,
    q: Sequence,
    delta,
    cap: int = 6,
    verify: bool = False,
) -> MeanderingResult:
    """Bound on the zeros of ``u0`` along the trajectory through ``q`` for ``t in [-delta, delta]``.

    Along the trajectory ``y = u0(gamma(t))`` satisfies ``y^(nu) = sum_i h_i(gamma) y^(nu-i)``,
    so the oscillation bound applies with ``A_i = max |h_i|`` over the trajectory enclosure.
    """
    if u0.degree > 1:
        raise ValueError("u0 must be affine")
    delta = to_fraction(delta)
    q = [to_fraction(c) for c in q]
    chain = chain_stabilize(u0, v, cap=cap)
    traj = integrate_field(v, q, delta, symmetric=True)
    box = traj.enclosure
    a_bounds = [interval_eval(h, box).magnitude() for h in chain.cofactors]
    initial = [u(q) for u in chain.chain[: chain.nu]]
    theorem = "induced linear equation along the trajectory with oscillation bound"
    if all(x == 0 for x in initial):
        cert = BoundCertificate(
            None, "meander", theorem,
            [check("trajectory leaves the hyperplane", 0, "!=", 0)],
            ["u_i(q) = 0 for all i < nu: the trajectory stays in the hyperplane"],
            extras={"nu": chain.nu},
        )
    else:
        dl = dlvp_zero_bound(LinearOdeSpec(chain.nu, tuple(a_bounds), 2 * delta))
        cert = BoundCertificate(
            dl.bound, "meander", theorem,
            [check("certificate re-expands exactly", chain.verify(v), "==", True)] + dl.hypotheses,
            [
                f"nu = {chain.nu}",
                "cofactors h = [" + ", ".join(str(h) for h in chain.cofactors) + "]",
                f"enclosure box = {box!r}",
                "A_i = max |h_i| over the enclosure = [" + ", ".join(str(a) for a in a_bounds) + "]",
                f"segment length 2*delta = {2 * delta}",
            ] + dl.trace,
            extras={"nu": chain.nu, "A": a_bounds, "segments": dl.extras.get("segments"),
                    "context": "a-priori growth estimates for nu and delta are not computed"},
        )
    oracle = trajectory_oracle(u0, traj, delta) if verify else None
    return MeanderingResult(cert, chain, traj, oracle)
