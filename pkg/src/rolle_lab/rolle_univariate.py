"""Elementary Rolle and Descartes bounds for real univariate functions and fewnomials."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .certificate import BoundCertificate, check
from .exact.scalars import sign, to_fraction
from .exact.unipoly import (
    UniPoly,
    cauchy_root_bound,
    real_root_count,
    root_count_with_multiplicity,
    sturm_root_count,
)


@dataclass(frozen=True)
class Fewnomial:
    """Laurent polynomial ``sum_{a in A} c_a t^a`` with nonzero coefficients."""

    terms: Mapping[int, Fraction]

    def __post_init__(self):
        clean = {}
        for a, c in dict(self.terms).items():
            c = to_fraction(c)
            if c:
                clean[int(a)] = clean.get(int(a), Fraction(0)) + c
        object.__setattr__(self, "terms", dict(sorted((a, c) for a, c in clean.items() if c)))

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(self.terms)

    def sign_sequence(self) -> tuple[int, ...]:
        return tuple(sign(c) for c in self.terms.values())

    def sign_changes(self) -> int:
        s = self.sign_sequence()
        return sum(1 for x, y in zip(s, s[1:]) if x != y)

    def normalized(self) -> UniPoly:
        """Multiply by ``t^mu`` so that all exponents are nonnegative."""
        if not self.terms:
            return UniPoly()
        mu = -min(self.terms)
        coeffs = [Fraction(0)] * (max(self.terms) + mu + 1)
        for a, c in self.terms.items():
            coeffs[a + mu] = c
        return UniPoly(coeffs)

    def __str__(self) -> str:
        return " + ".join(f"{c}*t^{a}" for a, c in self.terms.items()) or "0"


def fewnomial_positive_bound(p: Fewnomial) -> BoundCertificate:
    """Descartes' rule: positive roots are at most the sign changes, hence at most ``|A| - 1``."""
    if not p.terms:
        raise ValueError("zero fewnomial")
    changes = p.sign_changes()
    terms_minus_one = len(p.terms) - 1
    bound = min(changes, terms_minus_one)
    cert = BoundCertificate(
        bound=bound,
        method="descartes",
        theorem="Descartes rule of signs for Laurent polynomials",
        hypotheses=[check("sign changes do not exceed |A|-1", changes, "<=", terms_minus_one)],
        trace=[
            f"support A = {list(p.support)}",
            f"sign sequence = {list(p.sign_sequence())}",
            f"sign changes = {changes}, |A| - 1 = {terms_minus_one}",
            "bound = min(sign changes, |A| - 1)",
        ],
        unit="positive roots",
        extras={"sign_changes": changes, "terms_minus_one": terms_minus_one},
    )
    return cert


def positive_root_oracle(p: Fewnomial) -> int:
    """Exact number of distinct positive roots via Sturm on ``(0, M]``, ``M`` past the Cauchy bound."""
    q = p.normalized()
    if q.degree < 1:
        return 0
    m = cauchy_root_bound(q)
    return sturm_root_count(q, Fraction(0), m)


def _phi(sf: int, sdf: int) -> int:
    return abs(sf - sdf) // 2


def refined_rolle_bound(zdf: int, sf0: int, sdf0: int, sf1: int, sdf1: int) -> BoundCertificate:
    """Endpoint-refined Rolle bound on the zeros of ``f`` in ``[0, 1]``.

    With ``phi(t) = |sign f(t) - sign f'(t)| / 2``, the bound is ``Z(f') + phi(0) - phi(1)``:
    an extra zero of ``f`` past the last critical point needs ``f`` and ``f'`` to
    point in opposite directions at the right end, and similarly at the left end.
    """
    signs = {"sign f(0)": sf0, "sign f'(0)": sdf0, "sign f(1)": sf1, "sign f'(1)": sdf1}
    for name, s in signs.items():
        if s not in (-1, 1):
            raise ValueError(f"zero sign supplied for {name}")
    if zdf < 0:
        raise ValueError("Z(f') must be a natural number")
    p0, p1 = _phi(sf0, sdf0), _phi(sf1, sdf1)
    value = zdf + p0 - p1
    if value < 0:
        # only possible when f' has no zero but changes sign across [0, 1]
        raise ValueError("inconsistent sign data: f' keeps its sign but the endpoint signs disagree")
    return BoundCertificate(
        bound=value,
        method="refined-rolle",
        theorem="Rolle inequality with endpoint sign corrections",
        hypotheses=[check("all endpoint signs nonzero", 4, "==", 4)],
        trace=[
            f"phi(0) = |{sf0} - {sdf0}|/2 = {p0}",
            f"phi(1) = |{sf1} - {sdf1}|/2 = {p1}",
            f"bound = Z(f') + phi(0) - phi(1) = {zdf} + {p0} - {p1} = {value}",
        ],
        extras={"phi0": p0, "phi1": p1, "zdf": zdf},
    )


def refined_rolle_from_poly(f: UniPoly) -> BoundCertificate:
    """Evaluate the endpoint signs of a polynomial on ``[0, 1]`` and apply the refined bound."""
    df = f.derivative()
    vals = [f(Fraction(0)), df(Fraction(0)), f(Fraction(1)), df(Fraction(1))]
    zdf = real_root_count(df, 0, 1) if not df.is_zero() else 0
    return refined_rolle_bound(zdf, *(sign(v) for v in vals))


@dataclass
class RolleChainRow:
    k: int
    z: int
    n: int
    z_verdict: bool | None = None
    n_verdict: bool | None = None


@dataclass
class RolleChainReport:
    rows: list[RolleChainRow] = field(default_factory=list)

    @property
    def all_hold(self) -> bool:
        return all(r.z_verdict is not False and r.n_verdict is not False for r in self.rows)

    def to_dict(self) -> dict:
        return {
            "all_hold": self.all_hold,
            "rows": [
                {"k": r.k, "Z": r.z, "N": r.n, "Z_step": r.z_verdict, "N_step": r.n_verdict} for r in self.rows
            ],
        }


def rolle_chain_check(f: UniPoly, a, b) -> RolleChainReport:
    """Table of exact ``Z(f^(k))`` and ``N(f^(k))`` on ``[a, b]`` with Rolle step verdicts."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    a, b = Fraction(a), Fraction(b)
    report = RolleChainReport()
    g = f
    k = 0
    while not g.is_zero():
        report.rows.append(RolleChainRow(k, real_root_count(g, a, b), root_count_with_multiplicity(g, a, b)))
        g = g.derivative()
        k += 1
    for cur, nxt in zip(report.rows, report.rows[1:]):
        cur.z_verdict = cur.z <= nxt.z + 1
        cur.n_verdict = cur.n <= nxt.n + 1
    return report


def multiplicative_triangle(f: UniPoly, g: UniPoly, a, b) -> dict:
    """Exact counts for ``Z(fg) <= Z(f) + Z(g)`` and ``N(fg) = N(f) + N(g)``."""
    fg = f * g
    zf, zg, zfg = (real_root_count(p, a, b) for p in (f, g, fg))
    nf, ng, nfg = (root_count_with_multiplicity(p, a, b) for p in (f, g, fg))
    return {
        "Z": (zf, zg, zfg),
        "N": (nf, ng, nfg),
        "Z_holds": zfg <= zf + zg,
        "N_holds": nfg == nf + ng,
    }
