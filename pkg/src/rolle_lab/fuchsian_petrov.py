"""Euler equations, pseudomonomial solutions, Petrov difference operators and the zero bound
for real solutions on (0, 1).

Everything lives in the logarithmic chart ``z = ln t``: a pseudomonomial ``t^lam ln^k t``
becomes ``z^k e^(lam z)`` and the Euler derivation becomes ``d/dz``. Shifts by ``2 pi i``
produce coefficients in ``Q(i)[pi, e^(2 pi i alpha)]``; these are stored as formal sums
over ``(alpha mod 1, power of pi)`` so that unit-modulus phases stay exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from .certificate import BoundCertificate, check
from .exact.scalars import PI_UPPER, ComplexRational, coerce_scalar, to_fraction
from .exact.unipoly import UniPoly, cauchy_root_bound, isolate_real_roots, refine_root, root_count_with_multiplicity
from .ode_bounds import LinearOdeSpec, complex_variation_bound
from .oracle import RootCountReport, count_real_zeros

EPSILON = 1e-6
_I = ComplexRational(Fraction(0), Fraction(1))
# phases absorbed into the Gaussian-rational coefficient
_UNIT_PHASES = {
    Fraction(0): ComplexRational(Fraction(1), Fraction(0)),
    Fraction(1, 4): _I,
    Fraction(1, 2): ComplexRational(Fraction(-1), Fraction(0)),
    Fraction(3, 4): ComplexRational(Fraction(0), Fraction(-1)),
}


def _cr(x) -> ComplexRational:
    return ComplexRational.coerce(x)


class Coef:
    """Formal sum ``sum c_(alpha, p) pi^p e^(2 pi i alpha)`` with Gaussian-rational ``c``."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | Iterable = ()):
        out: dict[tuple[Fraction, int], ComplexRational] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for (alpha, p), c in items:
            alpha = Fraction(alpha) % 1
            c = _cr(c)
            if alpha in _UNIT_PHASES:
                c = c * _UNIT_PHASES[alpha]
                alpha = Fraction(0)
            key = (alpha, p)
            out[key] = out.get(key, ComplexRational(Fraction(0), Fraction(0))) + c
        self.terms = {k: v for k, v in sorted(out.items()) if v.abs2() != 0}

    @classmethod
    def scalar(cls, c) -> "Coef":
        return cls({(Fraction(0), 0): c})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "Coef") -> "Coef":
        return Coef(list(self.terms.items()) + list(other.terms.items()))

    def __neg__(self) -> "Coef":
        return Coef({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "Coef") -> "Coef":
        return self + (-other)

    def __mul__(self, other) -> "Coef":
        if not isinstance(other, Coef):
            other = Coef.scalar(other)
        items = []
        for (a1, p1), c1 in self.terms.items():
            for (a2, p2), c2 in other.terms.items():
                items.append(((a1 + a2, p1 + p2), c1 * c2))
        return Coef(items)

    __rmul__ = __mul__

    def times_phase(self, alpha, c=1, pi_power: int = 0) -> "Coef":
        return self * Coef({(Fraction(alpha), pi_power): c})

    def __eq__(self, other) -> bool:
        if not isinstance(other, Coef):
            other = Coef.scalar(other)
        return self.terms == other.terms

    def numeric(self) -> complex:
        total = 0j
        for (alpha, p), c in self.terms.items():
            total += complex(float(c.re), float(c.im)) * math.pi ** p * complex(
                math.cos(2 * math.pi * alpha), math.sin(2 * math.pi * alpha)
            )
        return total

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (alpha, p), c in self.terms.items():
            s = f"({c})"
            if p:
                s += f"*pi^{p}"
            if alpha:
                s += f"*e^(2*pi*i*{alpha})"
            parts.append(s)
        return " + ".join(parts)


@dataclass(frozen=True)
class EulerOperatorSpec:
    """``E^n + b_1 E^(n-1) + ... + b_n`` with ``E = t d/dt``."""

    coefficients: tuple

    def __post_init__(self):
        b = tuple(to_fraction(x) for x in self.coefficients)
        if not b:
            raise ValueError("order must be at least 1")
        object.__setattr__(self, "coefficients", b)

    @property
    def order(self) -> int:
        return len(self.coefficients)

    def characteristic(self) -> UniPoly:
        return UniPoly(list(reversed(self.coefficients)) + [Fraction(1)])

    @classmethod
    def from_roots(cls, roots: Sequence) -> "EulerOperatorSpec":
        p = UniPoly.from_roots([to_fraction(r) for r in roots])
        c = list(reversed(p.coeffs))
        return cls(tuple(c[1:]))


@dataclass
class SpectrumData:
    """Rational characteristic numbers with multiplicities, plus isolating intervals for the rest."""

    roots: list[tuple[Fraction, int]]
    irrational: list[tuple[Fraction, Fraction, int]] = field(default_factory=list)
    real: bool = True

    @property
    def exact(self) -> bool:
        return not self.irrational

    @property
    def total(self) -> int:
        return sum(m for _, m in self.roots) + sum(m for *_, m in self.irrational)

    def numeric_roots(self) -> list[tuple[float, int]]:
        out = [(float(r), m) for r, m in self.roots]
        out += [(float((lo + hi) / 2), m) for lo, hi, m in self.irrational]
        return out


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def _rational_roots(p: UniPoly) -> list[Fraction]:
    den = 1
    for c in p.coeffs:
        den = math.lcm(den, c.denominator)
    ints = [int(c * den) for c in p.coeffs]
    shift = 0
    while ints[shift] == 0:
        shift += 1
    roots = [Fraction(0)] if shift else []
    ints = ints[shift:]
    if len(ints) == 1:
        return roots
    if max(abs(ints[0]), abs(ints[-1])) > 10 ** 12:
        raise ValueError("coefficients too large for rational root search")
    for num in _divisors(ints[0]):
        for d in _divisors(ints[-1]):
            for s in (1, -1):
                r = Fraction(s * num, d)
                if r not in roots and p(r) == 0:
                    roots.append(r)
    return sorted(roots)


@dataclass
class EulerSolution:
    spectrum: SpectrumData
    basis: list[tuple[Fraction, int]]  # (lam, k) meaning t^lam ln^k t; rational roots only

    def basis_strings(self) -> list[str]:
        out = []
        for lam, k in self.basis:
            s = "1" if lam == 0 else ("t" if lam == 1 else f"t^({lam})")
            if k:
                s = ("" if lam == 0 else s + "*") + ("ln(t)" if k == 1 else f"ln(t)^{k}")
            out.append(s)
        # same order as SpectrumData.numeric_roots
        for lo, hi, m in self.spectrum.irrational:
            lam = f"{float((lo + hi) / 2):.15g}"
            out += [f"t^({lam})" + (f"*ln(t)^{k}" if k else "") for k in range(m)]
        return out


def euler_solve(spec: EulerOperatorSpec) -> EulerSolution:
    chi = spec.characteristic()
    rem = chi
    roots = []
    for r in _rational_roots(chi):
        lin = UniPoly([-r, 1])
        m = 0
        while rem.degree > 0:
            q, rr = divmod(rem, lin)
            if not rr.is_zero():
                break
            rem, m = q, m + 1
        roots.append((r, m))
    irr = []
    real = True
    if rem.degree > 0:
        bound = cauchy_root_bound(rem)
        if root_count_with_multiplicity(rem, -bound - 1, bound + 1) != rem.degree:
            real = False
        else:
            for part, mult in rem.squarefree_decomposition():
                if part.degree <= 0:
                    continue
                for lo, hi in isolate_real_roots(part, -bound - 1, bound + 1):
                    if lo != hi:
                        lo, hi = refine_root(part, lo, hi, 60)
                    irr.append((lo, hi, mult))
    spectrum = SpectrumData(roots, irr, real)
    if spectrum.real and spectrum.total != spec.order:
        raise ArithmeticError("unresolved clustered roots")
    basis = [(r, k) for r, m in roots for k in range(m)]
    return EulerSolution(spectrum, basis)


class PseudomonomialSum:
    """``sum c_(lam, k) z^k e^(lam z)`` in the logarithmic chart."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | Iterable = ()):
        out: dict[tuple[Fraction, int], Coef] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for (lam, k), c in items:
            if not isinstance(c, Coef):
                c = Coef.scalar(c)
            key = (to_fraction(lam), int(k))
            out[key] = out.get(key, Coef()) + c
        self.terms = {k: v for k, v in sorted(out.items()) if not v.is_zero()}

    @classmethod
    def monomial(cls, lam, k: int = 0, c=1) -> "PseudomonomialSum":
        return cls({(lam, k): c})

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_real(self) -> bool:
        return all(
            alpha == 0 and p == 0 and v.im == 0
            for c in self.terms.values()
            for (alpha, p), v in c.terms.items()
        )

    def degree_in(self, lam) -> int:
        lam = to_fraction(lam)
        return max((k for (l, k) in self.terms if l == lam), default=-1)

    def __add__(self, other):
        return PseudomonomialSum(list(self.terms.items()) + list(other.terms.items()))

    def __sub__(self, other):
        return self + PseudomonomialSum({k: -v for k, v in other.terms.items()})

    def scale(self, c) -> "PseudomonomialSum":
        return PseudomonomialSum({k: v * c for k, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, PseudomonomialSum) and self.terms == other.terms

    def eval_numeric(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        total = np.zeros_like(z)
        for (lam, k), c in self.terms.items():
            total = total + c.numeric() * z ** k * np.exp(float(lam) * z)
        return total

    def magnitude(self) -> float:
        return sum(abs(c.numeric()) for c in self.terms.values())

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"[{c!r}]*z^{k}*e^({lam}*z)" for (lam, k), c in self.terms.items())


@dataclass(frozen=True)
class PetrovOperatorSpec:
    """``P_mu = mu^-1 Delta - mu Delta^-1`` with ``mu = e^(2 pi i lam)``."""

    lam: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lam", to_fraction(self.lam))


def petrov_apply(op: PetrovOperatorSpec | object, f: PseudomonomialSum) -> PseudomonomialSum:
    """Closed form via ``(z +- 2 pi i)^k`` binomials; ``(Delta f)(z) = f(z + 2 pi i)``."""
    lam_mu = op.lam if isinstance(op, PetrovOperatorSpec) else to_fraction(op)
    items = []
    for (lam, k), c in f.terms.items():
        for m in range(k + 1):
            binom = math.comb(k, m)
            # (2 pi i)^m = 2^m i^m pi^m and (-2 pi i)^m = 2^m (-i)^m pi^m
            plus = c.times_phase(lam - lam_mu, binom * 2 ** m * _I ** m if m else binom, m)
            minus = c.times_phase(lam_mu - lam, binom * 2 ** m * (-_I) ** m if m else binom, m)
            items.append(((lam, k - m), plus - minus))
    return PseudomonomialSum(items)


def spectrum_annihilator(spectrum: SpectrumData) -> list[PetrovOperatorSpec]:
    if not spectrum.exact:
        raise ValueError("exact annihilation needs a rational spectrum")
    return [PetrovOperatorSpec(r) for r, m in spectrum.roots for _ in range(m)]


@dataclass
class AnnihilationVerdict:
    annihilated: bool
    remainder: PseudomonomialSum
    operators: list[Fraction]
    magnitude: float
    outside: list[tuple[Fraction, int]] = field(default_factory=list)

    @property
    def in_space(self) -> bool:
        return not self.outside

    def to_dict(self) -> dict:
        return {
            "annihilated": self.annihilated,
            "in_space": self.in_space,
            "outside_terms": [[str(l), k] for l, k in self.outside],
            "remainder": repr(self.remainder),
            "operators": [str(x) for x in self.operators],
            "numeric_magnitude": self.magnitude,
        }


def annihilator_check(spectrum: SpectrumData, f: PseudomonomialSum) -> AnnihilationVerdict:
    """Apply ``prod_j P_(mu_j)^(nu_j)`` and report the remainder.

    Petrov operators only see ``lam mod 1``, so terms outside the declared space whose
    exponent differs from a characteristic number by an integer are annihilated as well;
    those are listed separately in ``outside``.
    """
    ops = spectrum_annihilator(spectrum)
    g = f
    for op in ops:
        g = petrov_apply(op, g)
    mult = dict(spectrum.roots)
    outside = [(lam, k) for lam, k in f.terms if k >= mult.get(lam, 0)]
    return AnnihilationVerdict(g.is_zero(), g, [op.lam for op in ops], g.magnitude(), outside)


def solution_from_basis(basis: Sequence[tuple[Fraction, int]], coefficients: Sequence) -> PseudomonomialSum:
    if len(basis) != len(coefficients):
        raise ValueError("one coefficient per basis element")
    return PseudomonomialSum([((lam, k), coerce_scalar(c)) for (lam, k), c in zip(basis, coefficients)])


def roitman_zero_bound(spec: EulerOperatorSpec) -> BoundCertificate:
    """Zeros on (0, 1) of any real solution: ``n (2B + 1)`` with ``B`` the variation bound on 4 pi segments."""
    sol = euler_solve(spec)
    if not sol.spectrum.real:
        raise ValueError("non-real spectrum: refused (oscillating solutions such as cos(ln t) have infinitely many zeros)")
    n = spec.order
    a = tuple(abs(b) for b in spec.coefficients)
    seg = 4 * PI_UPPER
    var = complex_variation_bound(LinearOdeSpec(n, a, seg))
    b_up = var.extras["radians_upper"]
    value = n * (2 * b_up + 1)
    bound = math.floor(value)
    hyps = [check("spectrum is real", sol.spectrum.real, "==", True)] + var.hypotheses
    trace = [
        f"A_k = |b_k| = {[str(x) for x in a]}",
        f"vertical segment length 4*pi <= {seg}",
        f"B <= m (n + 1) pi <= {b_up} (~{float(b_up):.6g})",
        f"bound = floor(n (2B + 1)) = {bound}",
        "Euler-case instantiation of the bound in terms of coefficient magnitudes",
    ] + var.trace
    return BoundCertificate(
        bound, "fuchs", "Rolle inequality for the Petrov difference operator", hyps, trace,
        extras={"B_upper": b_up, "segments": var.extras["segments"],
                "spectrum": [[str(r), m] for r, m in sol.spectrum.roots]},
    )


def solution_zero_oracle(spectrum: SpectrumData, coefficients: Sequence[float], eps: float = EPSILON) -> RootCountReport:
    """Sign-scan count on ``(eps, 1)`` in the chart ``z = ln t``."""
    pairs = [(lam, k) for lam, m in spectrum.numeric_roots() for k in range(m)]
    coefficients = [float(c) for c in coefficients]

    def f(z):
        z = np.asarray(z, dtype=float)
        total = np.zeros_like(z)
        for (lam, k), c in zip(pairs, coefficients):
            total = total + c * z ** k * np.exp(lam * z)
        return total

    return count_real_zeros(f, math.log(eps), 0.0)
