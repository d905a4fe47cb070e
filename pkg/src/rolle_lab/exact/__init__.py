"""Exact arithmetic substrate: rationals, polynomials, jets, intervals and linear algebra."""

from .interval import Interval, IntervalBox, interval_eval, interval_eval_vector
from .linalg import det, greedy_pivot_minor, nullspace, rank, rref, solve
from .multipoly import MultiPoly, TaylorJet, jet_dimension, monomials_upto
from .scalars import (
    I,
    PI_LOWER,
    PI_UPPER,
    ComplexRational,
    coerce_scalar,
    fraction_to_str,
    parse_complex_rational,
    scalar_to_str,
    sqrt_bounds,
    to_fraction,
)
from .unipoly import (
    RatFunc,
    UniPoly,
    certified_sup,
    isolate_real_roots,
    real_root_count,
    root_count_with_multiplicity,
    sturm_root_count,
    sturm_sequence,
)


def differentiate(p, variable: int = 0):
    """Formal derivative of a UniPoly or MultiPoly with respect to ``variable``."""
    if isinstance(p, UniPoly):
        if variable != 0:
            raise ValueError("univariate polynomials have one variable")
        return p.derivative()
    return p.derivative(variable)


__all__ = [
    "ComplexRational",
    "I",
    "Interval",
    "IntervalBox",
    "MultiPoly",
    "PI_LOWER",
    "PI_UPPER",
    "RatFunc",
    "TaylorJet",
    "UniPoly",
    "certified_sup",
    "coerce_scalar",
    "det",
    "differentiate",
    "fraction_to_str",
    "greedy_pivot_minor",
    "interval_eval",
    "interval_eval_vector",
    "isolate_real_roots",
    "jet_dimension",
    "monomials_upto",
    "nullspace",
    "parse_complex_rational",
    "rank",
    "real_root_count",
    "root_count_with_multiplicity",
    "rref",
    "scalar_to_str",
    "solve",
    "sqrt_bounds",
    "sturm_root_count",
    "sturm_sequence",
    "to_fraction",
]
