"""Bound certificates: a bound plus the exact hypotheses and derivation steps behind it."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import numpy as np

from .exact.scalars import ComplexRational, fraction_to_str, scalar_to_str

INFINITE = None  # bound value meaning "no finite bound derived"


def jsonable(x: Any) -> Any:
    """Convert exact and numpy values into JSON-friendly data; rationals become strings."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return fraction_to_str(x)
    if isinstance(x, ComplexRational):
        return scalar_to_str(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        v = float(x)
        if math.isnan(v) or math.isinf(v):
            return repr(v)
        return v
    if isinstance(x, complex):
        return [jsonable(x.real), jsonable(x.imag)]
    if isinstance(x, np.ndarray):
        return [jsonable(v) for v in x.tolist()]
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if hasattr(x, "to_dict"):
        return x.to_dict()
    return str(x)


@dataclass
class Hypothesis:
    """One checked inequality: ``lhs relation rhs`` with the exact values compared."""

    name: str
    relation: str
    lhs: Any
    rhs: Any
    holds: bool
    note: str = ""

    def to_dict(self) -> dict:
        d = {
            "name": self.name,
            "relation": self.relation,
            "lhs": jsonable(self.lhs),
            "rhs": jsonable(self.rhs),
            "holds": self.holds,
        }
        if self.note:
            d["note"] = self.note
        return d


def check(name: str, lhs, relation: str, rhs, note: str = "") -> Hypothesis:
    ops = {
        "<": lambda a, b: a < b,
        "<=": lambda a, b: a <= b,
        "==": lambda a, b: a == b,
        "!=": lambda a, b: a != b,
        ">": lambda a, b: a > b,
        ">=": lambda a, b: a >= b,
    }
    return Hypothesis(name, relation, lhs, rhs, bool(ops[relation](lhs, rhs)), note)


@dataclass
class BoundCertificate:
    """Universal output of a bounding operation.

    ``bound`` is a natural number, an exact rational (for non-count bounds such as
    argument variations, see ``unit``) or None when no finite bound was derived.
    """

    bound: int | Fraction | None
    method: str
    theorem: str
    hypotheses: list[Hypothesis] = field(default_factory=list)
    trace: list[str] = field(default_factory=list)
    unit: str = "zeros"
    extras: dict = field(default_factory=dict)

    @property
    def valid(self) -> bool:
        return all(h.holds for h in self.hypotheses)

    @property
    def is_finite(self) -> bool:
        return self.bound is not None

    def to_dict(self) -> dict:
        return {
            "bound": jsonable(self.bound),
            "method": self.method,
            "theorem": self.theorem,
            "unit": self.unit,
            "hypotheses": [h.to_dict() for h in self.hypotheses],
            "trace": list(self.trace),
            "extras": jsonable(self.extras),
            "valid": self.valid,
        }
