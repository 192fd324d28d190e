"""The result record shared by edge identities and theorem checks."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

# Relative slack granted to floating right-hand sides so rounding can never
# manufacture a violation.
OUTWARD = 1e-9


def le_outward(lhs, rhs) -> bool:
    """``lhs <= rhs`` with the benefit of the doubt given to ``lhs``."""
    lhs, rhs = float(lhs), float(rhs)
    return lhs <= rhs + OUTWARD * abs(rhs)


def le_strict(lhs, rhs) -> bool:
    """``lhs <= rhs`` requiring a margin; used for hypotheses."""
    lhs, rhs = float(lhs), float(rhs)
    return lhs <= rhs - OUTWARD * abs(rhs)


def _jsonable(v):
    if isinstance(v, bool) or v is None or isinstance(v, str):
        return v
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else str(v.numerator)
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        if math.isinf(v) or math.isnan(v):
            return str(v)
        return float(repr(v))
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    try:
        import numpy as np
        if isinstance(v, np.integer):
            return str(int(v))
        if isinstance(v, np.floating):
            return float(v)
    except ImportError:  # pragma: no cover
        pass
    return str(v)


@dataclass
class BoundReport:
    """One inequality checked against exact counts.

    ``holds`` is the raw comparison ``lhs <= rhs`` and is computed even when
    the hypothesis fails, so sweeps can show trends.  ``conditional`` marks
    statements that are only claimed "for q sufficiently large"; a failed
    inequality there is reported as ``conditional`` rather than ``fail``.
    """

    theorem: str
    hypothesis_satisfied: bool
    lhs: Fraction | int | float
    rhs: float
    holds: bool
    hypothesis_terms: dict[str, Any] = field(default_factory=dict)
    conditional: bool = False
    extra: dict[str, Any] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def vacuous(self) -> bool:
        return not self.hypothesis_satisfied

    @property
    def passed(self) -> bool | None:
        """True/False when the hypothesis holds, None when vacuous."""
        if self.vacuous:
            return None
        return self.holds

    @property
    def status(self) -> str:
        if self.vacuous:
            return "vacuous"
        if self.holds:
            return "pass"
        return "conditional" if self.conditional else "fail"

    @property
    def violation(self) -> bool:
        return self.status == "fail"

    @property
    def slack(self) -> float:
        return float(self.rhs) - float(self.lhs)

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "status": self.status,
            "hypothesis_satisfied": self.hypothesis_satisfied,
            "vacuous": self.vacuous,
            "conditional": self.conditional,
            "pass": self.passed,
            "holds": self.holds,
            "lhs": _jsonable(self.lhs),
            "lhs_float": float(self.lhs),
            "rhs": _jsonable(float(self.rhs)),
            "slack": _jsonable(self.slack),
            "hypothesis_terms": _jsonable(self.hypothesis_terms),
            "extra": _jsonable(self.extra),
            "notes": list(self.notes),
        }
