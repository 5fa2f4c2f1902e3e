"""Global analysis constants and their layering rules.

Precedence is request/CLI overrides > config file > built-in defaults,
applied with :meth:`AnalysisConfig.merged`.
"""

from __future__ import annotations

from dataclasses import dataclass, fields, replace
from typing import Any, Mapping

from .errors import SchemaError, ValidationError


@dataclass(frozen=True)
class AnalysisConfig:
    """Constants shared by every analysis.

    ``lower``/``upper`` bound the discrete cost/quality target scale,
    ``c_ref`` anchors curve fits, and ``k_q_nominal`` is the common
    quality convergence constant applied to all plans.
    """

    lower: float = 1.0
    upper: float = 5.0
    w_q: float = 2.0
    w_c: float = 2.0
    c_ref: float = 1.2
    k_q_nominal: float = 2.078
    max_possible_cost: float = 35.0
    max_possible_lifespan: float | None = None
    households: int = 5400
    hurwicz_alpha: float = 0.5
    sweep_increment: float = 0.02
    fit_tolerance: float = 1e-9
    seed: int = 0
    pilot_n: int = 12

    def __post_init__(self):
        if not self.lower < self.upper:
            raise ValidationError(f"lower must be below upper, got [{self.lower}, {self.upper}]")
        if self.w_c < 1.0 or self.w_q < 1.0:
            raise ValidationError("w_c and w_q must be at least 1")
        if not (self.lower <= self.c_ref < self.upper):
            raise ValidationError(f"c_ref {self.c_ref} must lie in [{self.lower}, {self.upper})")
        if self.fit_tolerance <= 0.0:
            raise ValidationError("fit_tolerance must be positive")
        if self.max_possible_cost <= 0.0:
            raise ValidationError("max_possible_cost must be positive")
        if self.max_possible_lifespan is not None and self.max_possible_lifespan <= 0.0:
            raise ValidationError("max_possible_lifespan must be positive when set")
        if not (0.0 <= self.hurwicz_alpha <= 1.0):
            raise ValidationError("hurwicz_alpha must lie in [0, 1]")
        if not (0.0 < self.sweep_increment <= 0.5):
            raise ValidationError("sweep_increment must lie in (0, 0.5]")
        if self.households < 1:
            raise ValidationError("households must be a positive integer")
        if self.pilot_n < 2:
            raise ValidationError("pilot_n must be at least 2")

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def merged(self, overrides: Mapping[str, Any] | None) -> "AnalysisConfig":
        """Return a copy with ``overrides`` applied; unknown keys are rejected."""
        if not overrides:
            return self
        known = {f.name for f in fields(self)}
        unknown = sorted(set(overrides) - known)
        if unknown:
            raise SchemaError(f"unknown config field '{unknown[0]}'", path=f"config.{unknown[0]}")
        cleaned = {k: v for k, v in overrides.items() if v is not None}
        return replace(self, **cleaned)

    def to_dict(self) -> dict[str, Any]:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "AnalysisConfig":
        return cls().merged(data)
