"""Infrastructure bid-type recommendations from cost and risk tolerance.

Cost tolerance C and risk tolerance R are the convergence constants of
curves anchored at the survey-derived indifference probabilities. Both
fits share the domain and reference point, and both probabilities must
clear the admissibility bound, which keeps the constants positive and
strictly decreasing in the probability, so the constants are directly
comparable: the smaller constant marks the scarcer tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .analysis import (
    MonteCarloResult,
    _draw_truncated,
    draw_generator,
    result_from_deltas,
    solve_anchor_curvature_array,
    unit_increasing_array,
)
from .config import AnalysisConfig
from .errors import ConstraintViolation, DomainError, EmptyDataset, FitError, ValidationError
from .survey import ResponseRecord
from .utility import (
    Direction,
    IndifferenceProbability,
    UtilityCurve,
    indifference_lower_bound,
    max_cost_to_indifference,
    solve_convergence_constant,
)


@dataclass(frozen=True)
class InfraMeasurement:
    """Cost and lifespan response moments for one infrastructure plan."""

    mean_max_cost: float
    stdev_max_cost: float
    mean_min_lifespan: float
    stdev_min_lifespan: float
    count: int
    max_possible_cost: float
    max_possible_lifespan: float

    def __post_init__(self):
        if self.count < 1:
            raise ValidationError("measurement count must be at least 1")
        if self.max_possible_cost <= 0.0 or self.max_possible_lifespan <= 0.0:
            raise ValidationError("maximum possible cost and lifespan must be positive")
        if not (0.0 <= self.mean_max_cost <= self.max_possible_cost):
            raise ValidationError(
                f"mean max cost {self.mean_max_cost} outside [0, {self.max_possible_cost}]"
            )
        if not (0.0 <= self.mean_min_lifespan <= self.max_possible_lifespan):
            raise ValidationError(
                f"mean min lifespan {self.mean_min_lifespan} outside [0, {self.max_possible_lifespan}]"
            )
        if self.stdev_max_cost < 0.0 or self.stdev_min_lifespan < 0.0:
            raise ValidationError("standard deviations must be nonnegative")


class InfraPreference(Enum):
    LOW_COST_LOW_MITIGATION = "LowCostLowMitigation"
    HIGH_COST_HIGH_MITIGATION = "HighCostHighMitigation"
    INDIFFERENT = "Indifferent"


@dataclass(frozen=True)
class InfraRecommendation:
    cost_constant: float
    risk_constant: float
    preference: InfraPreference
    cost_pi: float
    risk_pi: float

    def to_dict(self) -> dict:
        def encode(value: float) -> float | None:
            return None if math.isinf(value) else value

        return {
            "cost_constant": encode(self.cost_constant),
            "risk_constant": encode(self.risk_constant),
            "preference": self.preference.value,
            "cost_pi": self.cost_pi,
            "risk_pi": self.risk_pi,
        }


def lifespan_to_indifference(min_lifespan: float, max_possible_lifespan: float) -> IndifferenceProbability:
    """Map a demanded lifespan to a risk indifference probability.

    A respondent demanding a longer lifespan is more risk-sensitive,
    mirroring the cost mapping where lower willingness to pay yields a
    higher probability.
    """
    if max_possible_lifespan <= 0.0:
        raise DomainError(f"max possible lifespan must be positive, got {max_possible_lifespan}")
    if min_lifespan < 0.0 or min_lifespan > max_possible_lifespan:
        raise DomainError(f"min lifespan {min_lifespan} outside [0, {max_possible_lifespan}]")
    return IndifferenceProbability(min_lifespan / max_possible_lifespan)


def summarize_infra(records: Sequence[ResponseRecord], config: AnalysisConfig) -> InfraMeasurement:
    """Aggregate lifespan-bearing responses into an InfraMeasurement."""
    if config.max_possible_lifespan is None:
        raise ValidationError("config.max_possible_lifespan is required for infrastructure analysis")
    rows = [r for r in records if r.lifespan is not None]
    if not rows:
        raise EmptyDataset("no responses carry a lifespan answer")
    costs = [r.max_cost for r in rows]
    lifespans = [float(r.lifespan) for r in rows]

    def stdev(values: list[float]) -> float:
        if len(values) < 2:
            return 0.0
        mean = sum(values) / len(values)
        return math.sqrt(sum((v - mean) ** 2 for v in values) / (len(values) - 1))

    return InfraMeasurement(
        mean_max_cost=sum(costs) / len(costs),
        stdev_max_cost=stdev(costs),
        mean_min_lifespan=sum(lifespans) / len(lifespans),
        stdev_min_lifespan=stdev(lifespans),
        count=len(rows),
        max_possible_cost=config.max_possible_cost,
        max_possible_lifespan=config.max_possible_lifespan,
    )


def _tolerance_curve(p_i: float, config: AnalysisConfig) -> UtilityCurve:
    """Increasing member anchored at p_i; its constant is the tolerance."""
    return solve_convergence_constant(
        config.lower, config.upper, config.c_ref, p_i, Direction.INCREASING, config.fit_tolerance
    )


def compare_constants(
    cost_constant: float, risk_constant: float, tie_tolerance: float
) -> InfraPreference:
    if math.isinf(cost_constant) and math.isinf(risk_constant):
        return InfraPreference.INDIFFERENT
    if not math.isinf(cost_constant) and not math.isinf(risk_constant):
        if abs(risk_constant - cost_constant) <= tie_tolerance:
            return InfraPreference.INDIFFERENT
    if risk_constant < cost_constant:
        return InfraPreference.HIGH_COST_HIGH_MITIGATION
    return InfraPreference.LOW_COST_LOW_MITIGATION


def infra_preference(
    measurement: InfraMeasurement,
    config: AnalysisConfig,
    tie_tolerance: float | None = None,
) -> InfraRecommendation:
    """Recommend a bid type by comparing cost and risk tolerance constants."""
    if tie_tolerance is None:
        tie_tolerance = 1e-6 * config.width
    cost_pi = max_cost_to_indifference(measurement.mean_max_cost, measurement.max_possible_cost).value
    risk_pi = lifespan_to_indifference(
        measurement.mean_min_lifespan, measurement.max_possible_lifespan
    ).value
    bound = indifference_lower_bound(config.c_ref, config.lower, config.upper)
    for label, p_i in (("cost", cost_pi), ("risk", risk_pi)):
        if not (bound < p_i < 1.0):
            raise FitError(
                f"{label} indifference probability {p_i:.6g} must lie inside ({bound:.6g}, 1)",
                measure=label,
            )
    try:
        cost_constant = _tolerance_curve(cost_pi, config).k
    except (DomainError, ConstraintViolation) as exc:
        raise FitError(f"cost tolerance fit: {exc}", measure="cost") from exc
    try:
        risk_constant = _tolerance_curve(risk_pi, config).k
    except (DomainError, ConstraintViolation) as exc:
        raise FitError(f"risk tolerance fit: {exc}", measure="risk") from exc
    preference = compare_constants(cost_constant, risk_constant, tie_tolerance)
    return InfraRecommendation(cost_constant, risk_constant, preference, cost_pi, risk_pi)


@dataclass(frozen=True)
class InfraOption:
    """One implementation type: a cost target and a mitigation target."""

    name: str
    cost_target: float
    mitigation_target: float


@dataclass(frozen=True)
class InfraComparison:
    options: tuple[InfraOption, InfraOption]
    expected_utilities: tuple[float, float]
    preference: InfraPreference
    recommendation: InfraRecommendation
    monte_carlo: MonteCarloResult | None = None

    def to_dict(self) -> dict:
        return {
            "options": [
                {
                    "name": option.name,
                    "cost_target": option.cost_target,
                    "mitigation_target": option.mitigation_target,
                }
                for option in self.options
            ],
            "expected_utilities": list(self.expected_utilities),
            "preference": self.preference.value,
            "recommendation": self.recommendation.to_dict(),
            "monte_carlo": self.monte_carlo.to_dict() if self.monte_carlo else None,
        }


def _option_utility(
    option: InfraOption,
    cost_curve: UtilityCurve,
    risk_curve: UtilityCurve,
    w_c: float,
    mitigation_weight: float,
) -> float:
    return w_c * cost_curve.evaluate(option.cost_target) + mitigation_weight * risk_curve.evaluate(
        option.mitigation_target
    )


def infra_scenario_compare(
    low_option: InfraOption,
    high_option: InfraOption,
    measurement: InfraMeasurement,
    config: AnalysisConfig,
    draws: int = 0,
    seed: int | None = None,
    mitigation_weight: float | None = None,
    resample_limit: int = 1000,
    tie_tolerance: float | None = None,
) -> InfraComparison:
    """Compare the two implementation types of one infrastructure plan.

    The cost curve is the decreasing complement of the cost-tolerance
    member and the mitigation curve is the increasing risk-tolerance
    member, so both carry the constants the recommendation compares.
    With ``draws`` > 0 a Monte Carlo resamples both indifference
    probabilities per draw and reports the share of households
    favoring the high-mitigation option.
    """
    for option in (low_option, high_option):
        for label, value in (("cost", option.cost_target), ("mitigation", option.mitigation_target)):
            if not (config.lower <= value <= config.upper):
                raise DomainError(
                    f"option '{option.name}' {label} target {value} outside "
                    f"[{config.lower}, {config.upper}]"
                )
    if mitigation_weight is None:
        mitigation_weight = config.w_q
    if tie_tolerance is None:
        tie_tolerance = 1e-6 * config.width
    recommendation = infra_preference(measurement, config, tie_tolerance)

    cost_curve = _tolerance_curve(recommendation.cost_pi, config).complement()
    risk_curve = _tolerance_curve(recommendation.risk_pi, config)
    utilities = (
        _option_utility(low_option, cost_curve, risk_curve, config.w_c, mitigation_weight),
        _option_utility(high_option, cost_curve, risk_curve, config.w_c, mitigation_weight),
    )
    if abs(utilities[0] - utilities[1]) <= tie_tolerance:
        preference = InfraPreference.INDIFFERENT
    elif utilities[0] > utilities[1]:
        preference = InfraPreference.LOW_COST_LOW_MITIGATION
    else:
        preference = InfraPreference.HIGH_COST_HIGH_MITIGATION

    monte_carlo = None
    if draws > 0:
        monte_carlo = _infra_monte_carlo(
            low_option, high_option, measurement, config, draws,
            config.seed if seed is None else seed, mitigation_weight, resample_limit,
        )
    return InfraComparison((low_option, high_option), utilities, preference, recommendation, monte_carlo)


def _infra_monte_carlo(
    low_option: InfraOption,
    high_option: InfraOption,
    measurement: InfraMeasurement,
    config: AnalysisConfig,
    draws: int,
    seed: int,
    mitigation_weight: float,
    resample_limit: int,
) -> MonteCarloResult:
    """Delta of the low option minus the high option across sampled tolerances."""
    bound = indifference_lower_bound(config.c_ref, config.lower, config.upper)
    cost_mean = 1.0 - measurement.mean_max_cost / measurement.max_possible_cost
    cost_sd = measurement.stdev_max_cost / measurement.max_possible_cost
    risk_mean = measurement.mean_min_lifespan / measurement.max_possible_lifespan
    risk_sd = measurement.stdev_min_lifespan / measurement.max_possible_lifespan

    cost_pi = np.empty(draws, dtype=np.float64)
    risk_pi = np.empty(draws, dtype=np.float64)
    for d in range(draws):
        rng = draw_generator(seed, d)
        cost_pi[d] = _draw_truncated(
            rng, cost_mean, cost_sd, bound, 1.0, True, resample_limit, "cost indifference probability"
        )
        risk_pi[d] = _draw_truncated(
            rng, risk_mean, risk_sd, bound, 1.0, True, resample_limit, "risk indifference probability"
        )

    width = config.width
    s_ref = (config.c_ref - config.lower) / width
    z_cost = solve_anchor_curvature_array(cost_pi, s_ref)
    z_risk = solve_anchor_curvature_array(risk_pi, s_ref)

    def option_utility(option: InfraOption) -> np.ndarray:
        s_cost = (option.cost_target - config.lower) / width
        s_mit = (option.mitigation_target - config.lower) / width
        cost_u = 1.0 - unit_increasing_array(z_cost, s_cost)
        risk_u = unit_increasing_array(z_risk, s_mit)
        return config.w_c * cost_u + mitigation_weight * risk_u

    deltas = option_utility(low_option) - option_utility(high_option)
    return result_from_deltas(deltas, seed)
