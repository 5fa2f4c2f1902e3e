"""Plans, scenario targets, and the expected-utility decision tree.

A plan bundles attributes; each attribute carries low/nominal/high
cost-quality targets. Scenario probabilities are either supplied as an
override triple or estimated by apportioning the quality added by each
scenario, and a plan's expected utility is the probability-weighted sum
of its per-scenario attribute utilities.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Sequence

from .config import AnalysisConfig
from .errors import (
    ConstraintViolation,
    ConvergenceFailure,
    DegenerateScenario,
    DomainError,
    EmptyDataset,
    FitError,
    ValidationError,
)
from .survey import AttributeMeasurement
from .utility import (
    Direction,
    UtilityCurve,
    attribute_total_utility,
    curve_from_constant,
    max_cost_to_indifference,
    quality_weight,
    solve_convergence_constant,
)

SCENARIOS = ("low", "nominal", "high")

Probabilities = tuple[float, float, float]

MeasurementMap = Mapping[tuple[str, str], AttributeMeasurement]


@dataclass(frozen=True)
class ScenarioTargets:
    """Low/nominal/high (cost, quality) target pairs for one attribute."""

    low: tuple[float, float]
    nominal: tuple[float, float]
    high: tuple[float, float]
    probability_override: Probabilities | None = None

    def __post_init__(self):
        costs = (self.low[0], self.nominal[0], self.high[0])
        qualities = (self.low[1], self.nominal[1], self.high[1])
        if not (costs[0] <= costs[1] <= costs[2]):
            raise ValidationError(f"cost targets must be nondecreasing, got {costs}")
        if not (qualities[0] <= qualities[1] <= qualities[2]):
            raise ValidationError(f"quality targets must be nondecreasing, got {qualities}")
        if self.probability_override is not None:
            probs = self.probability_override
            if len(probs) != 3:
                raise ValidationError(f"probability override must have 3 entries, got {len(probs)}")
            if any(p < 0.0 for p in probs):
                raise ValidationError(f"override probabilities must be nonnegative, got {probs}")
            if abs(sum(probs) - 1.0) > 1e-9:
                raise ValidationError(f"override probabilities must sum to 1, got {sum(probs)}")

    @property
    def quality_targets(self) -> tuple[float, float, float]:
        return (self.low[1], self.nominal[1], self.high[1])

    @property
    def cost_targets(self) -> tuple[float, float, float]:
        return (self.low[0], self.nominal[0], self.high[0])


@dataclass(frozen=True)
class PlanSpec:
    """A named plan: attribute target sets plus the status-quo flag."""

    plan_id: str
    attributes: tuple[tuple[str, ScenarioTargets], ...]
    is_status_quo: bool = False

    def __post_init__(self):
        if not self.attributes:
            raise ValidationError(f"plan '{self.plan_id}' must declare at least one attribute")
        seen = set()
        for attribute_id, _ in self.attributes:
            if attribute_id in seen:
                raise ValidationError(f"plan '{self.plan_id}' repeats attribute '{attribute_id}'")
            seen.add(attribute_id)

    @property
    def attribute_ids(self) -> tuple[str, ...]:
        return tuple(attribute_id for attribute_id, _ in self.attributes)


@dataclass(frozen=True)
class PlanEvaluation:
    plan_id: str
    scenario_probabilities: Probabilities
    scenario_utilities: tuple[float, float, float]
    expected_utility: float

    def to_dict(self) -> dict:
        return {
            "plan_id": self.plan_id,
            "scenario_probabilities": list(self.scenario_probabilities),
            "scenario_utilities": list(self.scenario_utilities),
            "expected_utility": self.expected_utility,
        }


class Decision(Enum):
    GO = "Go"
    NO_GO = "NoGo"


@dataclass(frozen=True)
class GoNoGoResult:
    decision: Decision
    plan: PlanEvaluation
    status_quo: PlanEvaluation

    def to_dict(self) -> dict:
        return {
            "decision": self.decision.value,
            "plan": self.plan.to_dict(),
            "status_quo": self.status_quo.to_dict(),
        }


def estimate_scenario_probabilities(
    targets: ScenarioTargets,
    quality_curve: UtilityCurve,
    q_ref: float,
) -> Probabilities:
    """Apportion scenario probabilities by each scenario's quality added.

    Each scenario's share is the increment its quality target adds to
    quality utility beyond the previous target (or the reference for
    the first), normalized by the total added across all scenarios.
    """
    q_a, q_b, q_c = targets.quality_targets
    if q_ref > q_a:
        raise DomainError(f"reference quality {q_ref} must not exceed the low target {q_a}")
    u_ref = quality_curve.evaluate(q_ref)
    u_a = quality_curve.evaluate(q_a)
    u_b = quality_curve.evaluate(q_b)
    u_c = quality_curve.evaluate(q_c)
    total = u_c - u_ref
    if total <= 0.0:
        raise DegenerateScenario(
            "scenario targets add zero total quality; supply a probability override "
            "or flag the plan as status quo"
        )
    return ((u_a - u_ref) / total, (u_b - u_a) / total, (u_c - u_b) / total)


def _quality_curve(config: AnalysisConfig) -> UtilityCurve:
    return curve_from_constant(config.lower, config.upper, config.k_q_nominal, Direction.INCREASING)


def _fit_cost_curve(measurement: AttributeMeasurement, config: AnalysisConfig) -> UtilityCurve:
    p_i = max_cost_to_indifference(measurement.mean_max_cost, config.max_possible_cost)
    return solve_convergence_constant(
        config.lower,
        config.upper,
        config.c_ref,
        p_i.value,
        Direction.DECREASING,
        config.fit_tolerance,
    )


def _resolve_measurements(
    plan: PlanSpec, measurements: MeasurementMap
) -> list[tuple[str, ScenarioTargets, AttributeMeasurement]]:
    resolved = []
    for attribute_id, targets in plan.attributes:
        key = (plan.plan_id, attribute_id)
        if key not in measurements:
            raise EmptyDataset(f"no measurement for plan '{plan.plan_id}' attribute '{attribute_id}'")
        resolved.append((attribute_id, targets, measurements[key]))
    return resolved


def _check_targets_in_domain(plan: PlanSpec, config: AnalysisConfig) -> None:
    for attribute_id, targets in plan.attributes:
        for scenario, (cost, quality) in zip(SCENARIOS, (targets.low, targets.nominal, targets.high)):
            for label, value in (("cost", cost), ("quality", quality)):
                if not (config.lower <= value <= config.upper):
                    raise DomainError(
                        f"plan '{plan.plan_id}' attribute '{attribute_id}' {scenario} {label} "
                        f"target {value} outside [{config.lower}, {config.upper}]"
                    )
        if plan.is_status_quo:
            for pair in (targets.low, targets.nominal, targets.high):
                if pair != (config.lower, config.lower):
                    raise ValidationError(
                        f"status-quo plan '{plan.plan_id}' must keep every target at {config.lower}"
                    )


def plan_scenario_utilities(
    plan: PlanSpec,
    measurements: MeasurementMap,
    config: AnalysisConfig,
) -> tuple[float, float, float]:
    """Total attribute utility of the plan under each scenario."""
    _check_targets_in_domain(plan, config)
    quality_curve = _quality_curve(config)
    totals = [0.0, 0.0, 0.0]
    for attribute_id, targets, measurement in _resolve_measurements(plan, measurements):
        try:
            cost_curve = _fit_cost_curve(measurement, config)
        except (DomainError, ConstraintViolation, ConvergenceFailure) as exc:
            raise FitError(
                f"cost curve for attribute '{attribute_id}' of plan '{plan.plan_id}': {exc}",
                plan_id=plan.plan_id,
                attribute_id=attribute_id,
            ) from exc
        try:
            w = quality_weight(measurement.mean_utilization, config.lower, config.upper, config.w_q)
        except DomainError as exc:
            raise ValidationError(
                f"attribute '{attribute_id}' of plan '{plan.plan_id}': {exc}",
                plan_id=plan.plan_id,
                attribute_id=attribute_id,
            ) from exc
        for index, (cost, quality) in enumerate((targets.low, targets.nominal, targets.high)):
            totals[index] += attribute_total_utility(
                cost, quality, config.w_c, w, cost_curve, quality_curve
            )
    return (totals[0], totals[1], totals[2])


def effective_probabilities(plan: PlanSpec, config: AnalysisConfig) -> Probabilities:
    """Override triple if present, else quality-added estimation.

    The override and the estimation targets both come from the plan's
    first attribute, preserving the one-triple-per-plan shape. A
    status-quo plan without an override gets the degenerate triple
    (1, 0, 0) since its scenarios are indistinguishable by construction.
    """
    _, first_targets = plan.attributes[0]
    if first_targets.probability_override is not None:
        return first_targets.probability_override
    if plan.is_status_quo:
        return (1.0, 0.0, 0.0)
    return estimate_scenario_probabilities(first_targets, _quality_curve(config), config.lower)


def expected_plan_utility(
    plan: PlanSpec,
    measurements: MeasurementMap,
    config: AnalysisConfig,
) -> PlanEvaluation:
    """Probability-weighted scenario utilities for one plan."""
    probabilities = effective_probabilities(plan, config)
    utilities = plan_scenario_utilities(plan, measurements, config)
    expected = sum(p * u for p, u in zip(probabilities, utilities))
    return PlanEvaluation(plan.plan_id, probabilities, utilities, expected)


def rank_plans(
    plans: Sequence[PlanSpec],
    measurements: MeasurementMap,
    config: AnalysisConfig,
) -> list[PlanEvaluation]:
    """Evaluations sorted by descending expected utility, declaration order on ties."""
    if not plans:
        raise ValidationError("at least one plan is required")
    evaluations = [expected_plan_utility(plan, measurements, config) for plan in plans]
    return sorted(evaluations, key=lambda e: -e.expected_utility)


def status_quo_twin(plan: PlanSpec, config: AnalysisConfig, probabilities: Probabilities) -> PlanSpec:
    """The plan's funding baseline: same attributes, every target at the domain floor.

    Keeps the source plan's id so measurement lookups resolve to the
    same survey data, and carries the supplied probability triple so it
    never routes through quality-added estimation.
    """
    floor = (config.lower, config.lower)
    attributes = tuple(
        (attribute_id, ScenarioTargets(floor, floor, floor, probabilities))
        for attribute_id, _ in plan.attributes
    )
    return PlanSpec(plan.plan_id, attributes, is_status_quo=True)


def go_no_go(
    plan: PlanSpec,
    measurements: MeasurementMap,
    config: AnalysisConfig,
) -> GoNoGoResult:
    """Fund the plan only if it strictly beats its status-quo twin."""
    if plan.is_status_quo:
        raise ValidationError(f"plan '{plan.plan_id}' is already the status quo")
    probabilities = effective_probabilities(plan, config)
    twin = status_quo_twin(plan, config, probabilities)
    plan_eval = expected_plan_utility(plan, measurements, config)
    twin_eval = expected_plan_utility(twin, measurements, config)
    decision = Decision.GO if plan_eval.expected_utility > twin_eval.expected_utility else Decision.NO_GO
    return GoNoGoResult(decision, plan_eval, twin_eval)
