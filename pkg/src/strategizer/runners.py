"""Analysis runners shared by the CLI and the HTTP service.

Every runner takes parsed inputs plus an effective config and returns a
DecisionReport, so both interfaces emit byte-identical results for the
same inputs.
"""

from __future__ import annotations

from typing import Any, Sequence

from . import analysis, infra, plans, reports, survey
from .config import AnalysisConfig
from .errors import ValidationError
from .dataio import plan_to_dict
from .plans import PlanSpec
from .reports import DecisionReport, ReportKind
from .survey import ResponseRecord


def dataset_digest(records: Sequence[ResponseRecord]) -> str:
    return reports.content_digest([
        [r.respondent_id, r.plan_id, r.attribute_id, r.max_cost, r.utilization, r.lifespan]
        for r in records
    ])


def _descriptor(records, plan_specs, config, params: dict[str, Any]) -> dict[str, Any]:
    return {
        "dataset": dataset_digest(records),
        "plans": [plan_to_dict(p) for p in plan_specs],
        "config": config.to_dict(),
        "params": params,
    }


def select_plan(plan_specs: Sequence[PlanSpec], plan_id: str | None) -> PlanSpec:
    if plan_id is None:
        return plan_specs[0]
    for plan in plan_specs:
        if plan.plan_id == plan_id:
            return plan
    raise ValidationError(f"plan '{plan_id}' not found in the plan set")


def run_rank(records, plan_specs, config: AnalysisConfig) -> DecisionReport:
    measurements = survey.collect_measurements(records, config)
    evaluations = plans.rank_plans(plan_specs, measurements, config)
    return reports.build_report(
        ReportKind.RANK,
        _descriptor(records, plan_specs, config, {}),
        {"ranking": [e.to_dict() for e in evaluations]},
        reports.render_rank_text(evaluations),
    )


def run_gonogo(records, plan_specs, config: AnalysisConfig, plan_id: str | None = None) -> DecisionReport:
    measurements = survey.collect_measurements(records, config)
    plan = select_plan(plan_specs, plan_id)
    result = plans.go_no_go(plan, measurements, config)
    return reports.build_report(
        ReportKind.GO_NO_GO,
        _descriptor(records, plan_specs, config, {"plan_id": plan.plan_id}),
        result.to_dict(),
        reports.render_go_no_go_text(result),
    )


def run_sweep(records, plan_specs, config: AnalysisConfig, increment: float | None = None) -> DecisionReport:
    measurements = survey.collect_measurements(records, config)
    inc = increment if increment is not None else config.sweep_increment
    results = analysis.probability_sweep(plan_specs, measurements, config, inc)
    plan_ids = [p.plan_id for p in plan_specs]
    scenario_utilities = {
        p.plan_id: plans.plan_scenario_utilities(p, measurements, config) for p in plan_specs
    }
    return reports.build_report(
        ReportKind.SWEEP,
        _descriptor(records, plan_specs, config, {"increment": inc}),
        {"results": [r.to_dict() for r in results], "increment": inc},
        reports.render_sweep_text(results, plan_ids, scenario_utilities, config.hurwicz_alpha),
    )


def run_montecarlo(
    records,
    plan_specs,
    config: AnalysisConfig,
    draws: int | None = None,
    seed: int | None = None,
    workers: int = 1,
) -> DecisionReport:
    measurements = survey.collect_measurements(records, config)
    if len(plan_specs) >= 2:
        result = analysis.monte_carlo_compare(
            plan_specs[0], plan_specs[1], measurements, config, draws, seed, workers
        )
        label = f"{plan_specs[0].plan_id} vs {plan_specs[1].plan_id}"
    else:
        result = analysis.monte_carlo_go_no_go(
            plan_specs[0], measurements, config, draws, seed, workers
        )
        label = f"{plan_specs[0].plan_id} vs status quo"
    return reports.build_report(
        ReportKind.MONTE_CARLO,
        _descriptor(records, plan_specs, config,
                    {"draws": result.draw_count, "seed": result.seed, "label": label}),
        {"label": label, "result": result.to_dict()},
        reports.render_monte_carlo_text(result, label),
    )


def run_infra(
    records,
    config: AnalysisConfig,
    options: tuple[float, float, float, float] | None = None,
    draws: int = 0,
    seed: int | None = None,
) -> DecisionReport:
    """``options`` is (low cost, low mitigation, high cost, high mitigation)."""
    measurement = infra.summarize_infra(records, config)
    descriptor = {
        "dataset": dataset_digest(records),
        "config": config.to_dict(),
        "params": {"options": list(options) if options else None, "draws": draws},
    }
    if options is not None:
        comparison = infra.infra_scenario_compare(
            infra.InfraOption("low-cost-low-mitigation", options[0], options[1]),
            infra.InfraOption("high-cost-high-mitigation", options[2], options[3]),
            measurement, config, draws=draws, seed=seed,
        )
        payload = comparison.to_dict()
        human = reports.render_infra_text(comparison)
    else:
        recommendation = infra.infra_preference(measurement, config)
        payload = recommendation.to_dict()
        human = reports.render_infra_recommendation_text(recommendation)
    return reports.build_report(ReportKind.INFRA, descriptor, payload, human)


def run_samplesize(s: float, w: float, confidence: float = 0.95, pilot_n: int = 12) -> DecisionReport:
    n = survey.required_sample_size(s, w, confidence, pilot_n)
    params = {"s": s, "w": w, "confidence": confidence, "pilot_n": pilot_n}
    return reports.build_report(
        ReportKind.SAMPLE_SIZE,
        {"params": params},
        {**params, "required_n": n},
        reports.render_sample_size_text(s, w, confidence, pilot_n, n),
    )
