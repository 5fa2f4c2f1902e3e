"""Shared fixtures: the two-plan comparison dataset used across the suite.

Plan_1 responses are a symmetric triple around each reference mean, so
the mean and sample stdev come out exact; Plan_2 uses the smallest
integer multiset found by brute-force search that matches its reference
moments to two decimals.
"""

from __future__ import annotations

from pathlib import Path

import pytest

from strategizer.config import AnalysisConfig
from strategizer.plans import PlanSpec, ScenarioTargets
from strategizer.survey import ResponseRecord, collect_measurements

DATA_DIR = Path(__file__).parent / "data"

PLAN_1_COSTS = (0.77, 5.33, 9.89)
PLAN_1_UTILS = (1.26, 2.5, 3.74)
PLAN_2_COSTS = (0.0, 0.0, 1.0, 5.0, 11.0, 18.0)
PLAN_2_UTILS = (1.0, 1.0, 2.0, 2.0, 4.0, 4.0)


def _records() -> list[ResponseRecord]:
    records = []
    for index, (cost, util) in enumerate(zip(PLAN_1_COSTS, PLAN_1_UTILS), start=1):
        records.append(ResponseRecord(f"r{index:02d}", "Plan_1", "amenity", cost, util))
    for index, (cost, util) in enumerate(zip(PLAN_2_COSTS, PLAN_2_UTILS), start=4):
        records.append(ResponseRecord(f"r{index:02d}", "Plan_2", "amenity", cost, util))
    return records


def _plan(plan_id: str, base: float, probabilities: tuple[float, float, float]) -> PlanSpec:
    targets = ScenarioTargets(
        low=(base, base),
        nominal=(base + 1.0, base + 1.0),
        high=(base + 2.0, base + 2.0),
        probability_override=probabilities,
    )
    return PlanSpec(plan_id, (("amenity", targets),))


@pytest.fixture()
def config() -> AnalysisConfig:
    return AnalysisConfig()


@pytest.fixture()
def survey_records() -> list[ResponseRecord]:
    return _records()


@pytest.fixture()
def two_plans() -> list[PlanSpec]:
    return [
        _plan("Plan_1", 2.0, (0.50, 0.32, 0.18)),
        _plan("Plan_2", 2.5, (0.64, 0.22, 0.14)),
    ]


@pytest.fixture()
def survey_measurements(survey_records, config):
    return collect_measurements(survey_records, config)


@pytest.fixture()
def responses_csv_path() -> Path:
    return DATA_DIR / "two_plan_responses.csv"


@pytest.fixture()
def two_plan_spec_path() -> Path:
    return DATA_DIR / "two_plan_plans.json"
