"""Survey response summaries and sample-size planning."""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from typing import Iterable, Sequence

from scipy import stats as _scipy_stats

from .config import AnalysisConfig
from .errors import DomainError, EmptyDataset, ValidationError


@dataclass(frozen=True)
class ResponseRecord:
    """One survey answer for one attribute of one plan.

    ``lifespan`` is the minimum acceptable operational lifespan in
    years, present only in infrastructure surveys.
    """

    respondent_id: str
    plan_id: str
    attribute_id: str
    max_cost: float
    utilization: float
    lifespan: float | None = None


@dataclass(frozen=True)
class AttributeMeasurement:
    """Mean and sample standard deviation of responses for one attribute."""

    mean_max_cost: float
    stdev_max_cost: float
    mean_utilization: float
    stdev_utilization: float
    count: int

    def __post_init__(self):
        if self.count < 1:
            raise ValidationError("measurement count must be at least 1")
        if self.stdev_max_cost < 0.0 or self.stdev_utilization < 0.0:
            raise ValidationError("standard deviations must be nonnegative")


def _check_record(record: ResponseRecord, config: AnalysisConfig) -> str | None:
    if not (0.0 <= record.max_cost <= config.max_possible_cost):
        return f"max_cost {record.max_cost} outside [0, {config.max_possible_cost}]"
    if not (config.lower <= record.utilization <= config.upper):
        return f"utilization {record.utilization} outside [{config.lower}, {config.upper}]"
    if record.lifespan is not None:
        if record.lifespan < 0.0:
            return f"lifespan {record.lifespan} is negative"
        if config.max_possible_lifespan is not None and record.lifespan > config.max_possible_lifespan:
            return f"lifespan {record.lifespan} exceeds {config.max_possible_lifespan}"
    return None


def _sample_stdev(values: Sequence[float]) -> float:
    if len(values) < 2:
        return 0.0
    return statistics.stdev(values)


def summarize(
    records: Iterable[ResponseRecord],
    plan_id: str,
    attribute_id: str,
    config: AnalysisConfig | None = None,
) -> AttributeMeasurement:
    """Aggregate the matching records into an AttributeMeasurement.

    When ``config`` is given, every matching record is range-checked
    first and a ValidationError names the offending value.
    """
    matching = [r for r in records if r.plan_id == plan_id and r.attribute_id == attribute_id]
    if not matching:
        raise EmptyDataset(f"no responses for plan '{plan_id}' attribute '{attribute_id}'")
    if config is not None:
        for record in matching:
            problem = _check_record(record, config)
            if problem:
                raise ValidationError(
                    f"response {record.respondent_id} for plan '{plan_id}' "
                    f"attribute '{attribute_id}': {problem}"
                )
    costs = [r.max_cost for r in matching]
    utils = [r.utilization for r in matching]
    return AttributeMeasurement(
        mean_max_cost=statistics.fmean(costs),
        stdev_max_cost=_sample_stdev(costs),
        mean_utilization=statistics.fmean(utils),
        stdev_utilization=_sample_stdev(utils),
        count=len(matching),
    )


def collect_measurements(
    records: Sequence[ResponseRecord],
    config: AnalysisConfig | None = None,
) -> dict[tuple[str, str], AttributeMeasurement]:
    """Summarize every (plan, attribute) pair present in the records."""
    keys: list[tuple[str, str]] = []
    for record in records:
        key = (record.plan_id, record.attribute_id)
        if key not in keys:
            keys.append(key)
    return {key: summarize(records, key[0], key[1], config) for key in keys}


def student_t_quantile(confidence: float, df: int) -> float:
    """Two-sided Student-t critical value at the given confidence level."""
    if not (0.0 < confidence < 1.0):
        raise DomainError(f"confidence {confidence} outside (0, 1)")
    if df < 1:
        raise DomainError(f"degrees of freedom must be positive, got {df}")
    return float(_scipy_stats.t.ppf(0.5 + confidence / 2.0, df))


def required_sample_size(s: float, w: float, confidence: float = 0.95, pilot_n: int = 12) -> int:
    """Minimum sample count for a confidence interval of total width w.

    Uses N = ceil(4 * (t * s / w)^2) with the two-sided Student-t
    critical value at ``pilot_n - 1`` degrees of freedom.
    """
    if s < 0.0:
        raise DomainError(f"standard deviation estimate must be nonnegative, got {s}")
    if w <= 0.0:
        raise DomainError(f"interval width must be positive, got {w}")
    if pilot_n < 2:
        raise DomainError(f"pilot sample count must be at least 2, got {pilot_n}")
    t = student_t_quantile(confidence, pilot_n - 1)
    return math.ceil(4.0 * (t * s / w) ** 2)


@dataclass(frozen=True)
class ValidationIssue:
    """One problem found in a response set; ``row`` is the CSV line number."""

    kind: str
    message: str
    row: int | None = None
    plan_id: str | None = None
    attribute_id: str | None = None

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "message": self.message,
            "row": self.row,
            "plan_id": self.plan_id,
            "attribute_id": self.attribute_id,
        }


@dataclass(frozen=True)
class SampleCheck:
    """Observed versus required response count for one attribute."""

    plan_id: str
    attribute_id: str
    count: int
    required_cost_n: int
    required_utilization_n: int

    @property
    def sufficient(self) -> bool:
        return self.count >= max(self.required_cost_n, self.required_utilization_n)

    def to_dict(self) -> dict:
        return {
            "plan_id": self.plan_id,
            "attribute_id": self.attribute_id,
            "count": self.count,
            "required_cost_n": self.required_cost_n,
            "required_utilization_n": self.required_utilization_n,
            "sufficient": self.sufficient,
        }


@dataclass(frozen=True)
class ValidationReport:
    issues: tuple[ValidationIssue, ...] = ()
    sample_checks: tuple[SampleCheck, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.issues

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "issues": [issue.to_dict() for issue in self.issues],
            "sample_checks": [check.to_dict() for check in self.sample_checks],
        }


def validate_responses(
    records: Sequence[ResponseRecord],
    config: AnalysisConfig,
    cost_interval_width: float = 1.0,
    utilization_interval_width: float = 0.25,
    confidence: float = 0.95,
    first_row: int = 2,
) -> ValidationReport:
    """Report range violations, duplicate keys, and undersampled attributes.

    Rows are numbered as CSV lines, header on line 1, so ``first_row``
    defaults to 2. Required counts use the range/6 estimate of the
    population standard deviation for each measure.
    """
    issues: list[ValidationIssue] = []
    seen: dict[tuple[str, str, str], int] = {}
    for offset, record in enumerate(records):
        row = first_row + offset
        problem = _check_record(record, config)
        if problem:
            issues.append(ValidationIssue("range", problem, row, record.plan_id, record.attribute_id))
        key = (record.respondent_id, record.plan_id, record.attribute_id)
        if key in seen:
            issues.append(
                ValidationIssue(
                    "duplicate",
                    f"respondent '{record.respondent_id}' already answered on row {seen[key]}",
                    row,
                    record.plan_id,
                    record.attribute_id,
                )
            )
        else:
            seen[key] = row

    required_cost = required_sample_size(
        config.max_possible_cost / 6.0, cost_interval_width, confidence, config.pilot_n
    )
    required_util = required_sample_size(
        config.width / 6.0, utilization_interval_width, confidence, config.pilot_n
    )
    counts: dict[tuple[str, str], int] = {}
    for record in records:
        key = (record.plan_id, record.attribute_id)
        counts[key] = counts.get(key, 0) + 1
    checks = tuple(
        SampleCheck(plan_id, attribute_id, count, required_cost, required_util)
        for (plan_id, attribute_id), count in counts.items()
    )
    return ValidationReport(issues=tuple(issues), sample_checks=checks)
