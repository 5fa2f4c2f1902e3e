"""Survey summaries, sample sizing, and response validation."""

from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategizer.config import AnalysisConfig
from strategizer.errors import DomainError, EmptyDataset, ValidationError
from strategizer.survey import (
    ResponseRecord,
    collect_measurements,
    required_sample_size,
    student_t_quantile,
    summarize,
    validate_responses,
)


def _rec(i, plan="P", attr="a", cost=1.0, util=2.0, lifespan=None):
    return ResponseRecord(f"r{i}", plan, attr, cost, util, lifespan)


class TestSummarize:
    def test_two_point_arithmetic(self):
        records = [_rec(1, cost=2, util=2), _rec(2, cost=3, util=3)]
        m = summarize(records, "P", "a")
        assert m.mean_max_cost == pytest.approx(2.5)
        assert m.stdev_max_cost == pytest.approx(0.7071, abs=1e-4)
        assert m.count == 2

    def test_zero_variance(self):
        records = [_rec(i, cost=4, util=4) for i in range(3)]
        m = summarize(records, "P", "a")
        assert m.mean_max_cost == 4.0
        assert m.stdev_max_cost == 0.0

    def test_single_record_has_zero_stdev(self):
        m = summarize([_rec(1, cost=7, util=3)], "P", "a")
        assert m.count == 1
        assert m.stdev_max_cost == 0.0

    def test_reproduces_reference_moments(self, survey_records):
        p1 = summarize(survey_records, "Plan_1", "amenity")
        assert (round(p1.mean_max_cost, 2), round(p1.stdev_max_cost, 2)) == (5.33, 4.56)
        assert (round(p1.mean_utilization, 2), round(p1.stdev_utilization, 2)) == (2.5, 1.24)
        p2 = summarize(survey_records, "Plan_2", "amenity")
        assert (round(p2.mean_max_cost, 2), round(p2.stdev_max_cost, 2)) == (5.83, 7.31)
        assert (round(p2.mean_utilization, 2), round(p2.stdev_utilization, 2)) == (2.33, 1.37)

    def test_filters_on_plan_and_attribute(self, survey_records):
        with pytest.raises(EmptyDataset):
            summarize(survey_records, "Plan_1", "missing")
        with pytest.raises(EmptyDataset):
            summarize(survey_records, "Plan_9", "amenity")

    def test_range_validation_with_config(self, config):
        records = [_rec(1, cost=99.0)]
        with pytest.raises(ValidationError):
            summarize(records, "P", "a", config)
        summarize(records, "P", "a")  # no config, no range check

    @given(seed=st.integers(0, 10_000))
    def test_permutation_invariant(self, seed):
        records = [_rec(i, cost=float(i % 7), util=1 + (i % 4)) for i in range(12)]
        shuffled = records[:]
        random.Random(seed).shuffle(shuffled)
        assert summarize(records, "P", "a") == summarize(shuffled, "P", "a")

    def test_collect_measurements_covers_all_pairs(self, survey_records, config):
        measurements = collect_measurements(survey_records, config)
        assert set(measurements) == {("Plan_1", "amenity"), ("Plan_2", "amenity")}


class TestRequiredSampleSize:
    def test_dollar_width(self):
        assert required_sample_size(5, 1.0, 0.95, 12) == 485

    def test_quarter_point_width(self):
        assert required_sample_size(2 / 3, 0.25, 0.95, 12) == 138

    def test_zero_variance(self):
        assert required_sample_size(0, 1.0, 0.95, 12) == 0

    def test_t_table_value(self):
        assert student_t_quantile(0.95, 11) == pytest.approx(2.201, abs=1e-3)

    def test_errors(self):
        with pytest.raises(DomainError):
            required_sample_size(-1, 1.0)
        with pytest.raises(DomainError):
            required_sample_size(5, 0.0)
        with pytest.raises(DomainError):
            required_sample_size(5, 1.0, confidence=1.0)
        with pytest.raises(DomainError):
            required_sample_size(5, 1.0, pilot_n=1)

    @given(
        s=st.floats(0.1, 20),
        w=st.floats(0.05, 5),
        confidence=st.floats(0.5, 0.999),
    )
    def test_monotonicity(self, s, w, confidence):
        base = required_sample_size(s, w, confidence, 12)
        assert required_sample_size(s * 1.5, w, confidence, 12) >= base
        assert required_sample_size(s, w * 1.5, confidence, 12) <= base
        higher_conf = min(confidence + (1 - confidence) / 2, 0.9995)
        assert required_sample_size(s, w, higher_conf, 12) >= base


class TestValidateResponses:
    def test_all_valid_is_clean(self, config):
        records = [_rec(i, cost=5, util=3) for i in range(5)]
        report = validate_responses(records, config)
        assert report.ok
        assert report.issues == ()

    def test_range_violation_names_row(self, config):
        records = [_rec(1, cost=5), _rec(2, cost=99.0)]
        report = validate_responses(records, config)
        assert len(report.issues) == 1
        issue = report.issues[0]
        assert issue.kind == "range"
        assert issue.row == 3  # header is line 1, second record is line 3
        assert "99" in issue.message

    def test_duplicate_key_detected(self, config):
        records = [_rec(1), _rec(1)]
        report = validate_responses(records, config)
        kinds = [issue.kind for issue in report.issues]
        assert kinds == ["duplicate"]
        assert report.issues[0].row == 3

    def test_undersample_reports_both_numbers(self, config):
        records = [_rec(i) for i in range(10)]
        report = validate_responses(records, config)
        check = report.sample_checks[0]
        assert check.count == 10
        assert check.required_utilization_n == 138
        assert not check.sufficient
        as_dict = check.to_dict()
        assert as_dict["count"] == 10
        assert as_dict["required_utilization_n"] == 138

    def test_lifespan_range_checked(self):
        config = AnalysisConfig(max_possible_lifespan=40)
        records = [_rec(1, lifespan=-2.0)]
        report = validate_responses(records, config)
        assert report.issues[0].kind == "range"
        assert "lifespan" in report.issues[0].message
