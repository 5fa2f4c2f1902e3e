"""CSV and plan-spec ingestion."""

from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategizer.dataio import (
    dump_survey_csv,
    load_plan_spec,
    load_survey_csv,
    parse_plan_spec,
    parse_survey_csv,
    plan_to_dict,
)
from strategizer.errors import ParseError, SchemaError
from strategizer.survey import ResponseRecord

VALID_CSV = """respondent_id,plan_id,attribute_id,max_cost,utilization
r1,P,a,5.0,2
r2,P,a,7.5,3
"""


class TestSurveyCsv:
    def test_two_row_file(self):
        records = parse_survey_csv(VALID_CSV)
        assert len(records) == 2
        assert records[0] == ResponseRecord("r1", "P", "a", 5.0, 2.0)

    def test_bad_number_names_row_and_column(self):
        text = VALID_CSV + "r3,P,a,abc,2\n"
        with pytest.raises(ParseError) as excinfo:
            parse_survey_csv(text)
        assert excinfo.value.row == 4
        assert excinfo.value.column == "max_cost"

    def test_lifespan_column_populates_records(self):
        text = (
            "respondent_id,plan_id,attribute_id,max_cost,utilization,lifespan\n"
            "r1,P,a,5.0,2,25\n"
            "r2,P,a,6.0,2,\n"
        )
        records = parse_survey_csv(text)
        assert records[0].lifespan == 25.0
        assert records[1].lifespan is None

    def test_wrong_header_rejected(self):
        with pytest.raises(ParseError) as excinfo:
            parse_survey_csv("id,plan,attr,cost,util\n")
        assert excinfo.value.row == 1

    def test_empty_file_rejected(self):
        with pytest.raises(ParseError):
            parse_survey_csv("")

    def test_short_row_rejected(self):
        with pytest.raises(ParseError) as excinfo:
            parse_survey_csv(VALID_CSV + "r3,P,a,5.0\n")
        assert excinfo.value.row == 4

    def test_empty_id_rejected(self):
        with pytest.raises(ParseError) as excinfo:
            parse_survey_csv(VALID_CSV + ",P,a,5.0,2\n")
        assert excinfo.value.column == "respondent_id"

    def test_missing_file(self, tmp_path):
        with pytest.raises(ParseError):
            load_survey_csv(tmp_path / "missing.csv")

    def test_fixture_loads(self, responses_csv_path):
        records = load_survey_csv(responses_csv_path)
        assert len(records) == 9
        assert {r.plan_id for r in records} == {"Plan_1", "Plan_2"}

    @given(
        st.lists(
            st.tuples(
                st.floats(0, 35, allow_nan=False),
                st.floats(1, 5, allow_nan=False),
                st.one_of(st.none(), st.floats(0, 40, allow_nan=False)),
            ),
            min_size=1,
            max_size=8,
        )
    )
    def test_round_trip_identity(self, rows):
        records = [
            ResponseRecord(f"r{i}", "P", "a", cost, util, lifespan)
            for i, (cost, util, lifespan) in enumerate(rows)
        ]
        assert parse_survey_csv(dump_survey_csv(records)) == records


class TestPlanSpec:
    def test_fixture_file(self, two_plan_spec_path):
        plans, overrides = load_plan_spec(two_plan_spec_path)
        assert [p.plan_id for p in plans] == ["Plan_1", "Plan_2"]
        assert overrides == {}
        _, targets_1 = plans[0].attributes[0]
        assert targets_1.low == (2.0, 2.0)
        assert targets_1.high == (4.0, 4.0)
        assert targets_1.probability_override == (0.5, 0.32, 0.18)
        _, targets_2 = plans[1].attributes[0]
        assert targets_2.low == (2.5, 2.5)
        assert targets_2.probability_override == (0.64, 0.22, 0.14)

    def test_empty_plans_rejected(self):
        with pytest.raises(SchemaError):
            parse_plan_spec({"plans": []})

    def test_unknown_field_named(self):
        document = {"plans": [{"plan_id": "P", "attributes": [], "surprise": 1}]}
        with pytest.raises(SchemaError) as excinfo:
            parse_plan_spec(document)
        assert "surprise" in str(excinfo.value)

    def test_unknown_root_field_named(self):
        with pytest.raises(SchemaError) as excinfo:
            parse_plan_spec({"plans": [], "extra": 1})
        assert "extra" in str(excinfo.value)

    def test_missing_target_field_has_path(self):
        document = {
            "plans": [
                {
                    "plan_id": "P",
                    "attributes": [
                        {"attribute_id": "a", "targets": {"low": {"cost": 2, "quality": 2}}}
                    ],
                }
            ]
        }
        with pytest.raises(SchemaError) as excinfo:
            parse_plan_spec(document)
        assert excinfo.value.path == "$.plans[0].attributes[0].targets.nominal"

    def test_duplicate_plan_ids_rejected(self, two_plan_spec_path):
        plans, _ = load_plan_spec(two_plan_spec_path)
        document = {"plans": [plan_to_dict(plans[0]), plan_to_dict(plans[0])]}
        with pytest.raises(SchemaError):
            parse_plan_spec(document)

    def test_config_overrides_returned(self):
        document = {
            "plans": [
                {
                    "plan_id": "P",
                    "attributes": [
                        {
                            "attribute_id": "a",
                            "targets": {
                                "low": {"cost": 2, "quality": 2},
                                "nominal": {"cost": 3, "quality": 3},
                                "high": {"cost": 4, "quality": 4},
                            },
                        }
                    ],
                }
            ],
            "config": {"w_c": 1.5},
        }
        _, overrides = parse_plan_spec(document)
        assert overrides == {"w_c": 1.5}

    def test_plan_round_trips_through_dict(self, two_plan_spec_path):
        plans, _ = load_plan_spec(two_plan_spec_path)
        reparsed, _ = parse_plan_spec({"plans": [plan_to_dict(p) for p in plans]})
        assert reparsed == plans

    def test_invalid_json_file(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json", encoding="utf-8")
        with pytest.raises(SchemaError):
            load_plan_spec(bad)

    def test_probability_shape_checked(self):
        document = {
            "plans": [
                {
                    "plan_id": "P",
                    "probabilities": [0.5, 0.5],
                    "attributes": [
                        {
                            "attribute_id": "a",
                            "targets": {
                                "low": {"cost": 2, "quality": 2},
                                "nominal": {"cost": 3, "quality": 3},
                                "high": {"cost": 4, "quality": 4},
                            },
                        }
                    ],
                }
            ]
        }
        with pytest.raises(SchemaError):
            parse_plan_spec(document)
