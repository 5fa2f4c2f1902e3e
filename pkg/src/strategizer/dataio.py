"""Survey CSV and plan-spec JSON ingestion.

The responses file is a normalized CSV with the exact header
``respondent_id,plan_id,attribute_id,max_cost,utilization`` plus an
optional trailing ``lifespan`` column. Plans and config overrides come
from a JSON document validated strictly: unknown fields are rejected
with the path to the offending field.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Any, Mapping

from .errors import ParseError, SchemaError
from .plans import PlanSpec, ScenarioTargets
from .survey import ResponseRecord

CSV_HEADER = ("respondent_id", "plan_id", "attribute_id", "max_cost", "utilization")
CSV_HEADER_LIFESPAN = CSV_HEADER + ("lifespan",)


def parse_survey_csv(text: str) -> list[ResponseRecord]:
    """Parse CSV text into records; errors name the row and column."""
    reader = csv.reader(io.StringIO(text))
    try:
        header = tuple(next(reader))
    except StopIteration:
        raise ParseError("empty file: missing header", row=1) from None
    if header == CSV_HEADER:
        has_lifespan = False
    elif header == CSV_HEADER_LIFESPAN:
        has_lifespan = True
    else:
        raise ParseError(
            f"unexpected header {','.join(header)!r}; expected {','.join(CSV_HEADER)!r} "
            "with an optional trailing 'lifespan' column",
            row=1,
        )
    expected_len = len(CSV_HEADER_LIFESPAN) if has_lifespan else len(CSV_HEADER)

    records = []
    for row_number, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != expected_len:
            raise ParseError(f"expected {expected_len} fields, found {len(row)}", row=row_number)
        respondent_id, plan_id, attribute_id = row[0], row[1], row[2]
        for column, value in (("respondent_id", respondent_id), ("plan_id", plan_id),
                              ("attribute_id", attribute_id)):
            if not value:
                raise ParseError(f"{column} must not be empty", row=row_number, column=column)

        def parse_float(column: str, value: str) -> float:
            try:
                return float(value)
            except ValueError:
                raise ParseError(
                    f"could not parse {column} value {value!r} as a number",
                    row=row_number,
                    column=column,
                ) from None

        lifespan = None
        if has_lifespan and row[5] != "":
            lifespan = parse_float("lifespan", row[5])
        records.append(
            ResponseRecord(
                respondent_id=respondent_id,
                plan_id=plan_id,
                attribute_id=attribute_id,
                max_cost=parse_float("max_cost", row[3]),
                utilization=parse_float("utilization", row[4]),
                lifespan=lifespan,
            )
        )
    return records


def load_survey_csv(path: str | Path) -> list[ResponseRecord]:
    """Read and parse a survey CSV file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except FileNotFoundError:
        raise ParseError(f"file not found: {path}") from None
    except UnicodeDecodeError as exc:
        raise ParseError(f"file is not valid UTF-8: {exc}") from None
    return parse_survey_csv(text)


def dump_survey_csv(records: list[ResponseRecord]) -> str:
    """Serialize records back to CSV; parse(dump(r)) == r."""
    has_lifespan = any(r.lifespan is not None for r in records)
    header = CSV_HEADER_LIFESPAN if has_lifespan else CSV_HEADER
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    for r in records:
        row = [r.respondent_id, r.plan_id, r.attribute_id, repr(r.max_cost), repr(r.utilization)]
        if has_lifespan:
            row.append("" if r.lifespan is None else repr(r.lifespan))
        writer.writerow(row)
    return out.getvalue()


def _require_mapping(value: Any, path: str) -> Mapping[str, Any]:
    if not isinstance(value, Mapping):
        raise SchemaError(f"expected an object at {path}", path=path)
    return value


def _reject_unknown(value: Mapping[str, Any], allowed: set[str], path: str) -> None:
    unknown = sorted(set(value) - allowed)
    if unknown:
        raise SchemaError(f"unknown field '{unknown[0]}' at {path}", path=f"{path}.{unknown[0]}")


def _require_number(value: Any, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(f"expected a number at {path}", path=path)
    return float(value)


def _parse_target_pair(value: Any, path: str) -> tuple[float, float]:
    pair = _require_mapping(value, path)
    _reject_unknown(pair, {"cost", "quality"}, path)
    for field in ("cost", "quality"):
        if field not in pair:
            raise SchemaError(f"missing field '{field}' at {path}", path=f"{path}.{field}")
    return (_require_number(pair["cost"], f"{path}.cost"), _require_number(pair["quality"], f"{path}.quality"))


def _parse_probabilities(value: Any, path: str) -> tuple[float, float, float]:
    if not isinstance(value, (list, tuple)) or len(value) != 3:
        raise SchemaError(f"expected a list of 3 probabilities at {path}", path=path)
    return tuple(_require_number(v, f"{path}[{i}]") for i, v in enumerate(value))  # type: ignore[return-value]


def _parse_targets(value: Any, path: str, probabilities: tuple | None) -> ScenarioTargets:
    targets = _require_mapping(value, path)
    _reject_unknown(targets, {"low", "nominal", "high", "probabilities"}, path)
    for field in ("low", "nominal", "high"):
        if field not in targets:
            raise SchemaError(f"missing field '{field}' at {path}", path=f"{path}.{field}")
    own_probs = probabilities
    if "probabilities" in targets:
        own_probs = _parse_probabilities(targets["probabilities"], f"{path}.probabilities")
    return ScenarioTargets(
        low=_parse_target_pair(targets["low"], f"{path}.low"),
        nominal=_parse_target_pair(targets["nominal"], f"{path}.nominal"),
        high=_parse_target_pair(targets["high"], f"{path}.high"),
        probability_override=own_probs,
    )


def _parse_plan(value: Any, path: str) -> PlanSpec:
    plan = _require_mapping(value, path)
    _reject_unknown(plan, {"plan_id", "is_status_quo", "probabilities", "attributes"}, path)
    if "plan_id" not in plan or not isinstance(plan["plan_id"], str) or not plan["plan_id"]:
        raise SchemaError(f"missing or empty 'plan_id' at {path}", path=f"{path}.plan_id")
    is_status_quo = plan.get("is_status_quo", False)
    if not isinstance(is_status_quo, bool):
        raise SchemaError(f"'is_status_quo' must be a boolean at {path}", path=f"{path}.is_status_quo")
    plan_probs = None
    if "probabilities" in plan:
        plan_probs = _parse_probabilities(plan["probabilities"], f"{path}.probabilities")
    attributes_raw = plan.get("attributes")
    if not isinstance(attributes_raw, list) or not attributes_raw:
        raise SchemaError(f"'attributes' must be a nonempty list at {path}", path=f"{path}.attributes")
    attributes = []
    for index, attr_raw in enumerate(attributes_raw):
        attr_path = f"{path}.attributes[{index}]"
        attr = _require_mapping(attr_raw, attr_path)
        _reject_unknown(attr, {"attribute_id", "targets"}, attr_path)
        if "attribute_id" not in attr or not isinstance(attr["attribute_id"], str) or not attr["attribute_id"]:
            raise SchemaError(f"missing or empty 'attribute_id' at {attr_path}", path=f"{attr_path}.attribute_id")
        if "targets" not in attr:
            raise SchemaError(f"missing field 'targets' at {attr_path}", path=f"{attr_path}.targets")
        # The plan-level triple lands on the first attribute, which is the
        # plan's probability source during evaluation.
        inherited = plan_probs if index == 0 else None
        targets = _parse_targets(attr["targets"], f"{attr_path}.targets", inherited)
        attributes.append((attr["attribute_id"], targets))
    return PlanSpec(plan["plan_id"], tuple(attributes), is_status_quo)


def parse_plan_spec(document: Any) -> tuple[list[PlanSpec], dict[str, Any]]:
    """Validate a plan-spec document; returns plans plus raw config overrides."""
    root = _require_mapping(document, "$")
    _reject_unknown(root, {"plans", "config"}, "$")
    plans_raw = root.get("plans")
    if not isinstance(plans_raw, list) or not plans_raw:
        raise SchemaError("'plans' must be a nonempty list at $", path="$.plans")
    plans = [_parse_plan(p, f"$.plans[{i}]") for i, p in enumerate(plans_raw)]
    seen: set[str] = set()
    for plan in plans:
        if plan.plan_id in seen:
            raise SchemaError(f"duplicate plan_id '{plan.plan_id}'", path="$.plans")
        seen.add(plan.plan_id)
    config_overrides: dict[str, Any] = {}
    if "config" in root:
        config_overrides = dict(_require_mapping(root["config"], "$.config"))
    return plans, config_overrides


def load_plan_spec(path: str | Path) -> tuple[list[PlanSpec], dict[str, Any]]:
    """Read and validate a plan-spec JSON file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except FileNotFoundError:
        raise SchemaError(f"file not found: {path}") from None
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from None
    return parse_plan_spec(document)


def plan_to_dict(plan: PlanSpec) -> dict[str, Any]:
    """Serialize a plan back to the plan-spec JSON shape."""
    attributes = []
    for attribute_id, targets in plan.attributes:
        entry: dict[str, Any] = {
            "attribute_id": attribute_id,
            "targets": {
                "low": {"cost": targets.low[0], "quality": targets.low[1]},
                "nominal": {"cost": targets.nominal[0], "quality": targets.nominal[1]},
                "high": {"cost": targets.high[0], "quality": targets.high[1]},
            },
        }
        if targets.probability_override is not None:
            entry["targets"]["probabilities"] = list(targets.probability_override)
        attributes.append(entry)
    out: dict[str, Any] = {"plan_id": plan.plan_id, "attributes": attributes}
    if plan.is_status_quo:
        out["is_status_quo"] = True
    return out
