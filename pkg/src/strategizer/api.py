"""JSON-over-HTTP analysis service backing the what-if console.

Stateless except for two in-memory, content-addressed caches: uploaded
datasets and completed analyses, both keyed by digest so identical
requests replay byte-identical payloads. Validation problems return
400, unknown ids 404, and fit or sampling failures 422 with the
attribute named in the error body.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Any

from fastapi import FastAPI, Request
from fastapi.responses import Response

from . import runners
from .config import AnalysisConfig
from .dataio import parse_plan_spec, parse_survey_csv
from .errors import ComputationError, InputError
from .reports import canonical_json, content_digest
from .survey import ResponseRecord, collect_measurements

ANALYSIS_KINDS = ("rank", "gonogo", "sweep", "montecarlo", "infra")


@dataclass
class _Dataset:
    records: list[ResponseRecord]
    summary: dict[str, Any]


class _Store:
    """Content-addressed caches with single-writer registration."""

    def __init__(self):
        self._lock = threading.Lock()
        self.datasets: dict[str, _Dataset] = {}
        self.analyses: dict[str, bytes] = {}

    def put_dataset(self, digest: str, dataset: _Dataset) -> None:
        with self._lock:
            self.datasets.setdefault(digest, dataset)

    def put_analysis(self, digest: str, body: bytes) -> None:
        with self._lock:
            self.analyses.setdefault(digest, body)


def _json_response(payload: Any, status_code: int = 200) -> Response:
    return Response(canonical_json(payload), status_code=status_code, media_type="application/json")


def _error_response(status_code: int, kind: str, message: str, **extra) -> Response:
    body = {"error": {"type": kind, "message": message, **extra}}
    return _json_response(body, status_code)


def create_app(config: AnalysisConfig | None = None) -> FastAPI:
    defaults = config or AnalysisConfig()
    store = _Store()
    app = FastAPI(title="strategizer", docs_url=None, redoc_url=None)

    @app.exception_handler(InputError)
    async def _input_error(request: Request, exc: InputError) -> Response:
        return _error_response(400, type(exc).__name__, str(exc), **exc.details)

    @app.exception_handler(ComputationError)
    async def _computation_error(request: Request, exc: ComputationError) -> Response:
        return _error_response(422, type(exc).__name__, str(exc), **exc.details)

    @app.get("/api/defaults")
    async def get_defaults() -> Response:
        return _json_response(defaults.to_dict())

    @app.post("/api/datasets")
    async def post_dataset(request: Request) -> Response:
        raw = await request.body()
        try:
            text = raw.decode("utf-8")
        except UnicodeDecodeError as exc:
            return _error_response(400, "ParseError", f"body is not valid UTF-8: {exc}")
        records = parse_survey_csv(text)
        digest = content_digest(text)
        measurements = collect_measurements(records)
        summary = {
            "dataset_id": digest,
            "record_count": len(records),
            "attributes": [
                {
                    "plan_id": plan_id,
                    "attribute_id": attribute_id,
                    "count": m.count,
                    "mean_max_cost": m.mean_max_cost,
                    "stdev_max_cost": m.stdev_max_cost,
                    "mean_utilization": m.mean_utilization,
                    "stdev_utilization": m.stdev_utilization,
                }
                for (plan_id, attribute_id), m in measurements.items()
            ],
            "has_lifespan": any(r.lifespan is not None for r in records),
        }
        store.put_dataset(digest, _Dataset(records, summary))
        return _json_response(summary)

    @app.post("/api/analyses/{kind}")
    async def post_analysis(kind: str, request: Request) -> Response:
        if kind not in ANALYSIS_KINDS:
            return _error_response(404, "NotFound", f"unknown analysis kind '{kind}'")
        body = await request.json()
        if not isinstance(body, dict):
            return _error_response(400, "SchemaError", "request body must be a JSON object")
        dataset_id = body.get("dataset_id")
        if not isinstance(dataset_id, str) or dataset_id not in store.datasets:
            return _error_response(404, "NotFound", f"unknown dataset '{dataset_id}'")
        records = store.datasets[dataset_id].records
        config_overrides = body.get("config") or {}
        effective = defaults.merged(config_overrides)
        params = body.get("params") or {}
        if not isinstance(params, dict):
            return _error_response(400, "SchemaError", "'params' must be an object")

        if kind == "infra":
            options = params.get("options")
            if options is not None:
                if not isinstance(options, list) or len(options) != 4:
                    return _error_response(
                        400, "SchemaError",
                        "'params.options' must be [low_cost, low_mitigation, high_cost, high_mitigation]",
                    )
                options = tuple(float(v) for v in options)
            report = runners.run_infra(
                records, effective, options,
                draws=int(params.get("draws", 0)),
                seed=params.get("seed"),
            )
        else:
            plans_raw = body.get("plans")
            if plans_raw is None:
                return _error_response(400, "SchemaError", "'plans' is required")
            plan_specs, plan_config = parse_plan_spec({"plans": plans_raw})
            # Plan-file config is weakest, then service defaults stay, then
            # request overrides win.
            effective = defaults.merged({**plan_config, **config_overrides})
            if kind == "rank":
                report = runners.run_rank(records, plan_specs, effective)
            elif kind == "gonogo":
                report = runners.run_gonogo(records, plan_specs, effective, params.get("plan_id"))
            elif kind == "sweep":
                increment = params.get("increment")
                report = runners.run_sweep(
                    records, plan_specs, effective,
                    float(increment) if increment is not None else None,
                )
            else:
                draws = params.get("draws")
                report = runners.run_montecarlo(
                    records, plan_specs, effective,
                    int(draws) if draws is not None else None,
                    params.get("seed"),
                    int(params.get("workers", 1)),
                )

        body_bytes = report.to_json().encode("ascii")
        store.put_analysis(report.digest, body_bytes)
        return Response(body_bytes, media_type="application/json")

    @app.get("/api/analyses/{digest}")
    async def get_analysis(digest: str) -> Response:
        body = store.analyses.get(digest)
        if body is None:
            return _error_response(404, "NotFound", f"unknown analysis '{digest}'")
        return Response(body, media_type="application/json")

    return app


app = create_app()
