"""Command-line interface.

Exit codes: 0 success, 2 invalid input, 1 computation or internal
failure. Every error goes to stderr with the ``STRATEGIZER_ERROR:``
prefix so wrappers can parse outcomes reliably.
"""

from __future__ import annotations

import functools
import json
import os
import sys
from pathlib import Path
from typing import Any

import click

from . import runners
from .config import AnalysisConfig
from .dataio import load_plan_spec, load_survey_csv
from .errors import ComputationError, InputError, ValidationError
from .reports import DecisionReport

CONFIG_ENV_VAR = "STRATEGIZER_CONFIG"


def _echo_error(message: str) -> None:
    click.echo(f"STRATEGIZER_ERROR: {message}", err=True)


def handle_errors(func):
    """Map exception families onto the exit-code contract."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except InputError as exc:
            _echo_error(str(exc))
            sys.exit(2)
        except ComputationError as exc:
            _echo_error(str(exc))
            sys.exit(1)
        except click.ClickException:
            raise
        except Exception as exc:  # pragma: no cover - defensive
            _echo_error(f"internal error: {exc}")
            sys.exit(1)

    return wrapper


def _file_config(config_path: str | None) -> AnalysisConfig:
    config = AnalysisConfig()
    path = config_path or os.environ.get(CONFIG_ENV_VAR)
    if path:
        try:
            file_overrides = json.loads(Path(path).read_text(encoding="utf-8"))
        except FileNotFoundError:
            raise ValidationError(f"config file not found: {path}") from None
        except json.JSONDecodeError as exc:
            raise ValidationError(f"config file is not valid JSON: {exc}") from None
        config = config.merged(file_overrides)
    return config


def _load_inputs(data: str | None, plans_path: str | None, config_path: str | None,
                 overrides: dict[str, Any]):
    """Parse both input files and layer config: defaults < plan file < file < flags."""
    if not data:
        raise ValidationError("--data is required")
    if not plans_path:
        raise ValidationError("--plans is required")
    records = load_survey_csv(data)
    plan_specs, plan_file_config = load_plan_spec(plans_path)
    config = AnalysisConfig().merged(plan_file_config)
    path = config_path or os.environ.get(CONFIG_ENV_VAR)
    if path:
        try:
            json_overrides = json.loads(Path(path).read_text(encoding="utf-8"))
        except FileNotFoundError:
            raise ValidationError(f"config file not found: {path}") from None
        except json.JSONDecodeError as exc:
            raise ValidationError(f"config file is not valid JSON: {exc}") from None
        config = config.merged(json_overrides)
    config = config.merged(overrides)
    return records, plan_specs, config


def _emit(report: DecisionReport, out: str | None, fmt: str) -> None:
    text = report.to_json() if fmt == "json" else report.human_log
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        click.echo(text, nl=False)


def _overrides(**pairs: Any) -> dict[str, Any]:
    return {k: v for k, v in pairs.items() if v is not None}


common_options = [
    click.option("--data", type=click.Path(), default=None, help="Survey responses CSV."),
    click.option("--plans", "plans_path", type=click.Path(), default=None, help="Plan-spec JSON."),
    click.option("--config", "config_path", type=click.Path(), default=None,
                 help=f"Config overrides JSON (or ${CONFIG_ENV_VAR})."),
    click.option("--out", type=click.Path(), default=None, help="Write the report here instead of stdout."),
    click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="json"),
    click.option("--wc", type=float, default=None, help="Override the cost scaling factor."),
    click.option("--seed", type=int, default=None, help="Override the random seed."),
]


def with_common_options(func):
    for option in reversed(common_options):
        func = option(func)
    return func


@click.group()
def main():
    """Rank amenity plans, issue go/no-go calls, and compare infrastructure bids."""


@main.command()
@with_common_options
@handle_errors
def rank(data, plans_path, config_path, out, fmt, wc, seed):
    """Rank all plans by expected utility."""
    records, plan_specs, config = _load_inputs(data, plans_path, config_path,
                                               _overrides(w_c=wc, seed=seed))
    _emit(runners.run_rank(records, plan_specs, config), out, fmt)


@main.command()
@with_common_options
@click.option("--plan", "plan_id", default=None, help="Plan to assess (default: first declared).")
@handle_errors
def gonogo(data, plans_path, config_path, out, fmt, wc, seed, plan_id):
    """Compare one plan against its status-quo twin."""
    records, plan_specs, config = _load_inputs(data, plans_path, config_path,
                                               _overrides(w_c=wc, seed=seed))
    _emit(runners.run_gonogo(records, plan_specs, config, plan_id), out, fmt)


@main.command()
@with_common_options
@click.option("--increment", type=float, default=None, help="Probability lattice increment.")
@handle_errors
def sweep(data, plans_path, config_path, out, fmt, wc, seed, increment):
    """Sweep scenario probability assignments across all plans."""
    records, plan_specs, config = _load_inputs(data, plans_path, config_path,
                                               _overrides(w_c=wc, seed=seed))
    _emit(runners.run_sweep(records, plan_specs, config, increment), out, fmt)


@main.command()
@with_common_options
@click.option("--draws", type=int, default=None, help="Draw count (default: household count).")
@click.option("--workers", type=int, default=1, help="Sampling worker count.")
@handle_errors
def montecarlo(data, plans_path, config_path, out, fmt, wc, seed, draws, workers):
    """Simulate preference shares; two plans compare, one runs go/no-go."""
    records, plan_specs, config = _load_inputs(data, plans_path, config_path,
                                               _overrides(w_c=wc, seed=seed))
    _emit(runners.run_montecarlo(records, plan_specs, config, draws, workers=workers), out, fmt)


@main.command("infra")
@click.option("--data", type=click.Path(), default=None, help="Survey CSV with a lifespan column.")
@click.option("--config", "config_path", type=click.Path(), default=None)
@click.option("--out", type=click.Path(), default=None)
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="json")
@click.option("--max-lifespan", type=float, default=None, help="Longest lifespan offered to respondents.")
@click.option("--low-cost", type=float, default=None, help="Cost target of the low option.")
@click.option("--low-mitigation", type=float, default=None)
@click.option("--high-cost", type=float, default=None)
@click.option("--high-mitigation", type=float, default=None)
@click.option("--draws", type=int, default=0, help="Monte Carlo draws (0 disables).")
@click.option("--seed", type=int, default=None)
@handle_errors
def infra_command(data, config_path, out, fmt, max_lifespan, low_cost, low_mitigation,
                  high_cost, high_mitigation, draws, seed):
    """Recommend a bid type from cost and risk tolerance."""
    if not data:
        raise ValidationError("--data is required")
    config = _file_config(config_path).merged(
        _overrides(max_possible_lifespan=max_lifespan, seed=seed)
    )
    records = load_survey_csv(data)
    option_values = (low_cost, low_mitigation, high_cost, high_mitigation)
    options = None
    if any(v is not None for v in option_values):
        if any(v is None for v in option_values):
            raise ValidationError(
                "--low-cost, --low-mitigation, --high-cost and --high-mitigation must be given together"
            )
        options = option_values
    _emit(runners.run_infra(records, config, options, draws), out, fmt)


@main.command()
@click.option("--stdev", "s", type=float, default=None, help="Population standard deviation estimate.")
@click.option("--width", "w", type=float, default=None, help="Required confidence interval width.")
@click.option("--confidence", type=float, default=0.95)
@click.option("--pilot-n", type=int, default=12)
@click.option("--out", type=click.Path(), default=None)
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="json")
@handle_errors
def samplesize(s, w, confidence, pilot_n, out, fmt):
    """Minimum survey sample size for a target confidence interval."""
    if s is None or w is None:
        raise ValidationError("--stdev and --width are required")
    _emit(runners.run_samplesize(s, w, confidence, pilot_n), out, fmt)


@main.command()
@click.option("--bind", default="127.0.0.1:8000", help="host:port to listen on.")
@click.option("--config", "config_path", type=click.Path(), default=None)
@handle_errors
def serve(bind, config_path):
    """Run the HTTP analysis service."""
    import uvicorn

    from .api import create_app

    config = _file_config(config_path)
    host, _, port = bind.partition(":")
    uvicorn.run(create_app(config), host=host or "127.0.0.1", port=int(port or "8000"))


if __name__ == "__main__":
    main()
