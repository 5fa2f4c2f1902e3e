"""Probability sweeps, decision criteria, and Monte Carlo preference simulation.

Monte Carlo draws are reproducible and order-independent: draw ``d``
consumes only a counter-based substream keyed by ``(seed, d)``, so a
run chunked across any number of workers produces bit-identical
results for the same seed.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Sequence

import numpy as np

from .config import AnalysisConfig
from .errors import DomainError, SamplingExhausted, ShapeMismatch, ValidationError
from .plans import (
    MeasurementMap,
    PlanSpec,
    Probabilities,
    effective_probabilities,
    plan_scenario_utilities,
    status_quo_twin,
    _check_targets_in_domain,
)
from .utility import Z_LIMIT, indifference_lower_bound, _unit_increasing


class Criterion(Enum):
    EXPECTED_UTILITY = "expected_utility"
    MAXIMIN = "maximin"
    MAXIMAX = "maximax"
    MINIMAX_REGRET = "minimax_regret"
    MOST_LIKELIHOOD = "most_likelihood"
    HURWICZ = "hurwicz"


@dataclass(frozen=True)
class SweepResult:
    """Winners and margins for one probability assignment of a sweep."""

    probability_assignment: dict[str, Probabilities]
    expected_utilities: dict[str, float]
    best_by_criterion: dict[Criterion, str]
    margin: float

    def to_dict(self) -> dict:
        return {
            "probability_assignment": {k: list(v) for k, v in self.probability_assignment.items()},
            "expected_utilities": dict(self.expected_utilities),
            "best_by_criterion": {c.value: p for c, p in self.best_by_criterion.items()},
            "margin": self.margin,
        }


@dataclass(frozen=True)
class MonteCarloResult:
    draw_count: int
    mean_delta: float
    stdev_delta: float
    share_below_zero: float
    histogram: tuple[tuple[float, int], ...]
    seed: int

    def to_dict(self) -> dict:
        return {
            "draw_count": self.draw_count,
            "mean_delta": self.mean_delta,
            "stdev_delta": self.stdev_delta,
            "share_below_zero": self.share_below_zero,
            "histogram": [[edge, count] for edge, count in self.histogram],
            "seed": self.seed,
        }


def _first_best(scores: Mapping[str, float], maximize: bool = True) -> str:
    """Key with the best score; earliest-declared wins ties."""
    best_key = None
    best = None
    for key, score in scores.items():
        better = best is None or (score > best if maximize else score < best)
        if better:
            best_key, best = key, score
    return best_key


def apply_decision_criteria(
    scenario_utilities: Mapping[str, Sequence[float]],
    probabilities: Mapping[str, Sequence[float]],
    alpha: float = 0.5,
) -> dict[Criterion, str]:
    """Winning plan under each decision criterion.

    Ties always resolve to the earliest-declared plan.
    """
    if not scenario_utilities:
        raise ShapeMismatch("at least one plan is required")
    if set(scenario_utilities) != set(probabilities):
        raise ShapeMismatch("scenario utilities and probabilities must cover the same plans")
    if not (0.0 <= alpha <= 1.0):
        raise DomainError(f"Hurwicz alpha {alpha} outside [0, 1]")
    lengths = {len(v) for v in scenario_utilities.values()}
    lengths |= {len(v) for v in probabilities.values()}
    if len(lengths) != 1 or 0 in lengths:
        raise ShapeMismatch(f"inconsistent scenario counts: {sorted(lengths)}")
    n = lengths.pop()

    expected = {
        plan: sum(p * u for p, u in zip(probabilities[plan], utilities))
        for plan, utilities in scenario_utilities.items()
    }
    worst = {plan: min(u) for plan, u in scenario_utilities.items()}
    best = {plan: max(u) for plan, u in scenario_utilities.items()}
    scenario_best = [max(scenario_utilities[plan][s] for plan in scenario_utilities) for s in range(n)]
    max_regret = {
        plan: max(scenario_best[s] - utilities[s] for s in range(n))
        for plan, utilities in scenario_utilities.items()
    }
    likely = {}
    for plan, utilities in scenario_utilities.items():
        probs = probabilities[plan]
        top_scenario = max(range(n), key=lambda s: probs[s])
        likely[plan] = utilities[top_scenario]
    hurwicz = {plan: alpha * best[plan] + (1.0 - alpha) * worst[plan] for plan in scenario_utilities}

    return {
        Criterion.EXPECTED_UTILITY: _first_best(expected),
        Criterion.MAXIMIN: _first_best(worst),
        Criterion.MAXIMAX: _first_best(best),
        Criterion.MINIMAX_REGRET: _first_best(max_regret, maximize=False),
        Criterion.MOST_LIKELIHOOD: _first_best(likely),
        Criterion.HURWICZ: _first_best(hurwicz),
    }


def sweep_lattice(increment: float) -> list[Probabilities]:
    """All probability triples on the increment lattice, descending lexicographic."""
    if not (0.0 < increment <= 0.5):
        raise DomainError(f"increment {increment} outside (0, 0.5]")
    n = round(1.0 / increment)
    triples = []
    for i in range(n, -1, -1):
        for j in range(n - i, -1, -1):
            k = n - i - j
            triples.append((i / n, j / n, k / n))
    return triples


def probability_sweep(
    plans: Sequence[PlanSpec],
    measurements: MeasurementMap,
    config: AnalysisConfig,
    increment: float | None = None,
) -> list[SweepResult]:
    """Evaluate every lattice probability triple against every plan at once."""
    if not plans:
        raise ValidationError("at least one plan is required")
    if increment is None:
        increment = config.sweep_increment
    utilities = {plan.plan_id: plan_scenario_utilities(plan, measurements, config) for plan in plans}
    results = []
    for triple in sweep_lattice(increment):
        probabilities = {plan_id: triple for plan_id in utilities}
        winners = apply_decision_criteria(utilities, probabilities, config.hurwicz_alpha)
        expected = {
            plan_id: sum(p * u for p, u in zip(triple, scenario))
            for plan_id, scenario in utilities.items()
        }
        ordered = sorted(expected.values(), reverse=True)
        margin = ordered[0] - ordered[1] if len(ordered) > 1 else 0.0
        results.append(SweepResult(probabilities, expected, winners, margin))
    return results


@dataclass(frozen=True)
class _SampleSpec:
    """Distribution parameters for one measurement's random inputs."""

    pi_mean: float
    pi_sd: float
    util_mean: float
    util_sd: float


def _draw_truncated(
    rng: np.random.Generator,
    mean: float,
    sd: float,
    lo: float,
    hi: float,
    open_interval: bool,
    limit: int,
    label: str,
) -> float:
    """Rejection-sample a normal restricted to an interval."""
    if sd == 0.0:
        inside = lo < mean < hi if open_interval else lo <= mean <= hi
        if inside:
            return mean
        raise SamplingExhausted(
            f"{label}: zero-variance value {mean} lies outside ({lo}, {hi})"
        )
    for _ in range(limit):
        x = float(rng.normal(mean, sd))
        if (lo < x < hi) if open_interval else (lo <= x <= hi):
            return x
    raise SamplingExhausted(f"{label}: no accepted draw within {limit} attempts")


def draw_generator(seed: int, draw_index: int) -> np.random.Generator:
    """Counter-based substream for one draw, independent of execution order."""
    seed_u = seed % (1 << 64)
    return np.random.Generator(np.random.Philox(key=(seed_u << 64) + draw_index))


def solve_anchor_curvature_array(q: np.ndarray, s_ref: float) -> np.ndarray:
    """Vectorized anchor solve: z per element so the member passes (s_ref, q)."""
    q = np.asarray(q, dtype=np.float64)
    lo = np.where(q > s_ref, -Z_LIMIT, 0.0)
    hi = np.where(q > s_ref, 0.0, Z_LIMIT)
    for _ in range(120):
        mid = 0.5 * (lo + hi)
        above = unit_increasing_array(mid, s_ref) > q
        lo = np.where(above, mid, lo)
        hi = np.where(above, hi, mid)
    return 0.5 * (lo + hi)


def unit_increasing_array(z: np.ndarray, s: float) -> np.ndarray:
    """Vectorized normalized increasing member, stable for both signs of z."""
    z = np.asarray(z, dtype=np.float64)
    out = np.full(z.shape, s, dtype=np.float64)
    neg = z < 0.0
    if np.any(neg):
        zn = z[neg]
        out[neg] = np.expm1(zn * s) / np.expm1(zn)
    pos = z > 0.0
    if np.any(pos):
        zp = z[pos]
        out[pos] = np.exp(zp * (s - 1.0)) * np.expm1(-zp * s) / np.expm1(-zp)
    return out


def result_from_deltas(deltas: np.ndarray, seed: int) -> MonteCarloResult:
    """Summary statistics and a 50-bin histogram over the draw deltas."""
    draws = int(deltas.shape[0])
    mean = float(np.mean(deltas))
    stdev = float(np.std(deltas, ddof=1)) if draws > 1 else 0.0
    share = float(np.count_nonzero(deltas < 0.0)) / draws
    counts, edges = np.histogram(deltas, bins=50)
    histogram = tuple((float(edges[i]), int(counts[i])) for i in range(len(counts)))
    return MonteCarloResult(draws, mean, stdev, share, histogram, seed)


def _measurement_keys(plans: Sequence[PlanSpec]) -> list[tuple[str, str]]:
    keys: list[tuple[str, str]] = []
    for plan in plans:
        for attribute_id in plan.attribute_ids:
            key = (plan.plan_id, attribute_id)
            if key not in keys:
                keys.append(key)
    return keys


def monte_carlo_compare(
    plan_a: PlanSpec,
    plan_b: PlanSpec,
    measurements: MeasurementMap,
    config: AnalysisConfig,
    draws: int | None = None,
    seed: int | None = None,
    workers: int = 1,
    resample_limit: int = 1000,
    sample_log: list[float] | None = None,
) -> MonteCarloResult:
    """Distribution of expected-utility differences between two plans.

    Per draw and per measurement, the indifference probability and the
    utilization behind the quality weight are resampled from normals
    with the survey moments (the willingness-to-pay scaling is applied
    to the distribution parameters analytically), truncated to their
    admissible intervals by rejection; the cost curve is refitted from
    each sampled probability. ``sample_log``, when given, collects every
    accepted indifference probability for auditing.
    """
    if draws is None:
        draws = config.households
    if draws < 1:
        raise DomainError(f"draw count must be positive, got {draws}")
    if seed is None:
        seed = config.seed
    if workers < 1:
        raise DomainError(f"worker count must be positive, got {workers}")

    plan_pair = [plan_a, plan_b]
    for plan in plan_pair:
        _check_targets_in_domain(plan, config)
    probabilities = {id(plan): effective_probabilities(plan, config) for plan in plan_pair}
    keys = _measurement_keys(plan_pair)
    missing = [key for key in keys if key not in measurements]
    if missing:
        raise ValidationError(f"no measurement for plan '{missing[0][0]}' attribute '{missing[0][1]}'")

    bound = indifference_lower_bound(config.c_ref, config.lower, config.upper)
    specs = []
    for key in keys:
        m = measurements[key]
        specs.append(
            _SampleSpec(
                pi_mean=1.0 - m.mean_max_cost / config.max_possible_cost,
                pi_sd=m.stdev_max_cost / config.max_possible_cost,
                util_mean=m.mean_utilization,
                util_sd=m.stdev_utilization,
            )
        )

    n_keys = len(keys)
    pi_samples = np.empty((draws, n_keys), dtype=np.float64)
    util_samples = np.empty((draws, n_keys), dtype=np.float64)

    def sample_chunk(start: int, stop: int) -> None:
        for d in range(start, stop):
            rng = draw_generator(seed, d)
            for j, spec in enumerate(specs):
                pi_samples[d, j] = _draw_truncated(
                    rng, spec.pi_mean, spec.pi_sd, bound, 1.0, True, resample_limit,
                    f"indifference probability for {keys[j]}",
                )
                util_samples[d, j] = _draw_truncated(
                    rng, spec.util_mean, spec.util_sd, config.lower, config.upper, False,
                    resample_limit, f"utilization for {keys[j]}",
                )

    if workers == 1:
        sample_chunk(0, draws)
    else:
        bounds = [draws * i // workers for i in range(workers + 1)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(sample_chunk, bounds[i], bounds[i + 1]) for i in range(workers)
            ]
            for future in futures:
                future.result()

    if not np.all(pi_samples > bound):
        raise AssertionError("sampled indifference probability at or below its lower bound")
    if sample_log is not None:
        sample_log.extend(float(v) for v in pi_samples.ravel())

    width = config.width
    s_ref = (config.c_ref - config.lower) / width
    z_cost = solve_anchor_curvature_array(1.0 - pi_samples, s_ref)
    weights = ((config.w_q - 1.0) * (util_samples - config.lower) + width) / width
    z_quality = -width / config.k_q_nominal

    key_index = {key: i for i, key in enumerate(keys)}
    expected = []
    for plan in plan_pair:
        total = np.zeros(draws, dtype=np.float64)
        probs = probabilities[id(plan)]
        for s_idx in range(3):
            scenario_total = np.zeros(draws, dtype=np.float64)
            for attribute_id, targets in plan.attributes:
                j = key_index[(plan.plan_id, attribute_id)]
                cost_t, quality_t = (targets.low, targets.nominal, targets.high)[s_idx]
                s_cost = (cost_t - config.lower) / width
                s_quality = (quality_t - config.lower) / width
                cost_u = 1.0 - unit_increasing_array(z_cost[:, j], s_cost)
                quality_u = _unit_increasing(z_quality, s_quality)
                scenario_total += config.w_c * cost_u + weights[:, j] * quality_u
            total += probs[s_idx] * scenario_total
        expected.append(total)

    return result_from_deltas(expected[0] - expected[1], seed)


def monte_carlo_go_no_go(
    plan: PlanSpec,
    measurements: MeasurementMap,
    config: AnalysisConfig,
    draws: int | None = None,
    seed: int | None = None,
    workers: int = 1,
    resample_limit: int = 1000,
    sample_log: list[float] | None = None,
) -> MonteCarloResult:
    """Monte Carlo of the plan against its status-quo twin."""
    if plan.is_status_quo:
        raise ValidationError(f"plan '{plan.plan_id}' is already the status quo")
    twin = status_quo_twin(plan, config, effective_probabilities(plan, config))
    return monte_carlo_compare(
        plan, twin, measurements, config, draws, seed, workers, resample_limit, sample_log
    )
