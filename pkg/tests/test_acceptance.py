"""Acceptance gate: every release criterion at its stated tolerance.

Each test prints one [PASS]/[FAIL] line (run with ``pytest -s`` to see
them live). Tolerances are pinned here and nowhere else.
"""

from __future__ import annotations

import math
import random
import time
from contextlib import contextmanager
from pathlib import Path

from strategizer.analysis import (
    Criterion,
    apply_decision_criteria,
    monte_carlo_compare,
    sweep_lattice,
)
from strategizer.config import AnalysisConfig
from strategizer.infra import InfraMeasurement, InfraPreference, infra_preference
from strategizer.plans import (
    Decision,
    PlanSpec,
    ScenarioTargets,
    estimate_scenario_probabilities,
    expected_plan_utility,
    go_no_go,
    rank_plans,
)
from strategizer.survey import AttributeMeasurement, required_sample_size
from strategizer.utility import Direction, curve_from_constant, quality_weight, solve_convergence_constant
from strategizer import runners

DATA = Path(__file__).parent / "data"


@contextmanager
def criterion(name: str):
    try:
        yield
    except BaseException:
        print(f"[FAIL] {name}")
        raise
    print(f"[PASS] {name}")


def floor_plan(plan_id, probabilities, attr="amenity"):
    floor = ScenarioTargets((1.0, 1.0), (1.0, 1.0), (1.0, 1.0), probabilities)
    return PlanSpec(plan_id, ((attr, floor),), is_status_quo=True)


def test_quality_weight_scaling():
    with criterion("quality weight scaling: W(2.6) = 1.4 within 1e-12"):
        assert abs(quality_weight(2.6, 1, 5, 2).value - 1.4) <= 1e-12


def test_status_quo_identity():
    with criterion("status-quo expected utility equals W_c exactly on 100 random measurement sets"):
        rng = random.Random(0)
        for index in range(100):
            w_c = 2.0 if index % 2 == 0 else 1.0
            config = AnalysisConfig(w_c=w_c)
            # Keep the implied indifference probability above its
            # admissibility bound so the cost fit exists at all.
            mean_cost = rng.uniform(0.0, 33.0)
            measurement = AttributeMeasurement(
                mean_cost, rng.uniform(0.0, 8.0), rng.uniform(1.0, 5.0), rng.uniform(0.0, 2.0), 5
            )
            p = rng.uniform(0.0, 1.0)
            q = rng.uniform(0.0, 1.0 - p)
            sq = floor_plan("SQ", (p, q, 1.0 - p - q))
            evaluation = expected_plan_utility(sq, {("SQ", "amenity"): measurement}, config)
            assert abs(evaluation.expected_utility - w_c) <= 1e-12, (
                f"set {index}: {evaluation.expected_utility} != {w_c}"
            )


def test_scenario_probabilities(config):
    with criterion("scenario probabilities reproduce the reference columns"):
        start = time.perf_counter()
        quality_curve = curve_from_constant(1.0, 5.0, config.k_q_nominal, Direction.INCREASING)
        plan_2 = ScenarioTargets((2.5, 2.5), (3.5, 3.5), (4.5, 4.5))
        p_a, p_b, p_c = estimate_scenario_probabilities(plan_2, quality_curve, 1.0)
        assert abs(p_a - 0.631) <= 5e-4 and abs(p_b - 0.228) <= 5e-4 and abs(p_c - 0.141) <= 5e-4
        for got, reference in zip((p_a, p_b, p_c), (0.64, 0.22, 0.14)):
            assert abs(got - reference) <= 0.015
        plan_1 = ScenarioTargets((2.0, 2.0), (3.0, 3.0), (4.0, 4.0))
        p_a, p_b, p_c = estimate_scenario_probabilities(plan_1, quality_curve, 1.0)
        assert abs(p_a - 0.500) <= 0.005
        assert abs(p_b - 0.32) <= 0.02 and abs(p_c - 0.18) <= 0.02
        assert time.perf_counter() - start < 1.0


def test_two_plan_ranking(two_plans, survey_measurements, config):
    with criterion("two-plan ranking: Plan_1 above Plan_2, both near reference values"):
        ranking = rank_plans(two_plans, survey_measurements, config)
        assert [e.plan_id for e in ranking] == ["Plan_1", "Plan_2"]
        assert ranking[0].expected_utility > ranking[1].expected_utility
        assert abs(ranking[0].expected_utility - 1.375) <= 0.05
        assert abs(ranking[1].expected_utility - 1.335) <= 0.05


def test_go_no_go_flip(two_plans, survey_measurements):
    with criterion("go/no-go flips from NoGo at W_c=2 to Go at W_c=1"):
        no_go = go_no_go(two_plans[0], survey_measurements, AnalysisConfig(w_c=2.0))
        assert no_go.decision is Decision.NO_GO
        go = go_no_go(two_plans[0], survey_measurements, AnalysisConfig(w_c=1.0))
        assert go.decision is Decision.GO


def test_sample_size():
    with criterion("required sample sizes: 485 at $1 width, 138 at 0.25 width"):
        assert required_sample_size(5, 1.0, 0.95, 12) == 485
        assert required_sample_size(2 / 3, 0.25, 0.95, 12) == 138


def test_k_solver_contract():
    with criterion("solver grid: anchors and endpoints within 1e-9, family monotone in P_i"):
        start = time.perf_counter()
        lower, upper = 1.0, 5.0
        interior = [lower + (upper - lower) * (i + 0.5) / 10 for i in range(10)]
        for i in range(20):
            c_ref = lower + (upper - lower) * (i + 0.5) / 20
            bound = (c_ref - lower) / (upper - lower)
            anchors = [bound + (1.0 - bound) * (j + 0.5) / 20 for j in range(20)]
            curves = []
            for p_i in anchors:
                curve = solve_convergence_constant(lower, upper, c_ref, p_i, Direction.DECREASING, 1e-9)
                assert abs(curve.evaluate(c_ref) - p_i) <= 1e-9
                assert abs(curve.evaluate(lower) - 1.0) <= 1e-9
                assert abs(curve.evaluate(upper) - 0.0) <= 1e-9
                curves.append(curve)
            for previous, current in zip(curves, curves[1:]):
                for x in interior:
                    low, high = previous.evaluate(x), current.evaluate(x)
                    # Extreme-curvature members saturate to exactly 0 or 1
                    # in doubles; strictness is asserted wherever the
                    # difference is representable.
                    if low == high and low in (0.0, 1.0):
                        continue
                    assert high > low
        assert time.perf_counter() - start < 5.0


def test_monte_carlo_bound_and_determinism(two_plans, survey_measurements, config):
    with criterion("100k-draw run: no admissibility violations, bit-identical across runs and workers"):
        draws = 100_000
        log: list[float] = []
        first = monte_carlo_compare(
            two_plans[0], two_plans[1], survey_measurements, config,
            draws, seed=2024, sample_log=log,
        )
        bound = (config.c_ref - config.lower) / config.width
        assert len(log) == draws * 2
        assert all(p > bound for p in log)
        second = monte_carlo_compare(
            two_plans[0], two_plans[1], survey_measurements, config, draws, seed=2024
        )
        four_workers = monte_carlo_compare(
            two_plans[0], two_plans[1], survey_measurements, config, draws, seed=2024, workers=4
        )
        assert first == second == four_workers


def test_monte_carlo_symmetry(config):
    with criterion("identical-plan Monte Carlo splits the population near 50/50"):
        targets = ScenarioTargets((2.0, 2.0), (3.0, 3.0), (4.0, 4.0), (0.5, 0.32, 0.18))
        plan_a = PlanSpec("A", (("amenity", targets),))
        plan_b = PlanSpec("B", (("amenity", targets),))
        measurement = AttributeMeasurement(5.33, 4.56, 2.5, 1.24, 3)
        measurements = {("A", "amenity"): measurement, ("B", "amenity"): measurement}
        draws = 10_000
        result = monte_carlo_compare(plan_a, plan_b, measurements, config, draws, seed=31)
        assert abs(result.share_below_zero - 0.5) <= 3.0 * math.sqrt(0.25 / draws)


def test_decision_criteria():
    with criterion("six criteria: worked example exact, dominant plan sweeps 100 random instances"):
        utilities = {"Plan_X": (1.0, 1.1, 1.1), "Plan_Y": (0.9, 1.0, 1.3)}
        probabilities = {"Plan_X": (0.5, 0.32, 0.18), "Plan_Y": (0.5, 0.32, 0.18)}
        winners = apply_decision_criteria(utilities, probabilities, alpha=0.5)
        assert winners == {
            Criterion.EXPECTED_UTILITY: "Plan_X",
            Criterion.MAXIMIN: "Plan_X",
            Criterion.MAXIMAX: "Plan_Y",
            Criterion.MINIMAX_REGRET: "Plan_Y",
            Criterion.MOST_LIKELIHOOD: "Plan_X",
            Criterion.HURWICZ: "Plan_Y",
        }
        rng = random.Random(99)
        for _ in range(100):
            scenarios = rng.randint(2, 5)
            dominant = [rng.uniform(1.0, 3.0) for _ in range(scenarios)]
            plans = {"dominant": tuple(dominant)}
            for index in range(rng.randint(1, 4)):
                plans[f"other_{index}"] = tuple(
                    value - rng.uniform(0.01, 1.0) for value in dominant
                )
            raw = [rng.uniform(0.05, 1.0) for _ in range(scenarios)]
            total = sum(raw)
            triple = tuple(value / total for value in raw)
            winners = apply_decision_criteria(plans, {p: triple for p in plans}, alpha=rng.random())
            assert set(winners.values()) == {"dominant"}


def test_sweep_lattice_and_golden(survey_records, two_plans, config):
    with criterion("sweep lattice sizes and the rendered block match the golden file"):
        for n in (2, 4, 10):
            assert len(sweep_lattice(1.0 / n)) == (n + 1) * (n + 2) // 2
        report = runners.run_sweep(survey_records, two_plans, config, 0.5)
        golden = (DATA / "sweep_golden.txt").read_text(encoding="utf-8")
        assert report.human_log == golden


def test_infrastructure_rule(config):
    with criterion("bid-type rule: antisymmetric under swap, agrees with probability shortcut"):
        max_cost, max_lifespan = 35.0, 40.0
        bound = (config.c_ref - config.lower) / config.width

        def measurement(cost_pi: float, risk_pi: float) -> InfraMeasurement:
            return InfraMeasurement(
                (1.0 - cost_pi) * max_cost, 0.0, risk_pi * max_lifespan, 0.0,
                10, max_cost, max_lifespan,
            )

        flips = {
            InfraPreference.HIGH_COST_HIGH_MITIGATION: InfraPreference.LOW_COST_LOW_MITIGATION,
            InfraPreference.LOW_COST_LOW_MITIGATION: InfraPreference.HIGH_COST_HIGH_MITIGATION,
            InfraPreference.INDIFFERENT: InfraPreference.INDIFFERENT,
        }
        rng = random.Random(12)
        for _ in range(100):
            p1 = rng.uniform(bound + 1e-3, 0.999)
            p2 = rng.uniform(bound + 1e-3, 0.999)
            forward = infra_preference(measurement(p1, p2), config).preference
            backward = infra_preference(measurement(p2, p1), config).preference
            assert backward is flips[forward]

        grid = [bound + 0.01 + (0.98 - bound) * i / 9 for i in range(10)]
        for cost_pi in grid:
            for risk_pi in grid:
                rec = infra_preference(measurement(cost_pi, risk_pi), config)
                if abs(risk_pi - cost_pi) < 1e-12:
                    expected = InfraPreference.INDIFFERENT
                elif risk_pi > cost_pi:
                    expected = InfraPreference.HIGH_COST_HIGH_MITIGATION
                else:
                    expected = InfraPreference.LOW_COST_LOW_MITIGATION
                assert rec.preference is expected
