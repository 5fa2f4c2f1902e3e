"""Decision reports: canonical JSON payloads plus log-style text rendering.

Every report carries a content digest of the inputs that produced it,
so identical requests replay to byte-identical payloads and any input
change shows up as a new digest.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from enum import Enum
from typing import Any, Mapping, Sequence

from .analysis import Criterion, MonteCarloResult, SweepResult
from .infra import InfraComparison, InfraRecommendation
from .plans import GoNoGoResult, PlanEvaluation


class ReportKind(Enum):
    RANK = "Rank"
    GO_NO_GO = "GoNoGo"
    SWEEP = "Sweep"
    MONTE_CARLO = "MonteCarlo"
    INFRA = "Infra"
    SAMPLE_SIZE = "SampleSize"


def canonical_json(payload: Any) -> str:
    """Deterministic JSON encoding: sorted keys, no extra whitespace."""
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def content_digest(payload: Any) -> str:
    return hashlib.sha256(canonical_json(payload).encode("ascii")).hexdigest()


@dataclass(frozen=True)
class DecisionReport:
    kind: ReportKind
    digest: str
    payload: dict[str, Any]
    human_log: str

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind.value,
            "digest": self.digest,
            "payload": self.payload,
            "human_log": self.human_log,
        }

    def to_json(self) -> str:
        return canonical_json(self.to_dict())

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "DecisionReport":
        return cls(
            kind=ReportKind(data["kind"]),
            digest=data["digest"],
            payload=dict(data["payload"]),
            human_log=data["human_log"],
        )

    @classmethod
    def from_json(cls, text: str) -> "DecisionReport":
        return cls.from_dict(json.loads(text))


def _fmt(value: float) -> str:
    return f"{value:.3f}"


def _fmt_percent(value: float) -> str:
    scaled = round(value * 100.0, 6)
    if scaled == int(scaled):
        return f"{int(scaled)}%"
    return f"{scaled:g}%"


CRITERION_LABELS = {
    Criterion.MAXIMIN: "Maximin",
    Criterion.MAXIMAX: "Maximax",
    Criterion.MINIMAX_REGRET: "Minimax regret",
    Criterion.MOST_LIKELIHOOD: "Most likelihood",
    Criterion.HURWICZ: "Hurwicz",
}


def _criterion_score(criterion: Criterion, utilities: Sequence[float],
                     probabilities: Sequence[float], alpha: float) -> float:
    if criterion is Criterion.MAXIMIN:
        return min(utilities)
    if criterion is Criterion.MAXIMAX:
        return max(utilities)
    if criterion is Criterion.MOST_LIKELIHOOD:
        top = max(range(len(utilities)), key=lambda s: probabilities[s])
        return utilities[top]
    if criterion is Criterion.HURWICZ:
        return alpha * max(utilities) + (1.0 - alpha) * min(utilities)
    raise ValueError(f"no scalar score line for {criterion}")


def render_sweep_text(
    results: Sequence[SweepResult],
    plan_ids: Sequence[str],
    scenario_utilities: Mapping[str, Sequence[float]],
    alpha: float,
) -> str:
    """Log-style sweep block: one numbered result per probability assignment."""
    lines = ["Probability Sweep Results", ""]
    for index, plan_id in enumerate(plan_ids, start=1):
        lines.append(f"Option {index}: {plan_id}")
    lines.append("")
    lines.append("Sweep 1")
    lines.append("")
    option_number = {plan_id: i for i, plan_id in enumerate(plan_ids, start=1)}
    for number, result in enumerate(results, start=1):
        probs = []
        for plan_id in plan_ids:
            probs.extend(_fmt_percent(p) for p in result.probability_assignment[plan_id])
        lines.append(f"Result: {number} Probabilities: [{' '.join(probs)}]")
        ranked = sorted(result.expected_utilities.items(), key=lambda kv: -kv[1])
        winner_id, winner_eu = ranked[0]
        lines.append(
            f" Option {option_number[winner_id]} is probably the best decision. "
            f"Expected cost: {_fmt(winner_eu)}"
        )
        for position, (other_id, other_eu) in enumerate(ranked[1:]):
            line = f" Expected cost of Option {option_number[other_id]}: {_fmt(other_eu)}"
            if position == 0:
                line += f" Difference: {_fmt(result.margin)}"
            lines.append(line)
        lines.append("")
        for criterion, label in CRITERION_LABELS.items():
            best_plan = result.best_by_criterion[criterion]
            utilities = scenario_utilities[best_plan]
            probabilities = result.probability_assignment[best_plan]
            if criterion is Criterion.MINIMAX_REGRET:
                n = len(utilities)
                scenario_best = [
                    max(scenario_utilities[p][s] for p in plan_ids) for s in range(n)
                ]
                score = max(scenario_best[s] - utilities[s] for s in range(n))
            else:
                score = _criterion_score(criterion, utilities, probabilities, alpha)
            lines.append(
                f" {label} criterion cost: {_fmt(score)} (Option {option_number[best_plan]})"
            )
        lines.append("")
    return "\n".join(lines).rstrip("\n") + "\n"


def render_rank_text(evaluations: Sequence[PlanEvaluation]) -> str:
    lines = ["Plan Ranking", ""]
    for position, ev in enumerate(evaluations, start=1):
        probs = " ".join(_fmt_percent(p) for p in ev.scenario_probabilities)
        lines.append(
            f"{position}. {ev.plan_id}  expected utility {_fmt(ev.expected_utility)}  "
            f"probabilities [{probs}]"
        )
    lines.append("")
    lines.append(f"Recommendation: {evaluations[0].plan_id}")
    return "\n".join(lines) + "\n"


def render_go_no_go_text(result: GoNoGoResult) -> str:
    lines = [
        "Go/No-Go Analysis",
        "",
        f"Plan {result.plan.plan_id}: expected utility {_fmt(result.plan.expected_utility)}",
        f"Status quo: expected utility {_fmt(result.status_quo.expected_utility)}",
        "",
        f"Decision: {result.decision.value}",
    ]
    return "\n".join(lines) + "\n"


def render_monte_carlo_text(result: MonteCarloResult, label: str) -> str:
    lines = [
        f"Monte Carlo Simulation: {label}",
        "",
        f"Count = {result.draw_count}, Mean = {_fmt(result.mean_delta)}, "
        f"Standard Deviation = {_fmt(result.stdev_delta)}, "
        f"Population Below Zero = {result.share_below_zero * 100.0:.1f}%",
        f"Seed = {result.seed}",
    ]
    return "\n".join(lines) + "\n"


def render_infra_text(comparison: InfraComparison) -> str:
    rec = comparison.recommendation

    def fmt_constant(value: float) -> str:
        import math

        return "linear" if math.isinf(value) else _fmt(value)

    lines = [
        "Infrastructure Bid-Type Analysis",
        "",
        f"Cost tolerance constant C = {fmt_constant(rec.cost_constant)} (P_i = {_fmt(rec.cost_pi)})",
        f"Risk tolerance constant R = {fmt_constant(rec.risk_constant)} (P_i = {_fmt(rec.risk_pi)})",
        f"Tolerance recommendation: {rec.preference.value}",
        "",
    ]
    for option, utility in zip(comparison.options, comparison.expected_utilities):
        lines.append(f"Option {option.name}: expected utility {_fmt(utility)}")
    lines.append(f"Scenario comparison: {comparison.preference.value}")
    if comparison.monte_carlo is not None:
        mc = comparison.monte_carlo
        lines.append("")
        lines.append(
            f"Monte Carlo: Count = {mc.draw_count}, "
            f"Population Below Zero = {mc.share_below_zero * 100.0:.1f}%"
        )
    return "\n".join(lines) + "\n"


def render_infra_recommendation_text(rec: InfraRecommendation) -> str:
    import math

    def fmt_constant(value: float) -> str:
        return "linear" if math.isinf(value) else _fmt(value)

    lines = [
        "Infrastructure Bid-Type Analysis",
        "",
        f"Cost tolerance constant C = {fmt_constant(rec.cost_constant)} (P_i = {_fmt(rec.cost_pi)})",
        f"Risk tolerance constant R = {fmt_constant(rec.risk_constant)} (P_i = {_fmt(rec.risk_pi)})",
        f"Recommendation: {rec.preference.value}",
    ]
    return "\n".join(lines) + "\n"


def render_sample_size_text(s: float, w: float, confidence: float, pilot_n: int, n: int) -> str:
    lines = [
        "Sample Size Requirement",
        "",
        f"Population stdev estimate: {s:g}",
        f"Confidence interval width: {w:g}",
        f"Confidence level: {confidence:g}",
        f"Pilot sample size: {pilot_n}",
        "",
        f"Minimum sample size N = {n}",
    ]
    return "\n".join(lines) + "\n"


def build_report(kind: ReportKind, inputs: Any, payload: dict[str, Any], human_log: str) -> DecisionReport:
    """Assemble a report whose digest covers every analysis input."""
    digest = content_digest({"kind": kind.value, "inputs": inputs})
    return DecisionReport(kind, digest, payload, human_log)
