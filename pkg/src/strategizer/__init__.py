"""Decision-analysis engine for community amenity and infrastructure planning.

Fits exponential utility curves to survey-measured cost sensitivity,
anticipated utilization, and risk tolerance; ranks alternative plans by
expected utility; issues go/no-go funding recommendations; and explores
decisions through probability sweeps and Monte Carlo preference
simulation.
"""

from .config import AnalysisConfig
from .plans import Decision, PlanEvaluation, PlanSpec, ScenarioTargets
from .survey import AttributeMeasurement, ResponseRecord
from .utility import Direction, IndifferenceProbability, QualityWeight, UtilityCurve

__all__ = [
    "AnalysisConfig",
    "AttributeMeasurement",
    "Decision",
    "Direction",
    "IndifferenceProbability",
    "PlanEvaluation",
    "PlanSpec",
    "QualityWeight",
    "ResponseRecord",
    "ScenarioTargets",
    "UtilityCurve",
]

__version__ = "0.1.0"
