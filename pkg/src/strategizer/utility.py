"""Exponential utility curves fitted through two endpoints and one anchor.

The family is ``U(x) = a - b * exp(-x / K)`` over a domain ``[lower,
upper]``, normalized so an increasing member runs from 0 to 1 and a
decreasing member from 1 to 0. A single signed convergence constant
``K`` covers both curvatures: positive K bends an increasing member
concave (diminishing marginal utility), negative K bends it convex,
and the affine interpolation is the ``|K| -> inf`` limit.

Internally curves are evaluated through the normalized curvature
``z = -(upper - lower) / K`` using ``expm1``, which is stable for both
signs of K and returns exact endpoint values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import ConstraintViolation, ConvergenceFailure, DomainError

# Curvature search range: |z| <= Z_LIMIT, i.e. |K| >= width / Z_LIMIT.
Z_LIMIT = 1500.0
_BISECTION_STEPS = 160


class Direction(Enum):
    INCREASING = "increasing"
    DECREASING = "decreasing"


def _unit_increasing(z: float, s: float) -> float:
    """Evaluate the normalized increasing member at s in [0, 1].

    Computes (e^(z*s) - 1) / (e^z - 1) without overflow for any z in
    [-Z_LIMIT, Z_LIMIT]; s itself is returned in the affine limit.
    """
    if z == 0.0:
        return s
    if z < 0.0:
        return math.expm1(z * s) / math.expm1(z)
    # For z > 0 rearrange so every exponential has a nonpositive argument.
    return math.exp(z * (s - 1.0)) * math.expm1(-z * s) / math.expm1(-z)


@dataclass(frozen=True)
class UtilityCurve:
    """A fitted utility curve over [lower, upper].

    ``k`` is the signed convergence constant (infinite for the linear
    limit, in which case ``linear`` is set and ``a``/``b`` are NaN
    because no finite coefficients realize the affine member).
    """

    lower: float
    upper: float
    k: float
    a: float
    b: float
    direction: Direction
    linear: bool = False

    def __post_init__(self):
        if not self.lower < self.upper:
            raise DomainError(f"curve domain must satisfy lower < upper, got [{self.lower}, {self.upper}]")
        if not self.linear and (self.k == 0.0 or math.isnan(self.k)):
            raise DomainError("convergence constant must be nonzero and finite unless linear")

    @property
    def width(self) -> float:
        return self.upper - self.lower

    @property
    def curvature(self) -> float:
        """Signed reciprocal constant -(width/k); 0 in the linear limit.

        Continuous through the affine member, and strictly monotone in
        the anchor probability where the signed constant itself jumps
        between branches.
        """
        if self.linear:
            return 0.0
        return -self.width / self.k

    def evaluate(self, x: float) -> float:
        """Unit utility at x; raises DomainError outside [lower, upper]."""
        if not (self.lower <= x <= self.upper):
            raise DomainError(f"x={x} outside curve domain [{self.lower}, {self.upper}]")
        s = (x - self.lower) / self.width
        u = s if self.linear else _unit_increasing(self.curvature, s)
        return 1.0 - u if self.direction is Direction.DECREASING else u

    def complement(self) -> "UtilityCurve":
        """The curve 1 - U(x): same constant, opposite direction."""
        flipped = Direction.DECREASING if self.direction is Direction.INCREASING else Direction.INCREASING
        a = 1.0 - self.a if not math.isnan(self.a) else self.a
        return UtilityCurve(self.lower, self.upper, self.k, a, -self.b, flipped, self.linear)


@dataclass(frozen=True)
class IndifferenceProbability:
    """Probability of the good outcome at which a respondent is indifferent."""

    value: float

    def __post_init__(self):
        if not (0.0 <= self.value <= 1.0):
            raise ConstraintViolation(f"indifference probability {self.value} outside [0, 1]")


@dataclass(frozen=True)
class QualityWeight:
    """Scaling applied to a unit quality utility, between 1 and w_q."""

    value: float

    def __post_init__(self):
        if self.value < 1.0:
            raise ConstraintViolation(f"quality weight {self.value} below 1")


def _linear_curve(lower: float, upper: float, direction: Direction) -> UtilityCurve:
    return UtilityCurve(lower, upper, math.inf, math.nan, math.nan, direction, linear=True)


def _coefficients(lower: float, upper: float, z: float) -> tuple[float, float]:
    """Closed-form a, b for the increasing member with curvature z."""
    a = -1.0 / math.expm1(z)
    try:
        b = a * math.exp(-z * lower / (upper - lower))
    except OverflowError:
        b = math.inf if a > 0 else -math.inf
    return a, b


def curve_from_constant(lower: float, upper: float, k: float, direction: Direction) -> UtilityCurve:
    """Build a curve directly from a known convergence constant."""
    if not lower < upper:
        raise DomainError(f"curve domain must satisfy lower < upper, got [{lower}, {upper}]")
    if math.isinf(k):
        return _linear_curve(lower, upper, direction)
    if k == 0.0 or math.isnan(k):
        raise DomainError("convergence constant must be nonzero and finite")
    z = -(upper - lower) / k
    a_inc, b_inc = _coefficients(lower, upper, z)
    if direction is Direction.DECREASING:
        return UtilityCurve(lower, upper, k, 1.0 - a_inc, -b_inc, direction)
    return UtilityCurve(lower, upper, k, a_inc, b_inc, direction)


def solve_anchor_curvature(q: float, s_ref: float, tol: float) -> float:
    """Find z so the normalized increasing member passes through (s_ref, q).

    The member value at s_ref is strictly decreasing in z, from 1 as
    z -> -inf down to 0 as z -> +inf, so bisection over the fixed
    bracket [-Z_LIMIT, Z_LIMIT] converges unconditionally whenever the
    target is reachable inside the search range.
    """
    lo, hi = (-Z_LIMIT, 0.0) if q > s_ref else (0.0, Z_LIMIT)
    for _ in range(_BISECTION_STEPS):
        mid = 0.5 * (lo + hi)
        if _unit_increasing(mid, s_ref) > q:
            lo = mid
        else:
            hi = mid
    z = 0.5 * (lo + hi)
    if abs(_unit_increasing(z, s_ref) - q) > tol:
        raise ConvergenceFailure(
            f"no convergence constant reproduces anchor utility {q} at {s_ref} within {tol}"
        )
    return z


def solve_convergence_constant(
    lower: float,
    upper: float,
    c_ref: float,
    p_i: float,
    direction: Direction,
    tol: float = 1e-9,
    k_cap: float | None = None,
) -> UtilityCurve:
    """Fit the curve through the direction's endpoints and (c_ref, p_i).

    For an increasing member the endpoints are (lower, 0) and (upper, 1);
    for a decreasing member (lower, 1) and (upper, 0), where p_i must
    additionally exceed (c_ref - lower) / (upper - lower), the value a
    flat-limit decreasing member takes at c_ref. Anchors within ``tol``
    of the affine interpolation return the linear-limit curve, as do
    solved constants whose magnitude exceeds ``k_cap`` (default
    1e6 * width), where the exponential member is numerically
    indistinguishable from the affine one.
    """
    if not lower < upper:
        raise DomainError(f"domain must satisfy lower < upper, got [{lower}, {upper}]")
    if tol <= 0.0:
        raise DomainError("tolerance must be positive")
    if not (lower < c_ref < upper):
        raise DomainError(f"c_ref {c_ref} must lie strictly inside ({lower}, {upper})")
    if not (0.0 < p_i < 1.0):
        raise ConstraintViolation(f"anchor probability must lie strictly inside (0, 1), got {p_i}")
    width = upper - lower
    s_ref = (c_ref - lower) / width
    q = 1.0 - p_i if direction is Direction.DECREASING else p_i
    if k_cap is None:
        k_cap = 1e6 * width

    # The affine member is checked before the admissibility bound: with
    # c_ref at the domain midpoint the two coincide, and the linear
    # limit is the legitimate answer there.
    if abs(q - s_ref) <= tol:
        return _linear_curve(lower, upper, direction)
    if direction is Direction.DECREASING and p_i <= s_ref:
        raise ConstraintViolation(
            f"decreasing anchor probability must exceed (c_ref - lower)/(upper - lower) "
            f"= {s_ref:.6g}, got {p_i}"
        )
    z = solve_anchor_curvature(q, s_ref, tol)
    k = -width / z
    if abs(k) > k_cap:
        return _linear_curve(lower, upper, direction)
    return curve_from_constant(lower, upper, k, direction)


def evaluate_unit_utility(curve: UtilityCurve, x: float) -> float:
    """Unit utility of ``curve`` at ``x``; DomainError outside the domain."""
    return curve.evaluate(x)


def quality_weight(q_bar: float, lower: float, upper: float, w_q: float) -> QualityWeight:
    """Affine map sending lower -> 1 and upper -> w_q."""
    if w_q < 1.0:
        raise DomainError(f"w_q must be at least 1, got {w_q}")
    if not lower < upper:
        raise DomainError(f"domain must satisfy lower < upper, got [{lower}, {upper}]")
    if not (lower <= q_bar <= upper):
        raise DomainError(f"mean utilization {q_bar} outside [{lower}, {upper}]")
    value = ((w_q - 1.0) * (q_bar - lower) + (upper - lower)) / (upper - lower)
    return QualityWeight(value)


def max_cost_to_indifference(max_cost: float, max_possible_cost: float) -> IndifferenceProbability:
    """Straight-line proxy turning willingness-to-pay into an indifference probability."""
    if max_possible_cost <= 0.0:
        raise DomainError(f"max possible cost must be positive, got {max_possible_cost}")
    if max_cost < 0.0 or max_cost > max_possible_cost:
        raise DomainError(f"max cost {max_cost} outside [0, {max_possible_cost}]")
    return IndifferenceProbability(1.0 - max_cost / max_possible_cost)


def indifference_from_probability(p_i: float, max_possible_cost: float) -> float:
    """Inverse of :func:`max_cost_to_indifference`; returns the max cost."""
    if max_possible_cost <= 0.0:
        raise DomainError(f"max possible cost must be positive, got {max_possible_cost}")
    if not (0.0 <= p_i <= 1.0):
        raise DomainError(f"indifference probability {p_i} outside [0, 1]")
    return (1.0 - p_i) * max_possible_cost


def indifference_lower_bound(c_ref: float, lower: float, upper: float) -> float:
    """Smallest admissible indifference probability for a given reference cost."""
    if not lower < upper:
        raise DomainError(f"domain must satisfy lower < upper, got [{lower}, {upper}]")
    if not (lower <= c_ref <= upper):
        raise DomainError(f"c_ref {c_ref} outside [{lower}, {upper}]")
    return (c_ref - lower) / (upper - lower)


def attribute_total_utility(
    cost_target: float,
    quality_target: float,
    w_c: float,
    w: QualityWeight,
    cost_curve: UtilityCurve,
    quality_curve: UtilityCurve,
) -> float:
    """Scaled cost utility plus scaled quality utility for one attribute."""
    if w_c < 1.0:
        raise DomainError(f"w_c must be at least 1, got {w_c}")
    if cost_curve.direction is not Direction.DECREASING:
        raise DomainError("cost curve must be decreasing")
    if quality_curve.direction is not Direction.INCREASING:
        raise DomainError("quality curve must be increasing")
    return w_c * cost_curve.evaluate(cost_target) + w.value * quality_curve.evaluate(quality_target)
