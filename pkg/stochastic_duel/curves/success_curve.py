"""
Accumulative success probability curves P_a(s), P_b(t)
Closed-form kinds plus tabulated knots, validated at construction
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence, Tuple

import numpy as np

from ..errors import DomainError, UnattainableError, ValidationError

logger = logging.getLogger(__name__)

INFINITE_HORIZON = math.inf


class CurveKind(str, Enum):
    EXPONENTIAL_SATURATION = "exponential-saturation"
    LOGISTIC = "logistic"
    LINEAR_RAMP = "linear-ramp"
    TABULATED = "tabulated"


@dataclass(frozen=True)
class SuccessCurve:
    """Monotone success probability P(t) in [0, 1] reaching 1 at t_max"""

    kind: CurveKind
    rate: Optional[float] = None
    midpoint: Optional[float] = None
    steepness: Optional[float] = None
    t_ramp: Optional[float] = None
    knots: Tuple[Tuple[float, float], ...] = field(default_factory=tuple)

    def __post_init__(self):
        # Accept the plain string tag from config documents
        object.__setattr__(self, "kind", CurveKind(self.kind))
        object.__setattr__(self, "knots", tuple((float(t), float(p)) for t, p in self.knots))
        self._validate()

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def exponential_saturation(cls, rate: float) -> "SuccessCurve":
        return cls(kind=CurveKind.EXPONENTIAL_SATURATION, rate=rate)

    @classmethod
    def logistic(cls, midpoint: float, steepness: float) -> "SuccessCurve":
        return cls(kind=CurveKind.LOGISTIC, midpoint=midpoint, steepness=steepness)

    @classmethod
    def linear_ramp(cls, t_ramp: float) -> "SuccessCurve":
        return cls(kind=CurveKind.LINEAR_RAMP, t_ramp=t_ramp)

    @classmethod
    def tabulated(cls, knots: Sequence[Tuple[float, float]]) -> "SuccessCurve":
        return cls(kind=CurveKind.TABULATED, knots=tuple(knots))

    @classmethod
    def from_payoff(
        cls,
        times: Sequence[float],
        payoffs: Sequence[float],
        t_max: Optional[float] = None,
    ) -> "SuccessCurve":
        """
        Build a tabulated curve from raw payoff knots A(s) normalized by A(s_max).

        Args:
            times: Strictly increasing knot times
            payoffs: Nonnegative, nondecreasing payoff values at those times
            t_max: Horizon s_max inside the knot range; defaults to the last knot.
                Knots past it are dropped and A(s_max) is interpolated.

        Returns:
            Tabulated SuccessCurve with P(s_max) = 1
        """
        if len(times) != len(payoffs) or not times:
            raise ValidationError("payoff knots need matching, non-empty time and value lists")
        if any(value < 0 for value in payoffs):
            raise ValidationError("payoff values must be nonnegative")
        if t_max is None:
            t_max = float(times[-1])
        elif not times[0] <= t_max <= times[-1]:
            raise ValidationError(f"t_max must lie in [{times[0]}, {times[-1]}], got {t_max}")
        top = float(np.interp(t_max, times, payoffs))
        if not top > 0:
            raise ValidationError(f"payoff at the horizon must be positive, got {top}")
        knots = [(t, value / top) for t, value in zip(times, payoffs) if t < t_max]
        knots.append((t_max, 1.0))
        return cls.tabulated(knots)

    # ------------------------------------------------------------------
    # Validation
    # ------------------------------------------------------------------

    def _validate(self) -> None:
        if self.kind is CurveKind.EXPONENTIAL_SATURATION:
            if self.rate is None or not (self.rate > 0 and math.isfinite(self.rate)):
                raise ValidationError(f"exponential-saturation curve needs a finite rate > 0, got {self.rate}")
        elif self.kind is CurveKind.LOGISTIC:
            if self.midpoint is None or not math.isfinite(self.midpoint):
                raise ValidationError(f"logistic curve needs a finite midpoint, got {self.midpoint}")
            if self.steepness is None or not (self.steepness > 0 and math.isfinite(self.steepness)):
                raise ValidationError(f"logistic curve needs a finite steepness > 0, got {self.steepness}")
        elif self.kind is CurveKind.LINEAR_RAMP:
            if self.t_ramp is None or not (self.t_ramp > 0 and math.isfinite(self.t_ramp)):
                raise ValidationError(f"linear-ramp curve needs a finite t_ramp > 0, got {self.t_ramp}")
        else:
            self._validate_knots()

    def _validate_knots(self) -> None:
        if len(self.knots) < 1:
            raise ValidationError("tabulated curve needs at least one knot")
        times = [t for t, _ in self.knots]
        probs = [p for _, p in self.knots]
        if not all(math.isfinite(t) and math.isfinite(p) for t, p in self.knots):
            raise ValidationError("tabulated knots must be finite numbers")
        if times[0] < 0:
            raise ValidationError(f"tabulated knots start at t={times[0]} < 0")
        for index in range(1, len(times)):
            if not times[index] > times[index - 1]:
                raise ValidationError(
                    f"tabulated knot {index} has t={times[index]} not strictly after t={times[index - 1]}"
                )
            if probs[index] < probs[index - 1]:
                raise ValidationError(
                    f"tabulated knot {index} has p={probs[index]} below the previous p={probs[index - 1]}"
                )
        if probs[0] < 0 or probs[-1] > 1:
            raise ValidationError("tabulated probabilities must lie in [0, 1]")
        if abs(probs[-1] - 1.0) > 1e-12:
            raise ValidationError(f"tabulated curve must reach p=1 at its last knot, got {probs[-1]}")

    # ------------------------------------------------------------------
    # Evaluation
    # ------------------------------------------------------------------

    @property
    def t_max(self) -> float:
        """Time at which the curve reaches 1; infinite for asymptotic kinds"""
        if self.kind is CurveKind.LINEAR_RAMP:
            return self.t_ramp
        if self.kind is CurveKind.TABULATED:
            return self.knots[-1][0]
        return INFINITE_HORIZON

    def eval(self, t: float) -> float:
        """Return P(t) for t >= 0"""
        if not t >= 0:
            raise DomainError(f"success curves are defined for t >= 0, got {t}")
        if self.kind is CurveKind.EXPONENTIAL_SATURATION:
            return -math.expm1(-self.rate * t)
        if self.kind is CurveKind.LOGISTIC:
            z = self.steepness * (t - self.midpoint)
            if z >= 0:
                return 1.0 / (1.0 + math.exp(-z))
            ez = math.exp(z)
            return ez / (1.0 + ez)
        if self.kind is CurveKind.LINEAR_RAMP:
            return min(t / self.t_ramp, 1.0)
        times, probs = zip(*self.knots)
        return float(np.interp(t, times, probs))

    __call__ = eval

    def inverse(self, p: float) -> float:
        """
        Smallest t with P(t) >= p.

        Args:
            p: Target probability in [0, 1]

        Returns:
            Time at which the curve first reaches p (absolute tolerance 1e-9)
        """
        if not 0.0 <= p <= 1.0:
            raise DomainError(f"probability must lie in [0, 1], got {p}")
        if self.eval(0.0) >= p:
            return 0.0

        if self.kind is CurveKind.EXPONENTIAL_SATURATION:
            if p >= 1.0:
                raise UnattainableError("exponential-saturation curve never reaches p=1")
            t = -math.log1p(-p) / self.rate
        elif self.kind is CurveKind.LOGISTIC:
            if p >= 1.0:
                raise UnattainableError("logistic curve never reaches p=1")
            t = self.midpoint + math.log(p / (1.0 - p)) / self.steepness
        elif self.kind is CurveKind.LINEAR_RAMP:
            t = p * self.t_ramp
        else:
            t = self._tabulated_inverse(p)
        return self._polish(max(t, 0.0), p)

    def _tabulated_inverse(self, p: float) -> float:
        for (t0, p0), (t1, p1) in zip(self.knots, self.knots[1:]):
            if p1 >= p:
                return t0 + (p - p0) / (p1 - p0) * (t1 - t0)
        raise UnattainableError(f"tabulated curve never reaches p={p}")

    def _polish(self, t: float, p: float) -> float:
        # Closed forms can land one ulp short of the target
        step = max(math.ulp(t), 1e-300)
        for _ in range(200):
            if self.eval(t) >= p:
                return t
            t += step
            step *= 2.0
        raise UnattainableError(f"curve does not reach p={p} near t={t}")
