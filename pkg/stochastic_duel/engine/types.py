"""
Data structures shared by the simulation and analytic routes
"""

import math
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple, Union

from ..curves import SuccessCurve
from ..errors import ValidationError
from ..renewal import RenewalSpec

TIE_RULE = "A wins ties"


class ReportMode(str, Enum):
    DETERMINISTIC = "deterministic"
    MONTE_CARLO = "monte-carlo"
    ANALYTIC = "analytic"


@dataclass(frozen=True)
class ExitRecord:
    """Exit index with the exit and pre-exit epochs"""

    index: int
    exit_time: float
    pre_exit_time: float


@dataclass(frozen=True)
class PlayerSpec:
    """One player's success curve (optional) and decision-epoch process"""

    renewal: RenewalSpec
    curve: Optional[SuccessCurve] = None
    name: str = ""


@dataclass(frozen=True)
class DuelScenario:
    """Two players, the crossing moment t* and the exit thresholds (U, V)"""

    player_a: PlayerSpec
    player_b: PlayerSpec
    t_star_override: Optional[float] = None
    thresholds: Optional[Tuple[float, float]] = None
    apply_trace_condition: bool = True
    time_unit: str = "months"
    name: str = "duel"

    def __post_init__(self):
        has_curves = self.player_a.curve is not None and self.player_b.curve is not None
        if not has_curves and self.t_star_override is None:
            raise ValidationError("t_star is required unless both players declare a success curve")
        if self.t_star_override is not None and not (
            self.t_star_override >= 0 and math.isfinite(self.t_star_override)
        ):
            raise ValidationError(f"t_star must be finite and >= 0, got {self.t_star_override}")
        if self.thresholds is not None:
            thresholds = tuple(float(x) for x in self.thresholds)
            if len(thresholds) != 2 or not all(x >= 0 and math.isfinite(x) for x in thresholds):
                raise ValidationError(f"thresholds must be two finite values >= 0, got {self.thresholds}")
            object.__setattr__(self, "thresholds", thresholds)

    @property
    def tie_rule(self) -> str:
        return TIE_RULE

    @property
    def has_curves(self) -> bool:
        return self.player_a.curve is not None and self.player_b.curve is not None

    @property
    def uses_trace_condition(self) -> bool:
        return self.apply_trace_condition and self.has_curves

    @property
    def is_deterministic(self) -> bool:
        return self.player_a.renewal.is_deterministic and self.player_b.renewal.is_deterministic

    def resolve_t_star(self, tol: Optional[float] = None) -> float:
        if self.t_star_override is not None:
            return float(self.t_star_override)
        from .t_star import compute_t_star
        return compute_t_star(self.player_a.curve, self.player_b.curve, tol)

    def resolve_thresholds(self, t_star: float) -> Tuple[float, float]:
        if self.thresholds is not None:
            return self.thresholds
        return (t_star, t_star)

    def at_means(self) -> "DuelScenario":
        """Copy of this scenario with every law evaluated at its mean"""
        return DuelScenario(
            player_a=PlayerSpec(self.player_a.renewal.with_means(), self.player_a.curve, self.player_a.name),
            player_b=PlayerSpec(self.player_b.renewal.with_means(), self.player_b.curve, self.player_b.name),
            t_star_override=self.t_star_override,
            thresholds=self.thresholds,
            apply_trace_condition=self.apply_trace_condition,
            time_unit=self.time_unit,
            name=self.name,
        )

    def swapped(self) -> "DuelScenario":
        """Same scenario with the roles of A and B exchanged"""
        thresholds = None if self.thresholds is None else (self.thresholds[1], self.thresholds[0])
        return DuelScenario(
            player_a=self.player_b,
            player_b=self.player_a,
            t_star_override=self.t_star_override,
            thresholds=thresholds,
            apply_trace_condition=self.apply_trace_condition,
            time_unit=self.time_unit,
            name=f"{self.name} (swapped)",
        )


@dataclass(frozen=True)
class SimEstimate:
    """Monte Carlo mean with its standard error"""

    mean: float
    std_error: float
    replications: int

    def __post_init__(self):
        if self.replications < 1:
            raise ValidationError(f"replications must be >= 1, got {self.replications}")
        if not self.std_error >= 0:
            raise ValidationError(f"std_error must be >= 0, got {self.std_error}")

    def within(self, target: float, n_sigma: float = 3.0, floor: float = 0.0) -> bool:
        return abs(self.mean - target) <= n_sigma * self.std_error + floor


Quantity = Union[float, SimEstimate]


def value_of(quantity: Optional[Quantity]) -> Optional[float]:
    """Point value of an exact number or an estimate"""
    if quantity is None:
        return None
    if isinstance(quantity, SimEstimate):
        return quantity.mean
    return float(quantity)


def std_error_of(quantity: Optional[Quantity]) -> Optional[float]:
    if isinstance(quantity, SimEstimate):
        return quantity.std_error
    return None


@dataclass
class DecisionReport:
    """Decision parameters of one duel: t*, iteration counts, exit times and win probability"""

    t_star: float
    mu: int
    nu: int
    e_S_mu: Quantity
    e_S_mu_minus_1: Quantity
    e_T_nu: Quantity
    e_T_nu_minus_1: Quantity
    win_prob_a: Quantity
    mode: ReportMode
    conditional: Dict[str, Quantity] = field(default_factory=dict)
    restricted: Dict[str, float] = field(default_factory=dict)
    extras: Dict[str, Any] = field(default_factory=dict)
    warnings: List[str] = field(default_factory=list)
    thresholds: Optional[Tuple[float, float]] = None
    time_unit: str = "months"
    scenario_name: str = "duel"

    def __post_init__(self):
        if self.thresholds is None:
            self.thresholds = (self.t_star, self.t_star)
        win = value_of(self.win_prob_a)
        if not 0.0 <= win <= 1.0:
            raise ValidationError(f"win probability {win} outside [0, 1]")

    @property
    def quantities(self) -> Dict[str, Quantity]:
        return {
            "S_mu": self.e_S_mu,
            "S_mu_minus_1": self.e_S_mu_minus_1,
            "T_nu": self.e_T_nu,
            "T_nu_minus_1": self.e_T_nu_minus_1,
            "win_prob_a": self.win_prob_a,
        }

    def ordering_holds(self) -> bool:
        """t* < E[S_mu] < E[T_nu]"""
        return self.t_star < value_of(self.e_S_mu) < value_of(self.e_T_nu)

    def to_dict(self) -> Dict[str, Any]:
        """Plain nested dict with estimates expanded to mean/std_error/replications"""

        def expand(quantity: Quantity) -> Dict[str, Any]:
            if isinstance(quantity, SimEstimate):
                return asdict(quantity)
            return {"mean": float(quantity), "std_error": None, "replications": None}

        return {
            "scenario": self.scenario_name,
            "mode": self.mode.value,
            "time_unit": self.time_unit,
            "t_star": self.t_star,
            "thresholds": list(self.thresholds),
            "mu": self.mu,
            "nu": self.nu,
            "quantities": {name: expand(q) for name, q in self.quantities.items()},
            "conditional_on_win": {name: expand(q) for name, q in self.conditional.items()},
            "restricted": dict(self.restricted),
            "extras": dict(self.extras),
            "warnings": list(self.warnings),
        }
