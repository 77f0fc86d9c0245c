"""
Pydantic models of the scenario document (schema version 1)
"""

from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, ValidationInfo, field_validator, model_validator

from ..config import settings
from ..curves import SuccessCurve
from ..renewal import Distribution, RenewalSpec

RunMode = Literal["deterministic", "monte-carlo", "analytic", "all"]


class DistributionBlock(BaseModel):
    """{"kind": "deterministic", "value": 6} or {"kind": "exponential", "rate": 0.1667}"""

    model_config = ConfigDict(extra="forbid")

    kind: Literal["deterministic", "exponential"]
    value: Optional[float] = None
    rate: Optional[float] = None

    @model_validator(mode="after")
    def check_law(self) -> "DistributionBlock":
        self.to_distribution()
        return self

    def to_distribution(self) -> Distribution:
        return Distribution(kind=self.kind, value=self.value, rate=self.rate)

    @classmethod
    def from_distribution(cls, dist: Distribution) -> "DistributionBlock":
        return cls(**dist.to_dict())


class CurveBlock(BaseModel):
    """Success curve declaration; tabulated curves take knots or raw payoff knots"""

    model_config = ConfigDict(extra="forbid")

    kind: Literal["exponential-saturation", "logistic", "linear-ramp", "tabulated"]
    rate: Optional[float] = None
    midpoint: Optional[float] = None
    steepness: Optional[float] = None
    t_ramp: Optional[float] = None
    knots: Optional[List[Tuple[float, float]]] = None
    payoffs: Optional[List[Tuple[float, float]]] = None

    @model_validator(mode="after")
    def check_curve(self) -> "CurveBlock":
        if self.knots is not None and self.payoffs is not None:
            raise ValueError("give either knots or payoffs, not both")
        self.to_curve()
        return self

    def to_curve(self) -> SuccessCurve:
        if self.kind == "tabulated" and self.payoffs is not None:
            times, values = zip(*self.payoffs) if self.payoffs else ((), ())
            return SuccessCurve.from_payoff(list(times), list(values))
        return SuccessCurve(
            kind=self.kind,
            rate=self.rate,
            midpoint=self.midpoint,
            steepness=self.steepness,
            t_ramp=self.t_ramp,
            knots=tuple(self.knots or ()),
        )

    @classmethod
    def from_curve(cls, curve: SuccessCurve) -> "CurveBlock":
        return cls(
            kind=curve.kind.value,
            rate=curve.rate,
            midpoint=curve.midpoint,
            steepness=curve.steepness,
            t_ramp=curve.t_ramp,
            knots=[list(k) for k in curve.knots] or None,
        )


class PlayerBlock(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str = ""
    curve: Optional[CurveBlock] = None
    initial_delay: DistributionBlock
    cycle: DistributionBlock

    def to_renewal(self) -> RenewalSpec:
        return RenewalSpec(initial_delay=self.initial_delay.to_distribution(), cycle=self.cycle.to_distribution())


class ScenarioFile(BaseModel):
    """Scenario document: players, crossing moment and run options"""

    model_config = ConfigDict(extra="forbid")

    schema_version: Literal[1]
    name: str = "duel"
    time_unit: str = "months"
    player_a: PlayerBlock
    player_b: PlayerBlock
    t_star: Optional[float] = Field(default=None, ge=0, validate_default=True)
    thresholds: Optional[Tuple[float, float]] = None
    apply_trace_condition: bool = True
    mode: RunMode = "deterministic"
    replications: int = Field(default_factory=lambda: settings.default_replications, validate_default=True)
    seed: int = Field(default_factory=lambda: settings.default_seed, ge=0)
    order: int = Field(default_factory=lambda: settings.inversion_order)

    @field_validator("t_star")
    @classmethod
    def t_star_needed_without_curves(cls, value: Optional[float], info: ValidationInfo) -> Optional[float]:
        players = [info.data.get("player_a"), info.data.get("player_b")]
        if value is None and any(p is not None and p.curve is None for p in players):
            raise ValueError("t_star is required when a player has no curve block")
        return value

    @field_validator("thresholds")
    @classmethod
    def thresholds_nonnegative(cls, value: Optional[Tuple[float, float]]) -> Optional[Tuple[float, float]]:
        if value is not None and min(value) < 0:
            raise ValueError("thresholds must be >= 0")
        return value

    @field_validator("replications")
    @classmethod
    def replications_for_monte_carlo(cls, value: int, info: ValidationInfo) -> int:
        if info.data.get("mode") in ("monte-carlo", "all") and value < 1:
            raise ValueError(f"replications must be >= 1 in {info.data.get('mode')} mode, got {value}")
        return value

    @field_validator("order")
    @classmethod
    def order_supported(cls, value: int) -> int:
        if value % 2 or not 8 <= value <= 20:
            raise ValueError(f"inversion order must be even and in [8, 20], got {value}")
        return value
