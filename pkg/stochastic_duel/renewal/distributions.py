"""
Laws of initial delays and inter-epoch increments
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Optional

import numpy as np

from ..errors import ValidationError


class DistributionKind(str, Enum):
    DETERMINISTIC = "deterministic"
    EXPONENTIAL = "exponential"


@dataclass(frozen=True)
class Distribution:
    """Deterministic or exponential law on [0, inf)"""

    kind: DistributionKind
    value: Optional[float] = None
    rate: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "kind", DistributionKind(self.kind))
        if self.kind is DistributionKind.DETERMINISTIC:
            if self.value is None or not (self.value >= 0 and math.isfinite(self.value)):
                raise ValidationError(f"deterministic law needs a finite value >= 0, got {self.value}")
            if self.rate is not None:
                raise ValidationError("deterministic law takes a value, not a rate")
        else:
            if self.rate is None or not (self.rate > 0 and math.isfinite(self.rate)):
                raise ValidationError(f"exponential law needs a finite rate > 0, got {self.rate}")
            if self.value is not None:
                raise ValidationError("exponential law takes a rate, not a value")

    @classmethod
    def deterministic(cls, value: float) -> "Distribution":
        return cls(kind=DistributionKind.DETERMINISTIC, value=value)

    @classmethod
    def exponential(cls, rate: float) -> "Distribution":
        return cls(kind=DistributionKind.EXPONENTIAL, rate=rate)

    @property
    def is_deterministic(self) -> bool:
        return self.kind is DistributionKind.DETERMINISTIC

    @property
    def mean(self) -> float:
        if self.is_deterministic:
            return self.value
        return 1.0 / self.rate

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        """Draw `size` values; deterministic laws leave the stream untouched"""
        if self.is_deterministic:
            return np.full(size, self.value, dtype=float)
        return rng.exponential(scale=1.0 / self.rate, size=size)

    def at_mean(self) -> "Distribution":
        return Distribution.deterministic(self.mean)

    def to_dict(self) -> Dict[str, Any]:
        if self.is_deterministic:
            return {"kind": self.kind.value, "value": self.value}
        return {"kind": self.kind.value, "rate": self.rate}
