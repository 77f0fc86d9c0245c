"""
Renewal point processes of decision epochs
Sampling of truncated epoch paths S_0 < S_1 < ... with one RNG stream per path
"""

import logging
import math
from dataclasses import dataclass
from typing import List

import numpy as np

from .distributions import Distribution
from ..errors import DegenerateProcessError, DomainError

logger = logging.getLogger(__name__)

# Minimum number of increments drawn per batch for exponential cycles
_MIN_BATCH = 16


@dataclass(frozen=True)
class RenewalSpec:
    """Initial delay and cycle laws of one player's decision epochs"""

    initial_delay: Distribution
    cycle: Distribution

    @property
    def mean_cycle(self) -> float:
        return self.cycle.mean

    @property
    def mean_initial_delay(self) -> float:
        return self.initial_delay.mean

    @property
    def is_deterministic(self) -> bool:
        return self.initial_delay.is_deterministic and self.cycle.is_deterministic

    def with_means(self) -> "RenewalSpec":
        """Same process with every law replaced by a point mass at its mean"""
        return RenewalSpec(initial_delay=self.initial_delay.at_mean(), cycle=self.cycle.at_mean())


@dataclass(frozen=True, eq=False)
class EpochPath:
    """Epochs up to and including the first one at or past the horizon"""

    times: np.ndarray
    horizon: float

    def __len__(self) -> int:
        return len(self.times)

    def __getitem__(self, index):
        return self.times[index]

    @property
    def last(self) -> float:
        return float(self.times[-1])


def mean_cycle(spec: RenewalSpec) -> float:
    """E[sigma] of the cycle law"""
    return spec.mean_cycle


def sample_path(spec: RenewalSpec, horizon: float, rng: np.random.Generator) -> EpochPath:
    """
    Sample epochs S_0, S_1, ... until the first epoch >= horizon is included.

    Args:
        spec: Renewal process definition
        horizon: Truncation level (>= 0)
        rng: Stream owned by this path; the same stream state gives the same path

    Returns:
        EpochPath whose last element is the only one >= horizon
    """
    if not horizon >= 0 or math.isinf(horizon):
        raise DomainError(f"horizon must be finite and >= 0, got {horizon}")
    if spec.cycle.is_deterministic and spec.cycle.value == 0:
        raise DegenerateProcessError("cycle law deterministic(0) never advances the epochs")

    start = float(spec.initial_delay.sample(rng, 1)[0])
    if start >= horizon:
        return EpochPath(times=np.array([start]), horizon=horizon)

    if spec.cycle.is_deterministic:
        times = _deterministic_epochs(start, spec.cycle.value, horizon)
    else:
        times = _random_epochs(start, spec.cycle, horizon, rng)
    return EpochPath(times=times, horizon=horizon)


def crossing_count(start: float, step: float, level: float) -> int:
    """Smallest k >= 0 with start + k * step >= level, for step > 0"""
    if start >= level:
        return 0
    count = math.ceil((level - start) / step)
    # Fix up the floating ceil so that exactly the last epoch reaches the level
    while count > 1 and start + (count - 1) * step >= level:
        count -= 1
    while start + count * step < level:
        count += 1
    return count


def _deterministic_epochs(start: float, step: float, horizon: float) -> np.ndarray:
    count = crossing_count(start, step, horizon)
    return start + step * np.arange(count + 1, dtype=float)


def _random_epochs(start: float, cycle: Distribution, horizon: float, rng: np.random.Generator) -> np.ndarray:
    chunks: List[np.ndarray] = [np.array([start])]
    last = start
    while last < horizon:
        expected = (horizon - last) / cycle.mean
        batch = max(_MIN_BATCH, int(expected + 4.0 * math.sqrt(expected) + 1))
        epochs = last + np.cumsum(cycle.sample(rng, batch))
        crossed = np.flatnonzero(epochs >= horizon)
        if crossed.size:
            epochs = epochs[: crossed[0] + 1]
        chunks.append(epochs)
        last = float(epochs[-1])
    return np.concatenate(chunks)
