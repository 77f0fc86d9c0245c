"""
Exit indices on realized epoch paths and the iteration-count rule
"""

import math
from typing import Sequence, Union

import numpy as np

from .types import ExitRecord
from ..config import settings
from ..errors import InsufficientPathError
from ..renewal import EpochPath


def exit_index(path: Union[EpochPath, Sequence[float], np.ndarray], threshold: float) -> ExitRecord:
    """
    First epoch at or past the threshold.

    Args:
        path: Increasing epoch times
        threshold: Exit level (U for A, V for B)

    Returns:
        ExitRecord with index mu, S_mu and S_{mu-1} (0 when mu = 0)
    """
    times = np.asarray(getattr(path, "times", path), dtype=float)
    if times.size == 0 or times[-1] < threshold:
        last = times[-1] if times.size else None
        raise InsufficientPathError(f"path ends at {last} before the threshold {threshold}")
    index = int(np.searchsorted(times, threshold, side="left"))
    pre_exit = float(times[index - 1]) if index > 0 else 0.0
    return ExitRecord(index=index, exit_time=float(times[index]), pre_exit_time=pre_exit)


def iteration_count(mean_exit: float, mean_initial_delay: float, mean_cycle: float) -> int:
    """
    Number of cycles after the initial delay that reaches the mean exit time.

    Exit indices count increments after S_0, so the mean initial delay is
    subtracted before dividing by the mean cycle. Quotients within the
    derivative agreement tolerance of an integer count as that integer.
    """
    if mean_cycle <= 0 or mean_exit is None:
        return 0
    quotient = (mean_exit - mean_initial_delay) / mean_cycle
    nearest = round(quotient)
    if abs(quotient - nearest) <= settings.derivative_agreement_tolerance:
        return max(0, int(nearest))
    return max(0, math.floor(quotient))
