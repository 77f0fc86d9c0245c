"""
Crossing moment t* = inf{t >= 0 : P_a(t) + P_b(t) >= 1}
"""

import logging
import math
from typing import Callable, Optional

from ..config import settings
from ..curves import SuccessCurve
from ..errors import DomainError, NoCrossingError

logger = logging.getLogger(__name__)


def bisect_threshold(predicate: Callable[[float], bool], lo: float, hi: float, tol: float) -> float:
    """
    Bisection for the first point where a monotone predicate turns true.

    Args:
        predicate: False on [0, lo], True at hi and stays True afterwards
        lo: Point where the predicate is known to fail
        hi: Point where the predicate is known to hold
        tol: Absolute width of the final bracket

    Returns:
        Upper end of the final bracket, so that predicate(result) holds
    """
    while hi - lo > tol:
        mid = lo + 0.5 * (hi - lo)
        if mid <= lo or mid >= hi:
            break
        if predicate(mid):
            hi = mid
        else:
            lo = mid
    return hi


def compute_t_star(
    curve_a: SuccessCurve,
    curve_b: SuccessCurve,
    tol: Optional[float] = None,
    search_limit: Optional[float] = None,
) -> float:
    """
    Earliest moment at which the two success probabilities sum to 1.

    Args:
        curve_a: Success curve of player A
        curve_b: Success curve of player B
        tol: Absolute tolerance of the bisection
        search_limit: Largest time probed while bracketing infinite-horizon curves

    Returns:
        t* (0 when the condition already holds at the origin)
    """
    tol = settings.t_star_tolerance if tol is None else tol
    search_limit = settings.t_star_search_limit if search_limit is None else search_limit
    if not tol > 0:
        raise DomainError(f"tolerance must be > 0, got {tol}")

    def crossed(t: float) -> bool:
        return curve_a.eval(t) + curve_b.eval(t) >= 1.0

    if crossed(0.0):
        return 0.0

    lo = 0.0
    finite_horizons = [h for h in (curve_a.t_max, curve_b.t_max) if math.isfinite(h)]
    if finite_horizons and crossed(min(finite_horizons)):
        hi = min(finite_horizons)
    else:
        hi = max([1.0] + finite_horizons)
        while not crossed(hi):
            lo = hi
            hi *= 2.0
            if hi > search_limit:
                raise NoCrossingError(
                    f"P_a + P_b stays below 1 up to t={search_limit:g}; no crossing moment"
                )

    t_star = bisect_threshold(crossed, lo, hi, tol)
    logger.debug(f"t* bracketed in [{lo}, {hi}] and refined to {t_star}")
    return t_star
