"""
Adaptive quadrature on split intervals with accuracy checks
"""

import logging
import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Iterable, Tuple

from scipy import integrate as scipy_integrate

from ..config import settings
from ..errors import QuadratureAccuracyError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class QuadratureScheme:
    """Tolerances of scipy's adaptive quadrature plus known discontinuities"""

    epsabs: float = field(default_factory=lambda: settings.quad_epsabs)
    epsrel: float = field(default_factory=lambda: settings.quad_epsrel)
    limit: int = field(default_factory=lambda: settings.quad_limit)
    failure_tolerance: float = 1e-8
    breakpoints_p: Tuple[float, ...] = ()
    breakpoints_q: Tuple[float, ...] = ()


def integrate(
    fn: Callable[[float], float],
    lo: float,
    hi: float,
    scheme: QuadratureScheme,
    breakpoints: Iterable[float] = (),
) -> float:
    """
    Integrate fn over [lo, hi] (hi may be infinite), split at interior breakpoints.

    Raises:
        QuadratureAccuracyError: error bound above the scheme's failure tolerance
    """
    if hi <= lo:
        return 0.0
    cuts = sorted({b for b in breakpoints if lo < b < hi and math.isfinite(b)})
    edges = [lo] + cuts + [hi]
    total, error = 0.0, 0.0
    for left, right in zip(edges, edges[1:]):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", scipy_integrate.IntegrationWarning)
            value, abserr = scipy_integrate.quad(
                fn, left, right, epsabs=scheme.epsabs, epsrel=scheme.epsrel, limit=scheme.limit
            )
        total += value
        error += abserr
    if error > max(scheme.failure_tolerance, scheme.failure_tolerance * abs(total)):
        raise QuadratureAccuracyError(f"quadrature over [{lo}, {hi}] did not converge", total, error)
    return total
