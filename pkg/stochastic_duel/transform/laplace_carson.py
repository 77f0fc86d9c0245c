"""
Laplace-Carson transform pair: quadrature forward transform and Gaver-Stehfest inversion
Stehfest sums run in mpmath extended precision; transforms written with plain arithmetic
or mpmath functions keep that precision at every node
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, List, Optional, Tuple

import mpmath

from .quadrature import QuadratureScheme, integrate
from ..config import settings
from ..errors import DomainError

logger = logging.getLogger(__name__)

MIN_ORDER = 8
MAX_ORDER = 20
# Working precision of a Stehfest sum is BASE_DIGITS + order digits per inverted dimension
BASE_DIGITS = 20


@dataclass
class InversionResult:
    """Inverted value with the order-agreement diagnostic"""

    value: float
    order: int
    reference_value: Optional[float] = None
    relative_disagreement: Optional[float] = None
    warning: Optional[str] = None

    @property
    def success(self) -> bool:
        return self.warning is None


def check_order(order: int) -> None:
    if isinstance(order, bool) or not isinstance(order, int) or order % 2 or not MIN_ORDER <= order <= MAX_ORDER:
        raise DomainError(f"inversion order must be even and in [{MIN_ORDER}, {MAX_ORDER}], got {order}")


@lru_cache(maxsize=None)
def _stehfest_fractions(order: int) -> Tuple[Fraction, ...]:
    """Exact Stehfest weights V_1..V_N for any even order"""
    half = order // 2
    weights = []
    for k in range(1, order + 1):
        total = Fraction(0)
        for j in range((k + 1) // 2, min(k, half) + 1):
            numerator = j ** half * math.factorial(2 * j)
            denominator = (
                math.factorial(half - j)
                * math.factorial(j)
                * math.factorial(j - 1)
                * math.factorial(k - j)
                * math.factorial(2 * j - k)
            )
            total += Fraction(numerator, denominator)
        sign = -1 if (k + half) % 2 else 1
        weights.append(sign * total)
    return tuple(weights)


def stehfest_coefficients(order: int) -> Tuple[float, ...]:
    """Stehfest weights V_1..V_N rounded to floats"""
    check_order(order)
    return tuple(float(w) for w in _stehfest_fractions(order))


def _scaled_weights(order: int) -> List[mpmath.mpf]:
    """V_k / k at the current mpmath precision"""
    return [mpmath.mpf(w.numerator) / (w.denominator * k) for k, w in enumerate(_stehfest_fractions(order), start=1)]


def working_digits(order: int, dimensions: int) -> int:
    """Digits that absorb the cancellation of an order-N Stehfest sum in each dimension"""
    return max(mpmath.mp.dps, BASE_DIGITS + dimensions * order)


def reference_order(order: int) -> int:
    """Order compared against in the agreement diagnostic"""
    return order + 2 if order == MIN_ORDER else order - 2


def _relative_gap(a: float, b: float) -> float:
    scale = max(abs(a), abs(b), 1e-12)
    return abs(a - b) / scale


def _with_diagnostics(compute: Callable[[int], float], order: int, check: bool) -> InversionResult:
    value = compute(order)
    result = InversionResult(value=value, order=order)
    if not check:
        return result
    other = reference_order(order)
    reference = compute(other)
    gap = _relative_gap(value, reference)
    result.reference_value = reference
    result.relative_disagreement = gap
    if gap > settings.inversion_agreement_tolerance:
        result.warning = (
            f"orders {order} and {other} disagree by {gap:.2e} (relative); "
            "the transform may not be smooth enough for Gaver-Stehfest"
        )
        logger.warning(f"Inversion accuracy warning: {result.warning}")
    return result


def lc_forward(
    f: Callable[[float, float], float],
    u: float,
    v: float,
    quadrature: Optional[QuadratureScheme] = None,
) -> float:
    """
    Bivariate Laplace-Carson transform uv * double integral of exp(-up - vq) f(p, q).

    Args:
        f: Function on [0, inf)^2
        u, v: Positive transform variables
        quadrature: Tolerances and known discontinuities of f

    Returns:
        Transform value at (u, v)
    """
    u, v = float(u), float(v)
    if not (u > 0 and v > 0):
        raise DomainError(f"Laplace-Carson transform needs u > 0 and v > 0, got u={u}, v={v}")
    scheme = quadrature or QuadratureScheme()

    def inner(p: float) -> float:
        return integrate(lambda q: math.exp(-v * q) * f(p, q), 0.0, math.inf, scheme, scheme.breakpoints_q)

    outer = integrate(lambda p: math.exp(-u * p) * inner(p), 0.0, math.inf, scheme, scheme.breakpoints_p)
    return u * v * outer


def lc_inverse_1d(
    F: Callable[[float], float],
    p: float,
    order: Optional[int] = None,
    check: bool = True,
) -> InversionResult:
    """
    Univariate inverse Laplace-Carson transform by Gaver-Stehfest.

    With u_k = k ln2 / p, f(p) is approximated by sum_k (V_k / k) F(u_k).
    F receives mpmath numbers.
    """
    order = order or settings.inversion_order
    check_order(order)
    if not p > 0:
        raise DomainError(f"inversion point must be > 0, got {p}")

    def compute(n: int) -> float:
        with mpmath.workdps(working_digits(n, 1)):
            step = mpmath.log(2) / p
            weights = _scaled_weights(n)
            return float(mpmath.fsum(weights[k - 1] * F(k * step) for k in range(1, n + 1)))

    return _with_diagnostics(compute, order, check)


def lc_inverse(
    F: Callable[[float, float], float],
    p: float,
    q: float,
    order: Optional[int] = None,
    check: bool = True,
) -> InversionResult:
    """
    Bivariate inverse Laplace-Carson transform by nested Gaver-Stehfest.

    Args:
        F: Transform evaluable at positive real (u, v); receives mpmath numbers
        p, q: Inversion point, both > 0
        order: Even Stehfest order in [8, 20]
        check: Compare against a neighbouring order and attach a warning on disagreement

    Returns:
        InversionResult with the value at (p, q)
    """
    order = order or settings.inversion_order
    check_order(order)
    if not (p > 0 and q > 0):
        raise DomainError(f"inversion point must be positive, got ({p}, {q})")

    def compute(n: int) -> float:
        with mpmath.workdps(working_digits(n, 2)):
            weights = _scaled_weights(n)
            u_nodes = [k * mpmath.log(2) / p for k in range(1, n + 1)]
            v_nodes = [k * mpmath.log(2) / q for k in range(1, n + 1)]
            return float(
                mpmath.fsum(
                    wu * wv * F(u, v)
                    for wu, u in zip(weights, u_nodes)
                    for wv, v in zip(weights, v_nodes)
                )
            )

    return _with_diagnostics(compute, order, check)
