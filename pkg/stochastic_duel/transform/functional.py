"""
Joint functional of exit and pre-exit epochs
Trace form evaluated through renewal-measure integrals; printed ratio form through nested Gaver-Stehfest
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, Optional, Tuple

import mpmath

from .gamma_terms import GammaTerms, TransformArgs, laplace_of, laplace_tail_of
from .laplace_carson import InversionResult, check_order, lc_inverse, lc_inverse_1d, reference_order
from .quadrature import QuadratureScheme, integrate
from .renewal_measure import exit_atoms, renewal_measure
from ..config import settings
from ..engine import DuelScenario
from ..errors import AnalyticUnavailableError, DomainError
from ..renewal import Distribution, RenewalSpec

logger = logging.getLogger(__name__)


class FunctionalForm(str, Enum):
    TRACE = "trace"
    PRINTED = "printed"


@dataclass(frozen=True)
class Exponents:
    """Signed exponents; small negative values are allowed for central differences"""

    theta0: float = 0.0
    theta1: float = 0.0
    vartheta0: float = 0.0
    vartheta1: float = 0.0

    @classmethod
    def from_args(cls, args: TransformArgs) -> "Exponents":
        return cls(args.theta0, args.theta1, args.vartheta0, args.vartheta1)


def exit_tail(
    spec: RenewalSpec,
    threshold: float,
    theta_pre: float,
    theta_exit: float,
    scheme: QuadratureScheme,
) -> Callable[[float], float]:
    """
    Build y -> E[exp(-theta_pre T_{nu-1} - theta_exit T_nu); T_nu >= y] for exit level `threshold`.
    """
    measure = renewal_measure(spec, threshold)
    delay, cycle = spec.initial_delay, spec.cycle
    both = theta_pre + theta_exit

    def tail(level: float) -> float:
        bound = max(threshold, level)
        # nu = 0: the first epoch is already past both levels
        total = laplace_tail_of(delay, theta_exit, bound)
        jumps = (bound - cycle.value,) if cycle.is_deterministic else ()
        total += measure.integrate(
            lambda x: math.exp(-both * x) * laplace_tail_of(cycle, theta_exit, bound - x),
            scheme,
            jumps,
        )
        return total

    return tail


def trace_functional(
    scenario: DuelScenario,
    thresholds: Tuple[float, float],
    exponents: Exponents,
    scheme: Optional[QuadratureScheme] = None,
) -> float:
    """
    E[exp(-theta0 S_{mu-1} - theta1 S_mu - vartheta0 T_{nu-1} - vartheta1 T_nu); S_mu <= T_nu].

    Args:
        scenario: Duel with deterministic or exponential laws
        thresholds: Exit levels (U, V)
        exponents: Transform exponents (signed)
        scheme: Quadrature tolerances

    Returns:
        Value of the functional; at zero exponents, A's win probability
    """
    scheme = scheme or QuadratureScheme()
    u_level, v_level = thresholds
    renewal_a, renewal_b = scenario.player_a.renewal, scenario.player_b.renewal
    theta0, theta1 = exponents.theta0, exponents.theta1
    tail_b = exit_tail(renewal_b, v_level, exponents.vartheta0, exponents.vartheta1, scheme)
    jumps = exit_atoms(renewal_b, v_level) + (v_level,)
    delay, cycle = renewal_a.initial_delay, renewal_a.cycle

    # mu = 0: A's first epoch is already past U
    if delay.is_deterministic:
        total = math.exp(-theta1 * delay.value) * tail_b(delay.value) if delay.value >= u_level else 0.0
    else:
        kappa = delay.rate
        total = integrate(
            lambda y: kappa * math.exp(-(kappa + theta1) * y) * tail_b(y), u_level, math.inf, scheme, jumps
        )

    measure = renewal_measure(renewal_a, u_level)
    if cycle.is_deterministic:
        step = cycle.value

        def exit_after(x: float) -> float:
            y = x + step
            if y < u_level:
                return 0.0
            return math.exp(-theta0 * x - theta1 * y) * tail_b(y)

        total += measure.integrate(exit_after, scheme, (u_level - step,) + tuple(j - step for j in jumps))
    else:
        rate = cycle.rate
        # Memoryless overshoot: S_mu - U is exponential whatever S_{mu-1} was
        overshoot = integrate(
            lambda z: math.exp(-(rate + theta1) * z) * tail_b(u_level + z),
            0.0,
            math.inf,
            scheme,
            tuple(j - u_level for j in jumps),
        )
        reach = measure.integrate(lambda x: math.exp(-theta0 * x - rate * (u_level - x)), scheme)
        total += rate * math.exp(-theta1 * u_level) * overshoot * reach
    return total


def exit_transform(spec: RenewalSpec, theta_pre: float = 0.0, theta_exit: float = 0.0) -> Callable[[float], float]:
    """
    Laplace-Carson transform in the threshold p of E[exp(-theta_pre S_{mu-1} - theta_exit S_mu)].
    """
    delay, cycle = spec.initial_delay, spec.cycle

    def transform(u: float) -> float:
        combined = theta_pre + theta_exit + u
        head = laplace_of(delay, theta_exit) - laplace_of(delay, theta_exit + u)
        per_step = laplace_of(cycle, theta_exit) - laplace_of(cycle, theta_exit + u)
        return head + laplace_of(delay, combined) * per_step / (1.0 - laplace_of(cycle, combined))

    return transform


def exit_functional(
    spec: RenewalSpec,
    threshold: float,
    theta_pre: float = 0.0,
    theta_exit: float = 0.0,
    order: Optional[int] = None,
) -> InversionResult:
    """
    Single-player exit functional by inverting exit_transform at the threshold.

    Raises:
        AnalyticUnavailableError: deterministic cycles (lattice exit epochs)
    """
    delay, cycle = spec.initial_delay, spec.cycle
    if cycle.is_deterministic:
        raise AnalyticUnavailableError(
            "deterministic cycles give lattice exit epochs; Gaver-Stehfest needs a smooth transform"
        )
    if threshold <= 0:
        return InversionResult(value=laplace_of(delay, theta_exit), order=order or 0)
    if not delay.is_deterministic:
        return lc_inverse_1d(exit_transform(spec, theta_pre, theta_exit), threshold, order)

    start = delay.value
    if threshold <= start:
        return InversionResult(value=math.exp(-theta_exit * start), order=order or 0)
    shifted = RenewalSpec(initial_delay=Distribution.deterministic(0.0), cycle=cycle)
    result = lc_inverse_1d(exit_transform(shifted, theta_pre, theta_exit), threshold - start, order)
    result.value *= math.exp(-(theta_pre + theta_exit) * start)
    if result.reference_value is not None:
        result.reference_value *= math.exp(-(theta_pre + theta_exit) * start)
    return result


def _expected_factor(dist: Distribution, factor: Callable[[float], float], growth: float) -> float:
    """E[factor(sigma)] for an exponential cycle law, in the working mpmath precision"""
    if growth >= dist.rate:
        raise AnalyticUnavailableError(
            f"ratio expectation diverges: growth rate {float(growth):.4g} >= cycle rate {dist.rate:.4g}"
        )
    rate = dist.rate
    return mpmath.quad(lambda x: rate * mpmath.exp(-rate * x) * factor(x), [0, mpmath.inf])


def printed_transform(scenario: DuelScenario, args: TransformArgs, t_star: float) -> Callable[[float, float], float]:
    """Transform in (u, v) of the factorized ratio form, multiplied by Gamma(t*)"""
    sigma_law = scenario.player_a.renewal.cycle
    tau_law = scenario.player_b.renewal.cycle
    # The form separates into a u part and a v part; each node value is reused across the grid
    sigma_parts: Dict[object, float] = {}
    tau_parts: Dict[object, float] = {}

    def transform(u: float, v: float) -> float:
        terms = GammaTerms(args.with_uv(u, v))
        if u not in sigma_parts:
            sigma_parts[u] = _expected_factor(sigma_law, terms.sigma_factor, terms.sigma_growth)
        if v not in tau_parts:
            tau_parts[v] = _expected_factor(tau_law, terms.tau_factor, terms.tau_growth)
        return tau_parts[v] * sigma_parts[u] * terms.upper_gamma(t_star)

    return transform


def printed_functional(
    scenario: DuelScenario,
    args: TransformArgs,
    t_star: float,
    order: Optional[int] = None,
) -> InversionResult:
    """
    Ratio form with the whole quotient under one expectation, inverted at (t*, t*).

    Raises:
        AnalyticUnavailableError: a cycle law is deterministic (lattice epochs, no smooth
            inverse), or the ratio expectation diverges at some inversion node
    """
    if not t_star > 0:
        raise DomainError(f"t* must be > 0 for the inversion, got {t_star}")
    order = order or settings.inversion_order
    check_order(order)
    for player, spec in (("A", scenario.player_a.renewal), ("B", scenario.player_b.renewal)):
        if spec.cycle.is_deterministic:
            raise AnalyticUnavailableError(
                f"player {player} has deterministic cycles; the ratio form is a step function of the "
                "thresholds and Gaver-Stehfest needs a smooth transform"
            )
    # Largest abscissa of the inversion and of its agreement check
    top = max(order, reference_order(order)) * math.log(2.0) / t_star
    growth = {"A": args.theta0 + top, "B": args.vartheta0 + top}
    for player, law in (("A", scenario.player_a.renewal.cycle), ("B", scenario.player_b.renewal.cycle)):
        if growth[player] >= law.rate:
            raise AnalyticUnavailableError(
                f"ratio expectation of player {player} diverges: inversion abscissa {growth[player]:.4g} "
                f">= cycle rate {law.rate:.4g}"
            )
    return lc_inverse(printed_transform(scenario, args, t_star), t_star, t_star, order)


def phi_functional(
    scenario: DuelScenario,
    args: Optional[TransformArgs] = None,
    t_star: Optional[float] = None,
    order: Optional[int] = None,
    form: FunctionalForm = FunctionalForm.TRACE,
    scheme: Optional[QuadratureScheme] = None,
) -> float:
    """
    Joint functional of exit and pre-exit epochs of both players.

    Args:
        scenario: Duel with deterministic or exponential laws
        args: Exponents theta0, theta1, vartheta0, vartheta1 (all >= 0)
        t_star: Crossing moment; resolved from the scenario when omitted
        order: Gaver-Stehfest order (printed form only)
        form: trace (exact renewal-measure evaluation) or printed (ratio form)
        scheme: Quadrature tolerances (trace form only)

    Returns:
        Functional value; at zero exponents the probability that A exits first
    """
    args = args or TransformArgs()
    t_star = scenario.resolve_t_star() if t_star is None else t_star
    form = FunctionalForm(form)
    if form is FunctionalForm.PRINTED:
        result = printed_functional(scenario, args, t_star, order)
        return result.value
    thresholds = scenario.resolve_thresholds(t_star)
    return trace_functional(scenario, thresholds, Exponents.from_args(args), scheme)
