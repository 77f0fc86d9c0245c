"""
Expected exit and pre-exit epochs by differentiating the joint functional
"""

import logging
from dataclasses import replace
from typing import Dict, Optional, Tuple

from .functional import Exponents, FunctionalForm, printed_functional, trace_functional
from .gamma_terms import TransformArgs
from .quadrature import QuadratureScheme
from ..config import settings
from ..engine import DecisionReport, DuelScenario, ReportMode, iteration_count
from ..errors import AnalyticUnavailableError, DerivativeAccuracyError, DomainError

logger = logging.getLogger(__name__)

# Report quantity -> exponent that weights it
_DIRECTIONS: Dict[str, str] = {
    "S_mu": "theta1",
    "S_mu_minus_1": "theta0",
    "T_nu": "vartheta1",
    "T_nu_minus_1": "vartheta0",
}


def _richardson(evaluate, direction: str, h: float, tolerance: float) -> Tuple[float, float]:
    """-d/dx at 0 by central differences, refined with the (h, h/2) Richardson pair"""

    def central(step: float) -> float:
        plus = evaluate(replace(Exponents(), **{direction: step}))
        minus = evaluate(replace(Exponents(), **{direction: -step}))
        return -(plus - minus) / (2.0 * step)

    coarse = central(h)
    fine = central(h / 2.0)
    gap = abs(coarse - fine) / max(abs(fine), 1e-6)
    if gap > tolerance:
        raise DerivativeAccuracyError(
            f"finite differences along {direction} change by {gap:.2e} (relative) under h -> h/2 with h={h}"
        )
    return (4.0 * fine - coarse) / 3.0, gap


def moments(
    scenario: DuelScenario,
    t_star: Optional[float] = None,
    h: Optional[float] = None,
    scheme: Optional[QuadratureScheme] = None,
    order: Optional[int] = None,
    include_printed: bool = False,
) -> DecisionReport:
    """
    Analytic decision report from derivatives of the joint functional.

    Args:
        scenario: Duel with deterministic or exponential laws
        t_star: Crossing moment; resolved from the scenario when omitted
        h: Finite-difference step for the derivatives at 0
        scheme: Quadrature tolerances
        order: Gaver-Stehfest order for the printed-form comparison
        include_printed: Also evaluate the printed ratio form at zero exponents

    Returns:
        DecisionReport in analytic mode; expectations are conditional on A exiting first,
        the unnormalized derivatives are kept in `restricted`
    """
    h = settings.derivative_step if h is None else h
    if not h > 0:
        raise DomainError(f"finite-difference step must be > 0, got {h}")
    t_star = scenario.resolve_t_star() if t_star is None else t_star
    thresholds = scenario.resolve_thresholds(t_star)
    scheme = scheme or QuadratureScheme()

    def evaluate(exponents: Exponents) -> float:
        return trace_functional(scenario, thresholds, exponents, scheme)

    base = evaluate(Exponents())
    if not base > 0:
        raise AnalyticUnavailableError("A never exits first; conditional expectations are undefined")

    restricted: Dict[str, float] = {}
    conditional: Dict[str, float] = {}
    gaps: Dict[str, float] = {}
    for name, direction in _DIRECTIONS.items():
        value, gap = _richardson(evaluate, direction, h, settings.derivative_agreement_tolerance)
        restricted[name] = value
        conditional[name] = value / base
        gaps[name] = gap

    renewal_a, renewal_b = scenario.player_a.renewal, scenario.player_b.renewal
    extras = {"richardson_gaps": gaps, "functional_form": FunctionalForm.TRACE.value, "step": h}
    warnings = []
    if include_printed:
        try:
            printed = printed_functional(scenario, TransformArgs(), t_star, order)
            extras["printed_form"] = {
                "value": printed.value,
                "order": printed.order,
                "relative_disagreement": printed.relative_disagreement,
                "discrepancy": printed.value - base,
                "warning": printed.warning,
            }
            if printed.warning:
                warnings.append(printed.warning)
        except AnalyticUnavailableError as exc:
            extras["printed_form"] = {"unavailable": str(exc)}

    report = DecisionReport(
        t_star=t_star,
        mu=iteration_count(conditional["S_mu"], renewal_a.mean_initial_delay, renewal_a.mean_cycle),
        nu=iteration_count(conditional["T_nu"], renewal_b.mean_initial_delay, renewal_b.mean_cycle),
        e_S_mu=conditional["S_mu"],
        e_S_mu_minus_1=conditional["S_mu_minus_1"],
        e_T_nu=conditional["T_nu"],
        e_T_nu_minus_1=conditional["T_nu_minus_1"],
        win_prob_a=min(max(base, 0.0), 1.0),
        mode=ReportMode.ANALYTIC,
        conditional=dict(conditional),
        restricted=restricted,
        extras=extras,
        warnings=warnings,
        thresholds=thresholds,
        time_unit=scenario.time_unit,
        scenario_name=scenario.name,
    )
    logger.info(f"Analytic moments of '{scenario.name}': P(A first)={base:.6g}, mu={report.mu}, nu={report.nu}")
    return report
