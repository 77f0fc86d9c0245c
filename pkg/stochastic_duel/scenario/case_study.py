"""
Bundled case study and scenario runs in the document's declared mode
"""

import logging
from typing import List, Optional

from .loader import bundled_scenario_path, read_scenario_file, to_duel_scenario
from .schema import ScenarioFile
from ..engine import DecisionReport, evaluate_deterministic, simulate
from ..transform import moments

logger = logging.getLogger(__name__)


def run_case_study(name: str = "case_study") -> DecisionReport:
    """
    Evaluate a bundled scenario in deterministic mode.

    With the default document the report reproduces the published decision table:
    t* = 17.95, mu = 3, E[S_mu] = 18, nu = 4, E[T_nu] = 21 and T_{nu-1} = 17.
    """
    document = read_scenario_file(bundled_scenario_path(name))
    return evaluate_deterministic(to_duel_scenario(document))


def run_scenario(
    document: ScenarioFile,
    replications: Optional[int] = None,
    seed: Optional[int] = None,
    threads: Optional[int] = None,
    order: Optional[int] = None,
) -> List[DecisionReport]:
    """Reports for the document's mode; 'all' runs every route in turn"""
    scenario = to_duel_scenario(document)
    modes = ["deterministic", "monte-carlo", "analytic"] if document.mode == "all" else [document.mode]
    reports = []
    for mode in modes:
        if mode == "deterministic":
            reports.append(evaluate_deterministic(scenario))
        elif mode == "monte-carlo":
            reports.append(
                simulate(
                    scenario,
                    replications=replications or document.replications,
                    seed=document.seed if seed is None else seed,
                    threads=threads,
                )
            )
        else:
            reports.append(moments(scenario, order=order or document.order, include_printed=True))
    logger.info(f"Scenario '{document.name}' evaluated in {', '.join(modes)} mode")
    return reports
