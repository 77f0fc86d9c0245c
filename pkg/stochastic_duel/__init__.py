"""
Stochastic Duel Solver
Crossing moments, renewal decision epochs, Monte Carlo and transform-based analysis of time-domain duels
"""

from .config import settings
from .curves import SuccessCurve
from .engine import DecisionReport, DuelScenario, PlayerSpec, SimEstimate, compute_t_star, exit_index, simulate
from .renewal import Distribution, RenewalSpec, mean_cycle, sample_path
from .transform import lc_forward, lc_inverse, moments, phi_functional
from .scenario import classical_duel, emit_report, load_scenario, run_case_study

__version__ = "0.1.0"

__all__ = [
    "settings",
    "SuccessCurve",
    "DecisionReport",
    "DuelScenario",
    "PlayerSpec",
    "SimEstimate",
    "compute_t_star",
    "exit_index",
    "simulate",
    "Distribution",
    "RenewalSpec",
    "mean_cycle",
    "sample_path",
    "lc_forward",
    "lc_inverse",
    "moments",
    "phi_functional",
    "classical_duel",
    "emit_report",
    "load_scenario",
    "run_case_study"
]
