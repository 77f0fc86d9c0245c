"""
Duel engine: crossing moment, exit indices and Monte Carlo estimation
"""

from .types import (
    DecisionReport,
    DuelScenario,
    ExitRecord,
    PlayerSpec,
    Quantity,
    ReportMode,
    SimEstimate,
    TIE_RULE,
    std_error_of,
    value_of
)
from .t_star import bisect_threshold, compute_t_star
from .exits import exit_index, iteration_count
from .monte_carlo import evaluate_deterministic, plan_lanes, replication_stream, simulate

__all__ = [
    "DecisionReport",
    "DuelScenario",
    "ExitRecord",
    "PlayerSpec",
    "Quantity",
    "ReportMode",
    "SimEstimate",
    "TIE_RULE",
    "std_error_of",
    "value_of",
    "bisect_threshold",
    "compute_t_star",
    "exit_index",
    "iteration_count",
    "evaluate_deterministic",
    "plan_lanes",
    "replication_stream",
    "simulate"
]
