"""
Scenario ingestion, bundled case study, classical duel and report emission
"""

from .schema import CurveBlock, DistributionBlock, PlayerBlock, ScenarioFile
from .loader import (
    bundled_scenario_path,
    dump_scenario,
    load_scenario,
    load_scenario_file,
    read_scenario_file,
    to_duel_scenario,
    to_scenario_file
)
from .case_study import run_case_study, run_scenario
from .classical_duel import (
    BackwardInductionSolution,
    ClassicalDuel,
    ClassicalDuelSolution,
    backward_induction,
    build_game_tree,
    classical_duel,
    crossing_step,
    threshold_step
)
from .reports import FORMATS, emit_report, emit_reports, write_output

__all__ = [
    "CurveBlock",
    "DistributionBlock",
    "PlayerBlock",
    "ScenarioFile",
    "bundled_scenario_path",
    "dump_scenario",
    "load_scenario",
    "load_scenario_file",
    "read_scenario_file",
    "to_duel_scenario",
    "to_scenario_file",
    "run_case_study",
    "run_scenario",
    "BackwardInductionSolution",
    "ClassicalDuel",
    "ClassicalDuelSolution",
    "backward_induction",
    "build_game_tree",
    "classical_duel",
    "crossing_step",
    "threshold_step",
    "FORMATS",
    "emit_report",
    "emit_reports",
    "write_output"
]
