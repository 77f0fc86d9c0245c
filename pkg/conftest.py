"""
Shared fixtures for the Stochastic Duel Solver test suite
"""

import os

import pytest
from hypothesis import settings as hypothesis_settings

from stochastic_duel.engine import DuelScenario, PlayerSpec
from stochastic_duel.renewal import Distribution, RenewalSpec
from stochastic_duel.scenario import bundled_scenario_path, read_scenario_file, to_duel_scenario

hypothesis_settings.register_profile("fast", max_examples=50, deadline=None)
hypothesis_settings.register_profile("thorough", max_examples=500, deadline=None)
hypothesis_settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "fast"))


def renewal(delay, cycle) -> RenewalSpec:
    return RenewalSpec(initial_delay=delay, cycle=cycle)


@pytest.fixture
def case_study() -> DuelScenario:
    """Bundled deterministic scenario: A at 0, 6, 12, ...; B at 5, 9, 13, ...; t* = 17.95"""
    return to_duel_scenario(read_scenario_file(bundled_scenario_path("case_study")))


@pytest.fixture
def exponential_case_study() -> DuelScenario:
    """Same delays with exponential cycles of means 6 and 4"""
    return to_duel_scenario(read_scenario_file(bundled_scenario_path("case_study_exponential")))


@pytest.fixture
def symmetric_exponential() -> DuelScenario:
    player = PlayerSpec(renewal(Distribution.deterministic(0.0), Distribution.exponential(0.5)))
    return DuelScenario(player_a=player, player_b=player, t_star_override=3.0, name="symmetric")
