"""
Tests for the duel engine: crossing moment, exit indices and Monte Carlo estimation
"""

import math

import numpy as np
import pytest

from stochastic_duel.curves import SuccessCurve
from stochastic_duel.engine import (
    DecisionReport,
    DuelScenario,
    PlayerSpec,
    ReportMode,
    SimEstimate,
    compute_t_star,
    evaluate_deterministic,
    exit_index,
    iteration_count,
    plan_lanes,
    replication_stream,
    simulate,
)
from stochastic_duel.engine.monte_carlo import run_lane
from stochastic_duel.errors import InsufficientPathError, NoCrossingError, ValidationError
from stochastic_duel.renewal import Distribution, RenewalSpec, sample_path

DET = Distribution.deterministic
EXP = Distribution.exponential


def single_player_scenario(rate: float, t_star: float) -> DuelScenario:
    """A alone in practice: B's first epoch lies far beyond any threshold"""
    player_a = PlayerSpec(RenewalSpec(DET(0.0), EXP(rate)))
    player_b = PlayerSpec(RenewalSpec(DET(1e6), DET(1.0)))
    return DuelScenario(player_a=player_a, player_b=player_b, t_star_override=t_star)


# ----------------------------------------------------------------------
# t*
# ----------------------------------------------------------------------

def test_t_star_of_identical_exponential_curves():
    curve = SuccessCurve.exponential_saturation(1.0)
    assert compute_t_star(curve, curve) == pytest.approx(math.log(2.0), abs=1e-9)


def test_t_star_is_zero_when_crossed_at_origin():
    curve = SuccessCurve.tabulated([(0.0, 0.6), (10.0, 1.0)])
    assert compute_t_star(curve, curve) == 0.0


@pytest.mark.parametrize("curve", [
    SuccessCurve.logistic(midpoint=12.0, steepness=0.4),
    SuccessCurve.linear_ramp(30.0),
    SuccessCurve.exponential_saturation(0.2),
])
def test_t_star_of_symmetric_curves_is_the_median(curve):
    assert compute_t_star(curve, curve) == pytest.approx(curve.inverse(0.5), abs=1e-9)


def test_t_star_with_mixed_horizons():
    t_star = compute_t_star(SuccessCurve.linear_ramp(10.0), SuccessCurve.exponential_saturation(0.1))
    assert 0.0 < t_star <= 10.0
    assert t_star / 10.0 + (-math.expm1(-0.1 * t_star)) == pytest.approx(1.0, abs=1e-9)


def test_no_crossing_within_search_limit():
    with pytest.raises(NoCrossingError):
        compute_t_star(
            SuccessCurve.exponential_saturation(1e-15),
            SuccessCurve.exponential_saturation(1e-15),
            search_limit=1e6,
        )


# ----------------------------------------------------------------------
# Exit indices
# ----------------------------------------------------------------------

@pytest.mark.parametrize("path, threshold, expected", [
    ([0.0, 6.0, 12.0, 18.0, 24.0], 17.95, (3, 18.0, 12.0)),
    ([5.0, 9.0, 13.0, 17.0, 21.0], 17.95, (4, 21.0, 17.0)),
    ([0.0, 3.0], 0.0, (0, 0.0, 0.0)),
    ([0.0, 6.0, 12.0], 6.0, (1, 6.0, 0.0)),
])
def test_exit_index_examples(path, threshold, expected):
    record = exit_index(path, threshold)
    assert (record.index, record.exit_time, record.pre_exit_time) == expected


def test_exit_index_needs_a_crossing():
    with pytest.raises(InsufficientPathError):
        exit_index([0.0, 6.0, 12.0], 17.95)
    with pytest.raises(InsufficientPathError):
        exit_index([], 1.0)


def test_iteration_count():
    assert iteration_count(18.0, 0.0, 6.0) == 3
    assert iteration_count(21.0, 5.0, 4.0) == 4
    assert iteration_count(5.0, 5.0, 4.0) == 0
    assert iteration_count(10.0, 0.0, 0.0) == 0


@pytest.mark.parametrize("mean_exit, expected", [
    (20.99999999149, 4),
    (21.0000001, 4),
    (20.9, 3),
    (22.5, 4),
])
def test_iteration_count_absorbs_derivative_error(mean_exit, expected):
    assert iteration_count(mean_exit, 5.0, 4.0) == expected


# ----------------------------------------------------------------------
# Scenario and report types
# ----------------------------------------------------------------------

def test_scenario_needs_t_star_without_curves():
    player = PlayerSpec(RenewalSpec(DET(0.0), DET(1.0)))
    with pytest.raises(ValidationError):
        DuelScenario(player_a=player, player_b=player)
    with pytest.raises(ValidationError):
        DuelScenario(player_a=player, player_b=player, t_star_override=1.0, thresholds=(1.0, -2.0))


def test_scenario_resolves_t_star_from_curves():
    curve = SuccessCurve.exponential_saturation(1.0)
    player = PlayerSpec(RenewalSpec(DET(0.0), DET(1.0)), curve=curve)
    scenario = DuelScenario(player_a=player, player_b=player)
    t_star = scenario.resolve_t_star()
    assert t_star == pytest.approx(math.log(2.0), abs=1e-9)
    assert scenario.resolve_thresholds(t_star) == (t_star, t_star)
    assert scenario.tie_rule == "A wins ties"


def test_report_rejects_probability_outside_unit_interval():
    with pytest.raises(ValidationError):
        DecisionReport(
            t_star=1.0, mu=0, nu=0, e_S_mu=1.0, e_S_mu_minus_1=0.0, e_T_nu=1.0, e_T_nu_minus_1=0.0,
            win_prob_a=1.5, mode=ReportMode.DETERMINISTIC,
        )


def test_sim_estimate_validation():
    with pytest.raises(ValidationError):
        SimEstimate(mean=0.0, std_error=-1.0, replications=10)
    with pytest.raises(ValidationError):
        SimEstimate(mean=0.0, std_error=0.0, replications=0)
    assert SimEstimate(mean=1.0, std_error=0.1, replications=10).within(1.25)


# ----------------------------------------------------------------------
# Evaluation
# ----------------------------------------------------------------------

def test_case_study_deterministic(case_study):
    report = evaluate_deterministic(case_study)
    assert report.mode is ReportMode.DETERMINISTIC
    assert report.t_star == 17.95
    assert (report.mu, report.nu) == (3, 4)
    assert report.e_S_mu == 18.0
    assert report.e_S_mu_minus_1 == 12.0
    assert report.e_T_nu == 21.0
    assert report.e_T_nu_minus_1 == 17.0
    assert report.win_prob_a == 1.0
    assert report.ordering_holds()


def test_case_study_monte_carlo_with_deterministic_laws(case_study):
    report = simulate(case_study, replications=50, seed=3, threads=2)
    assert report.mode is ReportMode.MONTE_CARLO
    assert (report.mu, report.nu) == (3, 4)
    assert report.e_S_mu.mean == 18.0 and report.e_S_mu.std_error == 0.0
    assert report.e_T_nu.mean == 21.0
    assert report.win_prob_a.mean == 1.0
    assert report.extras["win_count_a"] == 50


@pytest.mark.parametrize("seed", [0, 99])
def test_deterministic_mode_equals_monte_carlo_values(case_study, seed):
    exact = evaluate_deterministic(case_study)
    sampled = simulate(case_study, replications=7, seed=seed, threads=3)
    for name, quantity in exact.quantities.items():
        assert sampled.quantities[name].mean == quantity


def test_results_do_not_depend_on_lanes(exponential_case_study):
    reports = [simulate(exponential_case_study, replications=2000, seed=42, threads=n) for n in (1, 2, 8)]
    first = reports[0].to_dict()
    for report in reports[1:]:
        assert report.to_dict() == first


def test_counts_are_complementary(exponential_case_study):
    report = simulate(exponential_case_study, replications=1000, seed=5, threads=4)
    extras = report.extras
    assert extras["win_count_a"] + extras["loss_count_a"] == 1000
    assert report.win_prob_a.mean == extras["win_count_a"] / 1000


def test_lane_records_satisfy_exit_inequalities(exponential_case_study):
    t_star = exponential_case_study.resolve_t_star()
    samples = run_lane(exponential_case_study, (t_star, t_star), seed=8, start=0, stop=500)
    assert np.all(samples.s_mu >= t_star) and np.all(samples.t_nu >= t_star)
    moved_a = samples.mu_index >= 1
    moved_b = samples.nu_index >= 1
    assert np.all(samples.s_pre[moved_a] < t_star)
    assert np.all(samples.t_pre[moved_b] < t_star)


def test_lane_plan_covers_every_replication():
    lanes = plan_lanes(10, threads=4)
    assert lanes[0][0] == 0 and lanes[-1][1] == 10
    assert all(a[1] == b[0] for a, b in zip(lanes, lanes[1:]))
    assert plan_lanes(2, threads=8) == [(0, 1), (1, 2)]


def test_replication_streams_are_independent_of_order():
    spec = RenewalSpec(DET(0.0), EXP(0.25))
    forward = [sample_path(spec, 10.0, replication_stream(1, i)).times for i in range(5)]
    backward = [sample_path(spec, 10.0, replication_stream(1, i)).times for i in reversed(range(5))]
    for a, b in zip(forward, reversed(backward)):
        assert np.array_equal(a, b)


def test_simulate_rejects_bad_arguments(case_study):
    with pytest.raises(ValidationError):
        simulate(case_study, replications=0)
    with pytest.raises(ValidationError):
        simulate(case_study, replications=10, seed=-1)


def test_trace_condition_confines_wins():
    curve = SuccessCurve.linear_ramp(40.0)
    spec = RenewalSpec(DET(0.0), EXP(0.25))
    player = PlayerSpec(spec, curve=curve)
    scenario = DuelScenario(player_a=player, player_b=player)
    report = simulate(scenario, replications=500, seed=1, threads=1)
    assert report.t_star == pytest.approx(20.0, abs=1e-9)
    assert report.extras["confined_prob_a"].mean == report.win_prob_a.mean


def test_single_replication_has_zero_standard_error(exponential_case_study):
    report = simulate(exponential_case_study, replications=1, seed=0, threads=1)
    assert report.e_S_mu.std_error == 0.0
    assert report.e_S_mu.replications == 1


@pytest.mark.slow
def test_identical_players_split_evenly(symmetric_exponential):
    report = simulate(symmetric_exponential, replications=100_000, seed=12345)
    assert report.win_prob_a.within(0.5)


@pytest.mark.slow
@pytest.mark.parametrize("rate", [1.0 / 6.0, 0.5, 2.0])
@pytest.mark.parametrize("t_star", [1.0, 17.95])
def test_memoryless_overshoot(rate, t_star):
    report = simulate(single_player_scenario(rate, t_star), replications=100_000, seed=12345)
    assert report.e_S_mu.within(t_star + 1.0 / rate)


@pytest.mark.slow
def test_faster_cycles_exit_earlier():
    slow = simulate(single_player_scenario(0.25, 5.0), replications=100_000, seed=1)
    fast = simulate(single_player_scenario(0.5, 5.0), replications=100_000, seed=1)
    assert fast.e_S_mu.mean < slow.e_S_mu.mean
