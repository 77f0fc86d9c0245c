"""
Tests for scenario documents, the bundled case study and report emission
"""

import csv
import io
import json

import pytest

from stochastic_duel.curves import SuccessCurve
from stochastic_duel.engine import DuelScenario, PlayerSpec, ReportMode, simulate
from stochastic_duel.errors import ScenarioValidationError, ValidationError
from stochastic_duel.renewal import Distribution, RenewalSpec
from stochastic_duel.scenario import (
    bundled_scenario_path,
    dump_scenario,
    emit_report,
    emit_reports,
    load_scenario,
    load_scenario_file,
    read_scenario_file,
    run_case_study,
    run_scenario,
    write_output,
)

CURVED_DOCUMENT = """{
  "schema_version": 1,
  "player_a": {
    "curve": {"kind": "exponential-saturation", "rate": 1.0},
    "initial_delay": {"kind": "deterministic", "value": 0},
    "cycle": {"kind": "exponential", "rate": 2.0}
  },
  "player_b": {
    "curve": {"kind": "exponential-saturation", "rate": 1.0},
    "initial_delay": {"kind": "deterministic", "value": 0},
    "cycle": {"kind": "exponential", "rate": 2.0}
  }
}
"""

MONTE_CARLO_DOCUMENT = """{
  "schema_version": 1,
  "player_a": {
    "initial_delay": {"kind": "deterministic", "value": 0},
    "cycle": {"kind": "deterministic", "value": 6}
  },
  "player_b": {
    "initial_delay": {"kind": "deterministic", "value": 5},
    "cycle": {"kind": "deterministic", "value": 4}
  },
  "t_star": 17.95,
  "mode": "monte-carlo",
  "replications": 0
}
"""


def test_bundled_case_study_loads():
    scenario = load_scenario(bundled_scenario_path().read_text(encoding="utf-8"))
    assert scenario.t_star_override == 17.95
    assert scenario.player_a.renewal.initial_delay.value == 0.0
    assert scenario.player_b.renewal.initial_delay.value == 5.0
    assert scenario.player_a.renewal.mean_cycle == 6.0
    assert scenario.player_b.renewal.mean_cycle == 4.0


def test_unknown_bundled_scenario():
    with pytest.raises(ScenarioValidationError, match="case_study"):
        bundled_scenario_path("missing")


def test_unreadable_scenario_file(tmp_path):
    with pytest.raises(ScenarioValidationError, match="cannot read scenario file"):
        read_scenario_file(tmp_path / "absent.json")


def test_curves_without_t_star_compute_it():
    scenario = load_scenario(CURVED_DOCUMENT)
    assert scenario.t_star_override is None
    assert scenario.resolve_t_star() == pytest.approx(0.693147180559945, abs=1e-9)


def test_zero_replications_in_monte_carlo_mode_is_anchored():
    with pytest.raises(ScenarioValidationError) as caught:
        load_scenario_file(MONTE_CARLO_DOCUMENT)
    messages = caught.value.messages
    assert len(messages) == 1
    assert messages[0].startswith("line 13: replications")


def test_missing_t_star_without_curves():
    document = MONTE_CARLO_DOCUMENT.replace('  "t_star": 17.95,\n', "").replace('"replications": 0', '"replications": 5')
    with pytest.raises(ScenarioValidationError, match="t_star"):
        load_scenario_file(document)


@pytest.mark.parametrize("edit", [
    lambda text: text.replace('"schema_version": 1', '"schema_version": 2'),
    lambda text: text.replace('"rate": 2.0}', '"rate": -2.0}', 1),
    lambda text: text.replace('"schema_version": 1,', '"schema_version": 1, "colour": "red",'),
    lambda text: text.replace('"kind": "exponential-saturation", "rate": 1.0', '"kind": "tabulated", "knots": [[0, 0.5], [1, 0.4]]', 1),
])
def test_schema_violations(edit):
    with pytest.raises(ScenarioValidationError):
        load_scenario_file(edit(CURVED_DOCUMENT))


def test_syntax_errors_carry_line_and_column():
    with pytest.raises(ScenarioValidationError) as caught:
        load_scenario_file('{\n  "schema_version": 1,\n  oops\n}')
    assert caught.value.messages[0].startswith("line 3, column")


def test_scenario_validation_error_is_a_value_error():
    assert issubclass(ScenarioValidationError, ValueError)


def test_dump_round_trips():
    curve = SuccessCurve.tabulated([(0.0, 0.1), (4.0, 0.7), (9.0, 1.0)])
    scenario = DuelScenario(
        player_a=PlayerSpec(RenewalSpec(Distribution.deterministic(1.0), Distribution.exponential(0.3)), curve, "a"),
        player_b=PlayerSpec(
            RenewalSpec(Distribution.exponential(0.5), Distribution.deterministic(2.5)),
            SuccessCurve.logistic(3.0, 1.2),
            "b",
        ),
        thresholds=(2.0, 3.5),
        apply_trace_condition=False,
        time_unit="weeks",
        name="round trip",
    )
    assert load_scenario(dump_scenario(scenario)) == scenario


def test_payoff_knots_become_a_tabulated_curve():
    document = CURVED_DOCUMENT.replace(
        '"kind": "exponential-saturation", "rate": 1.0',
        '"kind": "tabulated", "payoffs": [[0, 0], [2, 5], [4, 10]]',
        1,
    )
    scenario = load_scenario(document)
    assert scenario.player_a.curve.eval(2.0) == pytest.approx(0.5)


# ----------------------------------------------------------------------
# Case study and runs
# ----------------------------------------------------------------------

def test_run_case_study_reproduces_decision_table():
    report = run_case_study()
    assert report.mode is ReportMode.DETERMINISTIC
    assert report.t_star == 17.95
    assert (report.mu, report.e_S_mu, report.nu, report.e_T_nu) == (3, 18.0, 4, 21.0)
    assert report.e_T_nu_minus_1 == 17.0
    assert report.win_prob_a == 1.0
    assert report.t_star < report.e_S_mu < report.e_T_nu


def test_run_case_study_is_stable():
    assert emit_report(run_case_study(), "json") == emit_report(run_case_study(), "json")


def test_run_scenario_all_modes():
    document = load_scenario_file(bundled_scenario_path("case_study_exponential").read_text(encoding="utf-8"))
    reports = run_scenario(document, replications=200, seed=1, threads=2)
    assert [r.mode for r in reports] == [ReportMode.DETERMINISTIC, ReportMode.MONTE_CARLO, ReportMode.ANALYTIC]
    assert (reports[0].mu, reports[0].nu) == (3, 4)
    assert reports[1].extras["replications"] == 200
    assert reports[2].win_prob_a == pytest.approx(0.4, rel=1e-8)


# ----------------------------------------------------------------------
# Reports
# ----------------------------------------------------------------------

def test_human_report_has_table_rows():
    text = emit_report(run_case_study(), "human")
    lines = text.splitlines()
    labels = [line.split()[0] for line in lines[2:7]]
    assert labels == ["t*", "E[mu]", "E[S_mu]", "E[nu]", "E[T_nu]"]
    assert "17.95" in lines[2]
    assert lines[4].split()[1] == "18"
    assert lines[6].split()[1] == "21"


def test_json_report_round_trips():
    report = run_case_study()
    parsed = json.loads(emit_report(report, "json"))
    assert parsed["t_star"] == report.t_star
    assert parsed["mu"] == 3 and parsed["nu"] == 4
    assert parsed["quantities"]["S_mu"]["mean"] == 18.0
    assert parsed["quantities"]["T_nu_minus_1"]["mean"] == 17.0
    assert parsed["quantities"]["S_mu"]["std_error"] is None
    assert list(parsed) == sorted(parsed)


def test_monte_carlo_csv_has_standard_errors(exponential_case_study):
    report = simulate(exponential_case_study, replications=300, seed=4, threads=1)
    rows = list(csv.DictReader(io.StringIO(emit_report(report, "csv"))))
    by_name = {row["quantity"]: row for row in rows}
    assert by_name["S_mu"]["std_error"] != ""
    assert by_name["S_mu"]["replications"] == "300"
    assert by_name["t_star"]["std_error"] == ""
    assert by_name["mu"]["mean"] == str(report.mu)


def test_deterministic_csv_leaves_standard_errors_blank():
    rows = list(csv.DictReader(io.StringIO(emit_report(run_case_study(), "csv"))))
    assert all(row["std_error"] == "" for row in rows)
    assert {row["mode"] for row in rows} == {"deterministic"}


def test_json_of_monte_carlo_extras(exponential_case_study):
    report = simulate(exponential_case_study, replications=100, seed=4, threads=1)
    parsed = json.loads(emit_report(report, "json"))
    assert parsed["extras"]["win_count_a"] + parsed["extras"]["loss_count_a"] == 100
    assert set(parsed["extras"]["confined_prob_a"]) == {"mean", "std_error", "replications"}


def test_several_reports_as_json_list(case_study):
    document = emit_reports([run_case_study(), run_case_study()], "json")
    assert len(json.loads(document)) == 2


def test_unknown_format():
    with pytest.raises(ValidationError):
        emit_report(run_case_study(), "xml")


def test_write_output_creates_parent_directories(tmp_path):
    target = tmp_path / "reports" / "case.txt"
    write_output("hello\n", target)
    assert target.read_text(encoding="utf-8") == "hello\n"
