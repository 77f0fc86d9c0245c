"""
Tests for the classical distance-domain duel and its backward-induction certificate
"""

import itertools

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from stochastic_duel.errors import NoSolutionError, ValidationError
from stochastic_duel.scenario import (
    ClassicalDuel,
    backward_induction,
    build_game_tree,
    classical_duel,
    crossing_step,
    threshold_step,
)
from stochastic_duel.scenario.classical_duel import parse_probabilities


@pytest.mark.parametrize("p_a, p_b, steps, expected", [
    (lambda i: i / 10, lambda i: i / 10, 10, 5),
    (lambda i: 0.5, lambda i: 0.5, 1, 1),
    (lambda i: i / 10, lambda i: i / 20, 10, 7),
])
def test_shoot_step_examples(p_a, p_b, steps, expected):
    for first_mover in ("A", "B"):
        solution = classical_duel(ClassicalDuel.from_functions(steps, p_a, p_b, first_mover))
        assert solution.shoot_step == expected
        assert solution.backward_induction.first_shot_step == expected
        assert solution.agrees


def test_winner_of_symmetric_duel():
    solution = classical_duel(ClassicalDuel.from_functions(10, lambda i: i / 10, lambda i: i / 10))
    # A moves on step 5 and hits with probability one half
    assert solution.backward_induction.equilibrium_win_prob_a == pytest.approx(0.5)
    assert solution.winner_if_both_rational == "A"


def test_better_shot_wins():
    solution = classical_duel(ClassicalDuel.from_functions(10, lambda i: i / 20, lambda i: i / 10))
    assert solution.winner_if_both_rational == "B"


def test_no_crossing():
    with pytest.raises(NoSolutionError):
        classical_duel(ClassicalDuel.from_functions(4, lambda i: 0.1, lambda i: 0.2))


@pytest.mark.parametrize("p_a, p_b, first_mover", [
    ((0.1, 0.2), (0.1,), "A"),
    ((0.5, 0.4), (0.5, 0.6), "A"),
    ((0.5, 1.2), (0.5, 0.6), "A"),
    ((0.5, 0.6), (0.5, 0.6), "C"),
    ((), (), "A"),
])
def test_duel_validation(p_a, p_b, first_mover):
    with pytest.raises(ValidationError):
        ClassicalDuel(p_a, p_b, first_mover)


def test_game_tree_shape():
    duel = ClassicalDuel.from_functions(4, lambda i: i / 4, lambda i: i / 4)
    tree = build_game_tree(duel)
    assert nx.is_directed_acyclic_graph(tree)
    assert tree.nodes[("decide", 1)]["mover"] == "A"
    assert tree.nodes[("decide", 2)]["mover"] == "B"
    assert tree.nodes[("point_blank", 5)]["hit"] == 1.0
    assert {tree.edges[e]["action"] for e in tree.out_edges(("decide", 3))} == {"shoot", "wait"}


def test_jump_across_the_crossing_is_reported(caplog):
    # B becomes dangerous at step 2, so A already fires at step 1
    duel = ClassicalDuel((0.5, 0.5), (0.0, 0.6))
    solution = classical_duel(duel)
    assert solution.shoot_step == 2
    assert solution.backward_induction.first_shot_step == 1
    assert not solution.agrees
    assert "backward induction" in caplog.text


def linear_family():
    """p[i] = min(1, p0 + 0.1 i) for p0 on the 0.1 grid and N <= 12"""
    for steps in range(1, 13):
        for start_a, start_b in itertools.product(range(11), repeat=2):
            p_a = tuple(min(1.0, (start_a + i) / 10) for i in range(1, steps + 1))
            p_b = tuple(min(1.0, (start_b + i) / 10) for i in range(1, steps + 1))
            if p_a[-1] + p_b[-1] >= 1.0:
                yield p_a, p_b


def test_threshold_rule_equals_backward_induction_on_grid():
    checked = 0
    for p_a, p_b in linear_family():
        for first_mover in ("A", "B"):
            solution = classical_duel(ClassicalDuel(p_a, p_b, first_mover))
            assert solution.agrees, (p_a, p_b, first_mover)
            checked += 1
    assert checked > 1000


monotone = st.lists(st.integers(min_value=0, max_value=10), min_size=1, max_size=12).map(
    lambda xs: tuple(x / 10 for x in sorted(xs))
)


@given(p_a=monotone, p_b=monotone, first_mover=st.sampled_from(["A", "B"]))
def test_backward_induction_fires_at_next_step_crossing(p_a, p_b, first_mover):
    steps = min(len(p_a), len(p_b))
    duel = ClassicalDuel(p_a[:steps], p_b[:steps], first_mover)
    solution = backward_induction(duel)
    if solution.first_shot_step is None:
        assert crossing_step(duel) == duel.steps
    else:
        assert solution.first_shot_step == crossing_step(duel)
    assert 0.0 <= solution.equilibrium_win_prob_a <= 1.0


def test_threshold_step_requires_a_crossing():
    with pytest.raises(NoSolutionError):
        threshold_step(ClassicalDuel((0.1,), (0.1,)))


def test_parse_probabilities():
    assert parse_probabilities("0.1, 0.2,0.3") == [0.1, 0.2, 0.3]
    with pytest.raises(ValidationError):
        parse_probabilities("0.1,abc")
