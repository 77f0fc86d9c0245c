"""
Classical distance-domain duel: threshold rule and backward induction on the game tree
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Hashable, Optional, Sequence, Tuple

import networkx as nx

from ..errors import NoSolutionError, ValidationError

logger = logging.getLogger(__name__)

PLAYERS = ("A", "B")
# Differences below this count as ties; a player indifferent between shooting and waiting waits
TIE_TOLERANCE = 1e-12


@dataclass(frozen=True)
class ClassicalDuel:
    """Per-step hit probabilities; the distance shrinks as the step index grows"""

    p_a: Tuple[float, ...]
    p_b: Tuple[float, ...]
    first_mover: str = "A"

    def __post_init__(self):
        object.__setattr__(self, "p_a", tuple(float(p) for p in self.p_a))
        object.__setattr__(self, "p_b", tuple(float(p) for p in self.p_b))
        if not self.p_a or len(self.p_a) != len(self.p_b):
            raise ValidationError("p_a and p_b need the same positive number of steps")
        if self.first_mover not in PLAYERS:
            raise ValidationError(f"first_mover must be 'A' or 'B', got {self.first_mover!r}")
        for name, probs in (("p_a", self.p_a), ("p_b", self.p_b)):
            if any(not 0.0 <= p <= 1.0 for p in probs):
                raise ValidationError(f"{name} values must lie in [0, 1]")
            if any(later < earlier for earlier, later in zip(probs, probs[1:])):
                raise ValidationError(f"{name} must be nondecreasing in the step index")

    @classmethod
    def from_functions(cls, steps: int, p_a, p_b, first_mover: str = "A") -> "ClassicalDuel":
        return cls(tuple(p_a(i) for i in range(1, steps + 1)), tuple(p_b(i) for i in range(1, steps + 1)), first_mover)

    @property
    def steps(self) -> int:
        return len(self.p_a)

    def mover(self, step: int) -> str:
        """Player deciding at a 1-based step; turns alternate starting with first_mover"""
        other = "B" if self.first_mover == "A" else "A"
        return self.first_mover if step % 2 == 1 else other

    def hit(self, player: str, step: int) -> float:
        """Hit probability at a step; past the last step the shooter is at point-blank range"""
        if step > self.steps:
            return 1.0
        return (self.p_a if player == "A" else self.p_b)[step - 1]

    def with_first_mover(self, first_mover: str) -> "ClassicalDuel":
        return ClassicalDuel(self.p_a, self.p_b, first_mover)


@dataclass
class BackwardInductionSolution:
    """Subgame-perfect policy of the alternating duel"""

    first_mover: str
    policy: Dict[int, str] = field(default_factory=dict)
    win_prob_a: Dict[int, float] = field(default_factory=dict)
    first_shot_step: Optional[int] = None
    equilibrium_win_prob_a: float = 0.0


@dataclass
class ClassicalDuelSolution:
    shoot_step: int
    winner_if_both_rational: str
    backward_induction: BackwardInductionSolution
    other_turn_order: BackwardInductionSolution
    agrees: bool


def threshold_step(duel: ClassicalDuel) -> int:
    """First step with p_a + p_b >= 1"""
    for step in range(1, duel.steps + 1):
        if duel.p_a[step - 1] + duel.p_b[step - 1] >= 1.0 - TIE_TOLERANCE:
            return step
    raise NoSolutionError("p_a + p_b stays below 1 at every step")


def crossing_step(duel: ClassicalDuel) -> int:
    """First step where the mover's hit probability plus the next mover's exceeds 1"""
    for step in range(1, duel.steps + 1):
        mover = duel.mover(step)
        follower = duel.mover(step + 1)
        if duel.hit(mover, step) + duel.hit(follower, step + 1) > 1.0 + TIE_TOLERANCE:
            return step
    return duel.steps


def build_game_tree(duel: ClassicalDuel) -> nx.DiGraph:
    """Decision nodes per step with shoot/wait edges; waiting past the last step reaches point-blank range"""
    tree = nx.DiGraph()
    last = duel.steps
    for step in range(1, last + 1):
        mover = duel.mover(step)
        tree.add_node(("decide", step), mover=mover, step=step)
        tree.add_node(("shot", step), mover=mover, step=step, hit=duel.hit(mover, step))
        tree.add_edge(("decide", step), ("shot", step), action="shoot")
        following = ("decide", step + 1) if step < last else ("point_blank", last + 1)
        tree.add_edge(("decide", step), following, action="wait")
    tree.add_node(("point_blank", last + 1), mover=duel.mover(last + 1), step=last + 1, hit=1.0)
    return tree


def backward_induction(duel: ClassicalDuel) -> BackwardInductionSolution:
    """
    Solve the duel from the last step backward.

    Returns:
        Policy per step, A's win probability from each step on, and the first shot on the equilibrium path
    """
    tree = build_game_tree(duel)
    value: Dict[Hashable, float] = {}
    solution = BackwardInductionSolution(first_mover=duel.first_mover)

    for node in reversed(list(nx.topological_sort(tree))):
        kind, step = node
        attrs = tree.nodes[node]
        if kind in ("shot", "point_blank"):
            # A miss hands the duel to the opponent, who closes in and hits surely
            value[node] = attrs["hit"] if attrs["mover"] == "A" else 1.0 - attrs["hit"]
            continue
        outcomes = {tree.edges[node, child]["action"]: value[child] for child in tree.successors(node)}
        if attrs["mover"] == "A":
            shoot, wait = outcomes["shoot"], outcomes["wait"]
        else:
            shoot, wait = 1.0 - outcomes["shoot"], 1.0 - outcomes["wait"]
        action = "shoot" if shoot > wait + TIE_TOLERANCE else "wait"
        solution.policy[step] = action
        value[node] = outcomes[action]
        solution.win_prob_a[step] = value[node]

    solution.first_shot_step = next((s for s in range(1, duel.steps + 1) if solution.policy[s] == "shoot"), None)
    solution.equilibrium_win_prob_a = value[("decide", 1)]
    return solution


def classical_duel(duel: ClassicalDuel) -> ClassicalDuelSolution:
    """
    Shooting step of the classical duel and its backward-induction certificate.

    Args:
        duel: Nondecreasing per-step hit probabilities with p_a[N] + p_b[N] >= 1

    Returns:
        ClassicalDuelSolution; `agrees` is False when backward induction under either
        turn order fires at a different step than the threshold rule
    """
    if duel.p_a[-1] + duel.p_b[-1] < 1.0 - TIE_TOLERANCE:
        raise NoSolutionError(
            f"no crossing: p_a[N] + p_b[N] = {duel.p_a[-1] + duel.p_b[-1]:.6g} < 1"
        )
    step = threshold_step(duel)
    solution = backward_induction(duel)
    other_order = backward_induction(duel.with_first_mover("B" if duel.first_mover == "A" else "A"))
    agrees = solution.first_shot_step == step and other_order.first_shot_step == step
    if not agrees:
        logger.warning(
            f"Threshold rule fires at step {step} but backward induction fires at "
            f"{solution.first_shot_step} ({duel.first_mover} first) and {other_order.first_shot_step} "
            "(other order); a hit probability jumps across the crossing in one step"
        )
    winner = "A" if solution.equilibrium_win_prob_a >= 0.5 else "B"
    return ClassicalDuelSolution(
        shoot_step=step,
        winner_if_both_rational=winner,
        backward_induction=solution,
        other_turn_order=other_order,
        agrees=agrees,
    )


def parse_probabilities(text: str) -> Sequence[float]:
    """Comma-separated probabilities, as given on the command line"""
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise ValidationError(f"cannot parse probabilities from {text!r}") from exc
