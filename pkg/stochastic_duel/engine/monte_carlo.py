"""
Monte Carlo and deterministic evaluation of the duel
Replications run in contiguous lanes; every replication owns the stream SeedSequence([seed, index])
"""

import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np
from tqdm import tqdm

from .exits import exit_index, iteration_count
from .types import DecisionReport, DuelScenario, ReportMode, SimEstimate
from ..config import settings
from ..errors import ValidationError
from ..renewal import sample_path

logger = logging.getLogger(__name__)


@dataclass
class LaneSamples:
    """Per-replication records of one lane, in replication order"""

    s_mu: np.ndarray
    s_pre: np.ndarray
    t_nu: np.ndarray
    t_pre: np.ndarray
    mu_index: np.ndarray
    nu_index: np.ndarray
    trace: Optional[np.ndarray] = None

    @classmethod
    def concat(cls, lanes: List["LaneSamples"]) -> "LaneSamples":
        trace = None
        if lanes[0].trace is not None:
            trace = np.concatenate([lane.trace for lane in lanes])
        return cls(
            s_mu=np.concatenate([lane.s_mu for lane in lanes]),
            s_pre=np.concatenate([lane.s_pre for lane in lanes]),
            t_nu=np.concatenate([lane.t_nu for lane in lanes]),
            t_pre=np.concatenate([lane.t_pre for lane in lanes]),
            mu_index=np.concatenate([lane.mu_index for lane in lanes]),
            nu_index=np.concatenate([lane.nu_index for lane in lanes]),
            trace=trace,
        )

    @property
    def size(self) -> int:
        return len(self.s_mu)


def replication_stream(seed: int, index: int) -> np.random.Generator:
    """Independent stream of one replication; unaffected by how lanes are split"""
    return np.random.default_rng([seed, index])


def plan_lanes(replications: int, threads: Optional[int] = None) -> List[Tuple[int, int]]:
    """Contiguous [start, stop) index ranges, one per worker thread"""
    threads = threads or settings.threads or os.cpu_count() or 1
    lanes = max(1, min(int(threads), replications))
    bounds = np.linspace(0, replications, lanes + 1).astype(int)
    return [(int(bounds[i]), int(bounds[i + 1])) for i in range(lanes) if bounds[i + 1] > bounds[i]]


def run_lane(
    scenario: DuelScenario,
    thresholds: Tuple[float, float],
    seed: int,
    start: int,
    stop: int,
) -> LaneSamples:
    """Simulate replications start..stop-1 of one scenario"""
    u, v = thresholds
    horizon = max(u, v)
    size = stop - start
    s_mu, s_pre = np.empty(size), np.empty(size)
    t_nu, t_pre = np.empty(size), np.empty(size)
    mu_index = np.empty(size, dtype=np.int64)
    nu_index = np.empty(size, dtype=np.int64)
    trace = np.empty(size, dtype=bool) if scenario.uses_trace_condition else None
    curve_a, curve_b = scenario.player_a.curve, scenario.player_b.curve

    for offset, index in enumerate(range(start, stop)):
        rng = replication_stream(seed, index)
        exit_a = exit_index(sample_path(scenario.player_a.renewal, horizon, rng), u)
        exit_b = exit_index(sample_path(scenario.player_b.renewal, horizon, rng), v)
        s_mu[offset], s_pre[offset], mu_index[offset] = exit_a.exit_time, exit_a.pre_exit_time, exit_a.index
        t_nu[offset], t_pre[offset], nu_index[offset] = exit_b.exit_time, exit_b.pre_exit_time, exit_b.index
        if trace is not None:
            trace[offset] = curve_a.eval(exit_a.exit_time) + curve_b.eval(exit_b.exit_time) >= 1.0

    logger.debug(f"Lane [{start}, {stop}) finished")
    return LaneSamples(s_mu, s_pre, t_nu, t_pre, mu_index, nu_index, trace)


def estimate(values: np.ndarray) -> SimEstimate:
    """Mean and standard error with compensated summation"""
    n = len(values)
    mean = math.fsum(values) / n
    if n == 1:
        return SimEstimate(mean=mean, std_error=0.0, replications=1)
    variance = math.fsum((values - mean) ** 2) / (n - 1)
    return SimEstimate(mean=mean, std_error=math.sqrt(variance / n), replications=n)


def simulate(
    scenario: DuelScenario,
    replications: Optional[int] = None,
    seed: Optional[int] = None,
    threads: Optional[int] = None,
    progress: Optional[bool] = None,
) -> DecisionReport:
    """
    Monte Carlo estimate of exit times, pre-exit times and A's win probability.

    Args:
        scenario: Duel definition
        replications: Number of independent replications (>= 1)
        seed: Root seed (>= 0)
        threads: Worker threads; results do not depend on it
        progress: Show a tqdm bar over lanes

    Returns:
        DecisionReport in monte-carlo mode
    """
    replications = settings.default_replications if replications is None else int(replications)
    seed = settings.default_seed if seed is None else int(seed)
    progress = settings.show_progress if progress is None else progress
    if replications < 1:
        raise ValidationError(f"replications must be >= 1, got {replications}")
    if seed < 0:
        raise ValidationError(f"seed must be >= 0, got {seed}")

    t_star = scenario.resolve_t_star()
    thresholds = scenario.resolve_thresholds(t_star)
    lanes = plan_lanes(replications, threads)
    logger.info(
        f"Simulating '{scenario.name}': {replications} replications, seed {seed}, "
        f"{len(lanes)} lanes, thresholds {thresholds}"
    )

    with ThreadPoolExecutor(max_workers=len(lanes)) as pool:
        futures = [pool.submit(run_lane, scenario, thresholds, seed, start, stop) for start, stop in lanes]
        pending = tqdm(futures, desc="lanes", unit="lane") if progress else futures
        samples = LaneSamples.concat([future.result() for future in pending])

    return summarize(scenario, t_star, thresholds, samples, ReportMode.MONTE_CARLO, seed=seed)


def evaluate_deterministic(scenario: DuelScenario) -> DecisionReport:
    """
    Exact evaluation with every law replaced by its mean.

    Returns:
        DecisionReport in deterministic mode (plain numbers, no standard errors)
    """
    exact = scenario.at_means()
    t_star = exact.resolve_t_star()
    thresholds = exact.resolve_thresholds(t_star)
    # Point-mass laws never draw from the stream
    samples = run_lane(exact, thresholds, seed=0, start=0, stop=1)
    return summarize(scenario, t_star, thresholds, samples, ReportMode.DETERMINISTIC)


def summarize(
    scenario: DuelScenario,
    t_star: float,
    thresholds: Tuple[float, float],
    samples: LaneSamples,
    mode: ReportMode,
    seed: Optional[int] = None,
) -> DecisionReport:
    """Aggregate per-replication records into a DecisionReport"""
    n = samples.size
    wins = samples.s_mu <= samples.t_nu
    win_count = int(np.count_nonzero(wins))
    tie_count = int(np.count_nonzero(samples.s_mu == samples.t_nu))
    confined = wins & samples.trace if samples.trace is not None else wins

    def quantity(values: np.ndarray):
        sim = estimate(values)
        return sim if mode is ReportMode.MONTE_CARLO else sim.mean

    columns = {
        "S_mu": samples.s_mu,
        "S_mu_minus_1": samples.s_pre,
        "T_nu": samples.t_nu,
        "T_nu_minus_1": samples.t_pre,
    }
    values = {name: quantity(column) for name, column in columns.items()}
    conditional = {}
    if win_count:
        conditional = {name: quantity(column[wins]) for name, column in columns.items()}

    # B moving at its pre-exit epoch instead of waiting for T_nu
    early = (samples.nu_index >= 1) & (samples.t_pre < samples.s_mu)
    extras: Dict[str, object] = {
        "replications": n,
        "win_count_a": win_count,
        "loss_count_a": n - win_count,
        "tie_count": tie_count,
        "confined_prob_a": quantity(confined.astype(float)),
        "early_move_win_prob_b": quantity(early.astype(float)),
        "mean_index_mu": quantity(samples.mu_index.astype(float)),
        "mean_index_nu": quantity(samples.nu_index.astype(float)),
        "tie_rule": scenario.tie_rule,
    }
    if seed is not None:
        extras["seed"] = seed
    curve_b = scenario.player_b.curve
    if curve_b is not None and np.any(samples.nu_index >= 1):
        pre_success = np.array([curve_b.eval(t) for t in samples.t_pre[samples.nu_index >= 1]])
        extras["early_move_success_prob_b"] = quantity(pre_success)

    renewal_a, renewal_b = scenario.player_a.renewal, scenario.player_b.renewal
    mean_s = math.fsum(samples.s_mu) / n
    mean_t = math.fsum(samples.t_nu) / n
    report = DecisionReport(
        t_star=t_star,
        mu=iteration_count(mean_s, renewal_a.mean_initial_delay, renewal_a.mean_cycle),
        nu=iteration_count(mean_t, renewal_b.mean_initial_delay, renewal_b.mean_cycle),
        e_S_mu=values["S_mu"],
        e_S_mu_minus_1=values["S_mu_minus_1"],
        e_T_nu=values["T_nu"],
        e_T_nu_minus_1=values["T_nu_minus_1"],
        win_prob_a=quantity(wins.astype(float)),
        mode=mode,
        conditional=conditional,
        extras=extras,
        thresholds=thresholds,
        time_unit=scenario.time_unit,
        scenario_name=scenario.name,
    )
    logger.info(
        f"{mode.value} evaluation of '{scenario.name}' done: mu={report.mu}, nu={report.nu}, "
        f"A wins {win_count}/{n}"
    )
    return report
