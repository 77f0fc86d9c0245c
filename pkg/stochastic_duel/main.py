"""
Command-line entry point of the Stochastic Duel Solver
Subcommands: solve, simulate, analyze, run, case-study, classic-duel, check-inversion
"""

import argparse
import json
import logging
import math
import sys
from typing import List, Optional

import mpmath

from .config import settings
from .engine import simulate
from .errors import DuelError, NumericalAccuracyError, ValidationError
from .scenario import (
    ClassicalDuel,
    FORMATS,
    bundled_scenario_path,
    classical_duel,
    emit_report,
    emit_reports,
    read_scenario_file,
    run_case_study,
    run_scenario,
    to_duel_scenario,
    write_output
)
from .scenario.classical_duel import parse_probabilities
from .transform import check_order, exit_functional, lc_forward, lc_inverse, moments
from .transform.laplace_carson import MAX_ORDER
from .transform.quadrature import QuadratureScheme
from .renewal import Distribution, RenewalSpec

logger = logging.getLogger(__name__)

COMMANDS = ["solve", "simulate", "analyze", "run", "case-study", "classic-duel", "check-inversion"]

# Closed-form Laplace-Carson pairs used by check-inversion: (name, f, F, grid, breakpoints)
_INDICATOR_LEVEL = 20.0
_PAIRS = [
    ("constant", lambda p, q: 1.0, lambda u, v: 1.0, [0.5, 1.0, 2.0], [0.5, 1.0, 2.0], ()),
    (
        "separable exponential",
        lambda p, q: math.exp(-p - q),
        lambda u, v: u * v / ((u + 1.0) * (v + 1.0)),
        [0.5, 1.0, 1.5],
        [0.5, 1.0, 1.5],
        (),
    ),
    (
        "indicator",
        lambda p, q: 1.0 if p <= _INDICATOR_LEVEL else 0.0,
        lambda u, v: -mpmath.expm1(-u * _INDICATOR_LEVEL),
        [0.25, 0.5, 1.0],
        [0.5, 1.0, 2.0],
        (_INDICATOR_LEVEL,),
    ),
]


class DuelArgumentParser(argparse.ArgumentParser):
    """Usage errors exit with the validation code instead of argparse's 2"""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(ValidationError.exit_code, f"❌ {self.prog}: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = DuelArgumentParser(
        prog="stochastic-duel",
        description="Solve two-player stochastic duel games in the time domain",
    )
    parser.add_argument("command", choices=COMMANDS, help="What to compute")
    parser.add_argument("--scenario", help="Scenario JSON document (defaults to the bundled case study)")
    parser.add_argument("--replications", type=int, help="Monte Carlo replications")
    parser.add_argument("--seed", type=int, help="Root seed of the replication streams")
    parser.add_argument("--format", choices=FORMATS, default=settings.default_format, help="Report format")
    parser.add_argument("--order", type=int, help="Gaver-Stehfest order (even, 8..20)")
    parser.add_argument("--out", help="Write the report to this file instead of stdout")
    parser.add_argument("--threads", type=int, default=settings.threads, help="Worker threads (default: all cores)")
    parser.add_argument("--progress", action="store_true", help="Show a progress bar while simulating")
    parser.add_argument("--p-a", help="classic-duel: comma-separated hit probabilities of A per step")
    parser.add_argument("--p-b", help="classic-duel: comma-separated hit probabilities of B per step")
    parser.add_argument("--first-mover", choices=["A", "B"], default="A", help="classic-duel: who moves on odd steps")
    parser.add_argument("--verbose", action="store_true", help="Debug logging")
    return parser


def _load_document(path: Optional[str]):
    return read_scenario_file(path or bundled_scenario_path())


def cmd_solve(args) -> str:
    scenario = to_duel_scenario(_load_document(args.scenario))
    t_star = scenario.resolve_t_star()
    thresholds = scenario.resolve_thresholds(t_star)
    if args.format == "json":
        return json.dumps({"t_star": t_star, "thresholds": list(thresholds)}, indent=2, sort_keys=True) + "\n"
    if args.format == "csv":
        return f"quantity,value\nt_star,{t_star!r}\n"
    source = "configured" if scenario.t_star_override is not None else "computed from the success curves"
    return f"t* = {t_star:.12g} ({source}), thresholds U = {thresholds[0]:.12g}, V = {thresholds[1]:.12g}\n"


def cmd_simulate(args) -> str:
    document = _load_document(args.scenario)
    report = simulate(
        to_duel_scenario(document),
        replications=args.replications or document.replications,
        seed=document.seed if args.seed is None else args.seed,
        threads=args.threads,
        progress=args.progress or settings.show_progress,
    )
    return emit_report(report, args.format)


def _fail_on_inversion_warning(reports, text: str, out: Optional[str]) -> str:
    """Write the report, then exit with the accuracy code when a printed-form inversion was flagged"""
    for report in reports:
        warning = (report.extras.get("printed_form") or {}).get("warning")
        if warning:
            write_output(text, out)
            raise NumericalAccuracyError(f"printed ratio form: {warning}")
    return text


def cmd_analyze(args) -> str:
    document = _load_document(args.scenario)
    report = moments(to_duel_scenario(document), order=args.order or document.order, include_printed=True)
    return _fail_on_inversion_warning([report], emit_report(report, args.format), args.out)


def cmd_run(args) -> str:
    document = _load_document(args.scenario)
    reports = run_scenario(document, replications=args.replications, seed=args.seed, threads=args.threads, order=args.order)
    return _fail_on_inversion_warning(reports, emit_reports(reports, args.format), args.out)


def cmd_case_study(args) -> str:
    return emit_report(run_case_study(), args.format)


def cmd_classic_duel(args) -> str:
    if args.p_a and args.p_b:
        duel = ClassicalDuel(tuple(parse_probabilities(args.p_a)), tuple(parse_probabilities(args.p_b)), args.first_mover)
    else:
        duel = ClassicalDuel.from_functions(10, lambda i: i / 10, lambda i: i / 10, args.first_mover)
    solution = classical_duel(duel)
    payload = {
        "shoot_step": solution.shoot_step,
        "winner_if_both_rational": solution.winner_if_both_rational,
        "backward_induction_first_shot": solution.backward_induction.first_shot_step,
        "other_turn_order_first_shot": solution.other_turn_order.first_shot_step,
        "equilibrium_win_prob_a": solution.backward_induction.equilibrium_win_prob_a,
        "agrees": solution.agrees,
        "policy": {str(step): action for step, action in sorted(solution.backward_induction.policy.items())},
    }
    if args.format == "json":
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if args.format == "csv":
        rows = ["step,p_a,p_b,mover,action"]
        for step in range(1, duel.steps + 1):
            rows.append(
                f"{step},{duel.p_a[step - 1]},{duel.p_b[step - 1]},{duel.mover(step)},"
                f"{solution.backward_induction.policy[step]}"
            )
        return "\n".join(rows) + "\n"
    mark = "✅" if solution.agrees else "⚠️"
    return (
        f"Shoot at step {solution.shoot_step} (first step with p_a + p_b >= 1)\n"
        f"Winner if both are rational: {solution.winner_if_both_rational} "
        f"(A wins with probability {solution.backward_induction.equilibrium_win_prob_a:.4g})\n"
        f"{mark} Backward induction fires at step {solution.backward_induction.first_shot_step} "
        f"({duel.first_mover} first) and {solution.other_turn_order.first_shot_step} (other order)\n"
    )


def check_inversion(order: Optional[int] = None, tolerance: float = 1e-5) -> List[dict]:
    """Invert the closed-form pairs on their grids at the highest order unless one is given"""
    order = order or MAX_ORDER
    rows = []
    for name, f, transform, p_grid, q_grid, breakpoints in _PAIRS:
        scheme = QuadratureScheme(breakpoints_p=breakpoints)
        forward_gap = abs(lc_forward(f, 1.0, 2.0, scheme) - float(transform(1.0, 2.0)))
        worst = 0.0
        for p in p_grid:
            for q in q_grid:
                result = lc_inverse(transform, p, q, order, check=False)
                exact = f(p, q)
                worst = max(worst, abs(result.value - exact) / max(abs(exact), 1e-300))
        rows.append({"pair": name, "forward_error": forward_gap, "max_relative_error": worst, "ok": worst <= tolerance})

    # Single-player exit functional: E[exp(-S_mu)] = exp(-t) * rate / (rate + 1) for Poisson epochs from 0
    spec = RenewalSpec(Distribution.deterministic(0.0), Distribution.exponential(0.5))
    result = exit_functional(spec, 2.0, 0.0, 1.0, order)
    exact = math.exp(-2.0) * 0.5 / 1.5
    error = abs(result.value - exact) / exact
    rows.append({"pair": "exit functional", "forward_error": 0.0, "max_relative_error": error, "ok": error <= tolerance})
    return rows


def cmd_check_inversion(args) -> str:
    rows = check_inversion(args.order)
    failed = [row["pair"] for row in rows if not row["ok"]]
    if args.format == "json":
        document = json.dumps(rows, indent=2, sort_keys=True) + "\n"
    elif args.format == "csv":
        document = "pair,forward_error,max_relative_error,ok\n" + "".join(
            f"{r['pair']},{r['forward_error']!r},{r['max_relative_error']!r},{r['ok']}\n" for r in rows
        )
    else:
        document = "".join(
            f"{'✅' if r['ok'] else '❌'} {r['pair']:<22} max relative error {r['max_relative_error']:.2e}, "
            f"forward error {r['forward_error']:.2e}\n"
            for r in rows
        )
    if failed:
        write_output(document, args.out)
        raise NumericalAccuracyError(f"inversion self-test failed for: {', '.join(failed)}")
    return document


_HANDLERS = {
    "solve": cmd_solve,
    "simulate": cmd_simulate,
    "analyze": cmd_analyze,
    "run": cmd_run,
    "case-study": cmd_case_study,
    "classic-duel": cmd_classic_duel,
    "check-inversion": cmd_check_inversion,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else getattr(logging, settings.log_level.upper(), logging.INFO),
        format="%(asctime)s - %(levelname)s - %(message)s",
    )
    try:
        if args.order is not None:
            check_order(args.order)
        document = _HANDLERS[args.command](args)
    except DuelError as exc:
        print(f"❌ {exc}", file=sys.stderr)
        return exc.exit_code
    write_output(document, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
