"""
Report emission: human table, key-stable JSON and CSV
"""

import csv
import io
import json
import logging
from dataclasses import asdict
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import numpy as np

from ..engine import DecisionReport, ReportMode, SimEstimate, std_error_of, value_of
from ..errors import ValidationError

logger = logging.getLogger(__name__)

FORMATS = ("human", "json", "csv")

CSV_COLUMNS = ["quantity", "mean", "std_error", "replications", "mode"]

# (label, report attribute, description) in the published table's row order
_TABLE_ROWS = [
    ("t*", "t_star", "Best moment at which either player can win"),
    ("E[mu]", "mu", "Number of cycles that is best for player A"),
    ("E[S_mu]", "e_S_mu", "Best time to act for player A"),
    ("E[nu]", "nu", "Number of cycles that is best for player B"),
    ("E[T_nu]", "e_T_nu", "Best time to act for player B"),
]

_EXTRA_ROWS = [
    ("E[S_mu-1]", "e_S_mu_minus_1", "Pre-exit epoch of player A"),
    ("E[T_nu-1]", "e_T_nu_minus_1", "Pre-exit epoch of player B (earlier, riskier move)"),
    ("P(S_mu <= T_nu)", "win_prob_a", "Probability that player A acts first (ties to A)"),
]


def _format_value(quantity: Any) -> str:
    if isinstance(quantity, SimEstimate):
        return f"{quantity.mean:.6g} ± {quantity.std_error:.2g}"
    if isinstance(quantity, (int, np.integer)):
        return str(int(quantity))
    return f"{float(quantity):.6g}"


def _jsonable(value: Any) -> Any:
    if isinstance(value, SimEstimate):
        return asdict(value)
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.generic):
        return value.item()
    return value


def _human(report: DecisionReport) -> str:
    lines = [
        f"Decision making results: {report.scenario_name} ({report.mode.value}, times in {report.time_unit})",
        f"{'Parameter':<18}{'Value':<24}Description",
    ]
    for label, attribute, description in _TABLE_ROWS:
        lines.append(f"{label:<18}{_format_value(getattr(report, attribute)):<24}{description}")
    lines.append("")
    lines.append("Additional quantities")
    for label, attribute, description in _EXTRA_ROWS:
        lines.append(f"{label:<18}{_format_value(getattr(report, attribute)):<24}{description}")
    early = report.extras.get("early_move_win_prob_b")
    if early is not None:
        lines.append(f"{'P(T_nu-1 < S_mu)':<18}{_format_value(early):<24}B wins by moving at its pre-exit epoch")
    if report.conditional and report.mode is not ReportMode.ANALYTIC:
        lines.append("")
        lines.append("Conditional on S_mu <= T_nu")
        for name, quantity in report.conditional.items():
            lines.append(f"  E[{name}] = {_format_value(quantity)}")
    printed = report.extras.get("printed_form")
    if printed is not None:
        lines.append("")
        if "unavailable" in printed:
            lines.append(f"Printed ratio form: unavailable ({printed['unavailable']})")
        else:
            lines.append(
                f"Printed ratio form at zero exponents: {printed['value']:.6g} "
                f"(differs from P(S_mu <= T_nu) by {printed['discrepancy']:+.3g})"
            )
    for warning in report.warnings:
        lines.append(f"⚠️  {warning}")
    return "\n".join(lines) + "\n"


def _csv(report: DecisionReport) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    rows: List[Dict[str, Any]] = [
        {"quantity": "t_star", "mean": report.t_star},
        {"quantity": "mu", "mean": report.mu},
        {"quantity": "nu", "mean": report.nu},
    ]
    for name, quantity in report.quantities.items():
        sim = quantity if isinstance(quantity, SimEstimate) else None
        rows.append(
            {
                "quantity": name,
                "mean": value_of(quantity),
                "std_error": std_error_of(quantity),
                "replications": sim.replications if sim else None,
            }
        )
    for row in rows:
        row["mode"] = report.mode.value
        writer.writerow({key: ("" if row.get(key) is None else row.get(key)) for key in CSV_COLUMNS})
    return buffer.getvalue()


def emit_report(report: DecisionReport, format: str = "human") -> str:
    """
    Render a report.

    Args:
        report: Report to render
        format: human (table rows), json (sorted keys) or csv (one row per quantity)

    Returns:
        The rendered document
    """
    if format == "human":
        return _human(report)
    if format == "json":
        return json.dumps(_jsonable(report.to_dict()), indent=2, sort_keys=True) + "\n"
    if format == "csv":
        return _csv(report)
    raise ValidationError(f"unknown report format {format!r}; choose one of {', '.join(FORMATS)}")


def emit_reports(reports: List[DecisionReport], format: str = "human") -> str:
    """Several reports in one document (a JSON list for json output)"""
    if format == "json" and len(reports) != 1:
        payload = [_jsonable(report.to_dict()) for report in reports]
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
    return "\n".join(emit_report(report, format) for report in reports)


def write_output(document: str, out: Optional[Union[str, Path]] = None) -> None:
    """Print a document or write it to a file"""
    if out is None:
        print(document, end="")
        return
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(document, encoding="utf-8")
    logger.info(f"Report written to {path}")
