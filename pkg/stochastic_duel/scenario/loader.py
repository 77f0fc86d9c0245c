"""
Scenario document loading and dumping with line-anchored validation messages
"""

import json
import logging
from pathlib import Path
from typing import List, Optional, Sequence, Union

from pydantic import ValidationError as SchemaError

from .schema import CurveBlock, DistributionBlock, PlayerBlock, ScenarioFile
from ..engine import DuelScenario, PlayerSpec
from ..errors import ScenarioValidationError

logger = logging.getLogger(__name__)

DATA_DIR = Path(__file__).parent / "data"


def bundled_scenario_path(name: str = "case_study") -> Path:
    """Path of a scenario document shipped with the package"""
    path = DATA_DIR / f"{name}.json"
    if not path.exists():
        available = sorted(p.stem for p in DATA_DIR.glob("*.json"))
        raise ScenarioValidationError([f"no bundled scenario '{name}' (available: {', '.join(available)})"])
    return path


def _anchor_line(lines: Sequence[str], location: Sequence[Union[str, int]]) -> Optional[int]:
    """1-based line of the innermost key of an error location that can be found"""
    found = None
    start = 0
    for key in location:
        if isinstance(key, int):
            continue
        needle = f'"{key}"'
        for index in range(start, len(lines)):
            if needle in lines[index]:
                found, start = index, index
                break
        else:
            break
    return None if found is None else found + 1


def _messages(error: SchemaError, text: str) -> List[str]:
    lines = text.splitlines()
    messages = []
    for item in error.errors():
        location = tuple(item.get("loc", ()))
        path = ".".join(str(part) for part in location) or "<document>"
        line = _anchor_line(lines, location)
        prefix = f"line {line}: " if line is not None else ""
        messages.append(f"{prefix}{path}: {item.get('msg')}")
    return messages


def load_scenario_file(text: str) -> ScenarioFile:
    """
    Parse and validate a scenario document.

    Args:
        text: JSON scenario document

    Returns:
        Validated ScenarioFile

    Raises:
        ScenarioValidationError: syntax or schema problems, one line-anchored message each
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioValidationError([f"line {exc.lineno}, column {exc.colno}: {exc.msg}"]) from exc
    try:
        return ScenarioFile.model_validate(data)
    except SchemaError as exc:
        messages = _messages(exc, text)
        logger.error(f"Scenario rejected: {'; '.join(messages)}")
        raise ScenarioValidationError(messages) from exc


def to_duel_scenario(document: ScenarioFile) -> DuelScenario:
    def player(block: PlayerBlock) -> PlayerSpec:
        curve = block.curve.to_curve() if block.curve is not None else None
        return PlayerSpec(renewal=block.to_renewal(), curve=curve, name=block.name)

    return DuelScenario(
        player_a=player(document.player_a),
        player_b=player(document.player_b),
        t_star_override=document.t_star,
        thresholds=document.thresholds,
        apply_trace_condition=document.apply_trace_condition,
        time_unit=document.time_unit,
        name=document.name,
    )


def load_scenario(text: str) -> DuelScenario:
    """Validated DuelScenario from a scenario document"""
    return to_duel_scenario(load_scenario_file(text))


def read_scenario_file(path: Union[str, Path]) -> ScenarioFile:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise ScenarioValidationError([f"cannot read scenario file {path}: {exc}"]) from exc
    return load_scenario_file(text)


def to_scenario_file(scenario: DuelScenario, **run_options) -> ScenarioFile:
    def block(spec: PlayerSpec) -> PlayerBlock:
        return PlayerBlock(
            name=spec.name,
            curve=CurveBlock.from_curve(spec.curve) if spec.curve is not None else None,
            initial_delay=DistributionBlock.from_distribution(spec.renewal.initial_delay),
            cycle=DistributionBlock.from_distribution(spec.renewal.cycle),
        )

    return ScenarioFile(
        schema_version=1,
        name=scenario.name,
        time_unit=scenario.time_unit,
        player_a=block(scenario.player_a),
        player_b=block(scenario.player_b),
        t_star=scenario.t_star_override,
        thresholds=scenario.thresholds,
        apply_trace_condition=scenario.apply_trace_condition,
        **run_options,
    )


def dump_scenario(scenario: DuelScenario, **run_options) -> str:
    """JSON document that load_scenario turns back into an equal DuelScenario"""
    document = to_scenario_file(scenario, **run_options)
    return document.model_dump_json(indent=2, exclude_none=True) + "\n"
