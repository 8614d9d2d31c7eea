#!/usr/bin/python
# -*- coding: utf-8 -*-
#
# Scenario definitions and configuration loading
#
# Copyright: (c) 2024, bpmconsultag
# MIT License

"""
Scenario definitions and configuration loading

A scenario names a state family, its parameters, a time window and the
discord measures to evaluate. Five built-in scenarios reproduce the
reference figures; a config file (YAML or JSON) can define a custom one
or override fields of a built-in:

    scenario:
      name: fig4
      params:
        c0: [0.4, -0.2, 0.3]
      window: {t_start: 0, t_end: 0.5, points: 4000}
      measures: [geometric, info-numeric]
"""

import copy
import json
import logging
import re
from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional, Tuple

import numpy as np
import yaml

from .exceptions import ScenarioParseError, UnknownScenarioError
from .families import FAMILIES

logger = logging.getLogger(__name__)

MEASURES = ("geometric", "info-numeric", "info-closed-form")
SCENARIO_NAME = re.compile(r"^[A-Za-z0-9_.-]+$")


@dataclass(frozen=True)
class Window:
    """Uniform time grid from t_start to t_end with `points` samples"""

    t_start: float
    t_end: float
    points: int

    def __post_init__(self):
        if not self.t_start < self.t_end:
            raise ScenarioParseError(
                f"Window needs t_start < t_end, got ({self.t_start}, {self.t_end})",
                field="scenario.window",
            )
        if self.points < 2:
            raise ScenarioParseError(
                f"Window needs at least 2 points, got {self.points}",
                field="scenario.window.points",
            )

    def grid(self, points: Optional[int] = None) -> np.ndarray:
        return np.linspace(self.t_start, self.t_end, points or self.points)

    @property
    def span(self) -> float:
        return self.t_end - self.t_start

    def as_dict(self) -> Dict[str, Any]:
        return {"t_start": self.t_start, "t_end": self.t_end, "points": self.points}


@dataclass(frozen=True)
class Scenario:
    """
    Fully resolved scenario.

    Attributes:
        name: fig1 ... fig5 or a custom name
        family: key into `FAMILIES`
        params: family parameters
        window: time window in the family's units
        measures: measures to evaluate
        placeholders: parameters whose values are documented defaults, not reference values
        references: reference critical points per measure
        notes: free-text remarks carried into the report
    """

    name: str
    family: str
    params: Dict[str, Any]
    window: Window
    measures: Tuple[str, ...] = ("geometric", "info-numeric")
    placeholders: Tuple[str, ...] = ()
    references: Dict[str, List[float]] = field(default_factory=dict)
    notes: Tuple[str, ...] = ()

    @property
    def units(self) -> str:
        return FAMILIES[self.family].units

    def as_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "family": self.family,
            "params": copy.deepcopy(self.params),
            "window": self.window.as_dict(),
            "measures": list(self.measures),
            "units": self.units,
            "placeholders": list(self.placeholders),
            "references": copy.deepcopy(self.references),
        }


BUILTIN_SCENARIOS: Dict[str, Scenario] = {
    "fig1": Scenario(
        name="fig1",
        family="bell-diagonal-phase-bitflip",
        params={"c0": [0.12, 0.13, 0.08], "gamma1": 0.035, "gamma2": 0.015},
        window=Window(0.0, 40.0, 2000),
        references={"geometric": [5.3362, 20.2733], "info-numeric": [5.3362, 20.2733]},
        notes=("Reference plot shows the doubled geometric discord.",),
    ),
    "fig2": Scenario(
        name="fig2",
        family="bell-diagonal-phase-phase",
        params={"c0": [0.5, -0.3, 0.4], "gamma1": 0.45, "gamma2": 0.15},
        window=Window(0.0, 3.0, 2000),
        references={"geometric": [0.3719], "info-numeric": [0.3719]},
        notes=(
            "c20 is negative so that the initial state is physical; |c_i| match the reference.",
            "Reference plot shows one quarter of the information discord.",
        ),
    ),
    "fig3": Scenario(
        name="fig3",
        family="amplitude-damping",
        params={"c0": [0.5, -0.3, 0.1], "gamma_a": 1.0, "gamma_b": 1.0},
        window=Window(0.0, 3.0, 2000),
        placeholders=("c0", "gamma_a", "gamma_b"),
        references={"geometric": [0.732], "info-numeric": [0.542]},
        notes=(
            "Reference critical points were produced with unstated parameters.",
            "Reference plot shows one quarter of the information discord.",
        ),
    ),
    "fig4": Scenario(
        name="fig4",
        family="bell-diagonal-colored",
        params={
            "c0": [0.5, -0.3, 0.4],
            "a1": 2.0 / 3.0,
            "a2": 1.0 / 3.0,
            "tau1": 5.0,
            "tau2": 5.0,
        },
        window=Window(0.0, 0.5, 2000),
        placeholders=("c0",),
        references={"geometric": [0.055, 0.185, 0.317], "info-numeric": [0.055, 0.185, 0.317]},
        notes=("Reference plot shows one quarter of the information discord.",),
    ),
    "fig5": Scenario(
        name="fig5",
        family="collective",
        params={"alpha": float(np.sqrt(0.9)), "gamma": 1.0, "r12": 0.6737, "omega": 0.0},
        window=Window(0.0, 3.0, 2000),
        measures=("geometric", "info-numeric", "info-closed-form"),
        references={"geometric": [0.25, 0.89], "info-closed-form": [1.65]},
        notes=("Reference plot shows the doubled geometric discord.",),
    ),
}


def _node_lines(node, prefix: str = "") -> Dict[str, int]:
    """Map dotted field paths of a composed YAML tree to 1-based line numbers"""
    lines = {}
    if isinstance(node, yaml.MappingNode):
        for key_node, value_node in node.value:
            path = f"{prefix}.{key_node.value}" if prefix else str(key_node.value)
            lines[path] = key_node.start_mark.line + 1
            lines.update(_node_lines(value_node, path))
    elif isinstance(node, yaml.SequenceNode):
        for index, item in enumerate(node.value):
            path = f"{prefix}[{index}]"
            lines[path] = item.start_mark.line + 1
            lines.update(_node_lines(item, path))
    return lines


class _ConfigReader:
    """Typed access to a parsed config that reports field paths and lines"""

    def __init__(self, lines: Dict[str, int]):
        self.lines = lines

    def fail(self, message: str, path: str):
        raise ScenarioParseError(message, line=self.lines.get(path), field=path)

    def mapping(self, value, path: str) -> Mapping[str, Any]:
        if not isinstance(value, dict):
            self.fail(f"Expected a mapping at '{path}'", path)
        return value

    def number(self, value, path: str) -> float:
        if isinstance(value, bool):
            self.fail(f"Expected a number at '{path}', got {value!r}", path)
        try:
            return float(value)
        except (TypeError, ValueError):
            self.fail(f"Expected a number at '{path}', got {value!r}", path)

    def integer(self, value, path: str) -> int:
        number = self.number(value, path)
        if number != int(number):
            self.fail(f"Expected an integer at '{path}', got {value!r}", path)
        return int(number)

    def vector3(self, value, path: str) -> List[float]:
        if not isinstance(value, (list, tuple)) or len(value) != 3:
            self.fail(f"Expected three numbers at '{path}', got {value!r}", path)
        return [self.number(v, f"{path}[{i}]") for i, v in enumerate(value)]


def _parse_measures(reader: _ConfigReader, value, path: str) -> Tuple[str, ...]:
    if isinstance(value, str):
        value = [item.strip() for item in value.split(",") if item.strip()]
    if not isinstance(value, (list, tuple)) or not value:
        reader.fail(f"Expected a non-empty list of measures at '{path}'", path)
    for item in value:
        if item not in MEASURES:
            reader.fail(f"Unknown measure {item!r}; choose from {', '.join(MEASURES)}", path)
    return tuple(dict.fromkeys(value))


def _parse_window(reader: _ConfigReader, value, base: Optional[Window]) -> Window:
    path = "scenario.window"
    if isinstance(value, (list, tuple)):
        if len(value) != 3:
            reader.fail("Window list must be [t_start, t_end, points]", path)
        value = dict(zip(("t_start", "t_end", "points"), value))
    value = reader.mapping(value, path)
    unknown = set(value) - {"t_start", "t_end", "points"}
    if unknown:
        key = sorted(unknown)[0]
        reader.fail(f"Unknown window field '{key}'", f"{path}.{key}")
    fields = base.as_dict() if base else {}
    for key in ("t_start", "t_end", "points"):
        if key in value:
            convert = reader.integer if key == "points" else reader.number
            fields[key] = convert(value[key], f"{path}.{key}")
        elif key not in fields:
            reader.fail(f"Missing window field '{key}'", f"{path}.{key}")
    try:
        return Window(**fields)
    except ScenarioParseError as exc:
        raise ScenarioParseError(str(exc.args[0]), line=reader.lines.get(exc.field), field=exc.field) from exc


def _parse_params(reader: _ConfigReader, family: str, value, base: Dict[str, Any]) -> Dict[str, Any]:
    path = "scenario.params"
    value = reader.mapping(value if value is not None else {}, path)
    manager = FAMILIES[family]
    params = copy.deepcopy(base)
    for key, raw in value.items():
        if key not in manager.schema:
            reader.fail(f"Unknown parameter '{key}' for family '{family}'", f"{path}.{key}")
        convert = reader.vector3 if manager.schema[key] == "vector3" else reader.number
        params[key] = convert(raw, f"{path}.{key}")
    missing = [key for key in manager.schema if key not in params and key not in manager.optional]
    if missing:
        reader.fail(f"Missing parameter '{missing[0]}' for family '{family}'", f"{path}.{missing[0]}")
    return params


def _parse_config(text: str) -> Scenario:
    try:
        lines = _node_lines(yaml.compose(text, Loader=yaml.SafeLoader))
        document = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        # tab-indented JSON is valid JSON but not valid YAML
        try:
            document, lines = json.loads(text), {}
        except ValueError:
            mark = getattr(exc, "problem_mark", None)
            line = mark.line + 1 if mark is not None else None
            raise ScenarioParseError(f"Malformed config: {exc}", line=line) from exc

    reader = _ConfigReader(lines)
    if document is None:
        raise ScenarioParseError("Config is empty", field="scenario")
    if not isinstance(document, dict) or "scenario" not in document:
        reader.fail("Config needs a top-level 'scenario' object", "scenario")
    body = reader.mapping(document["scenario"], "scenario")
    known = {"name", "family", "params", "window", "measures"}
    for key in body:
        if key not in known:
            reader.fail(f"Unknown scenario field '{key}'", f"scenario.{key}")

    name = str(body.get("name", "custom"))
    base = BUILTIN_SCENARIOS.get(name)
    family = body.get("family", base.family if base else None)
    if family is None:
        reader.fail("Custom scenario needs a 'family'", "scenario.family")
    if family not in FAMILIES:
        reader.fail(
            f"Unknown family {family!r}; choose from {', '.join(FAMILIES)}", "scenario.family"
        )
    if base is not None and family != base.family:
        reader.fail(
            f"Built-in '{name}' uses family '{base.family}', not '{family}'", "scenario.family"
        )

    base_params = base.params if base else {}
    params = _parse_params(reader, family, body.get("params"), base_params)
    if "window" in body:
        window = _parse_window(reader, body["window"], base.window if base else None)
    elif base is not None:
        window = base.window
    else:
        reader.fail("Custom scenario needs a 'window'", "scenario.window")
    if "measures" in body:
        measures = _parse_measures(reader, body["measures"], "scenario.measures")
    else:
        measures = base.measures if base else ("geometric", "info-numeric")
    if "info-closed-form" in measures and not FAMILIES[family].supports_closed_form:
        reader.fail(
            f"Family '{family}' has no closed-form information discord", "scenario.measures"
        )

    overridden = set((body.get("params") or {}).keys())
    placeholders = tuple(p for p in (base.placeholders if base else ()) if p not in overridden)
    return Scenario(
        name=name,
        family=family,
        params=params,
        window=window,
        measures=measures,
        placeholders=placeholders,
        references=copy.deepcopy(base.references) if base else {},
        notes=base.notes if base else (),
    )


def load_scenario(source: str) -> Scenario:
    """
    Resolve a scenario from a built-in name or config text.

    Args:
        source: "fig1" ... "fig5", or YAML/JSON text with a `scenario` object

    Returns:
        Scenario

    Raises:
        ScenarioParseError: If the config is empty or malformed
        UnknownScenarioError: If a bare name is not a built-in scenario
    """
    text = (source or "").strip()
    if not text:
        raise ScenarioParseError("Config is empty", field="scenario")
    if SCENARIO_NAME.match(text):
        if text not in BUILTIN_SCENARIOS:
            raise UnknownScenarioError(
                f"Unknown scenario '{text}'; built-ins are {', '.join(BUILTIN_SCENARIOS)}"
            )
        scenario = copy.deepcopy(BUILTIN_SCENARIOS[text])
    else:
        scenario = _parse_config(text)

    for name in scenario.placeholders:
        logger.warning(
            "Scenario '%s' uses the documented default %s=%r; the reference leaves it unstated",
            scenario.name, name, scenario.params[name],
        )
    return scenario
