#!/usr/bin/python
# -*- coding: utf-8 -*-
#
# Main runner for sudden-change scenarios
#
# Copyright: (c) 2024, bpmconsultag
# MIT License

"""
Main runner for sudden-change scenarios
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .discord import OptimizerOptions
from .exceptions import GridTooCoarseError, ScenarioConfigError, WitnessNumericalError
from .families import FAMILIES, BaseFamily
from .scenario import MEASURES, Scenario
from .witness import (
    DEFAULT_H_SCHEDULE,
    CrossingEvent,
    DerivativeJump,
    EigenBranchSeries,
    branch_difference,
    derivative_jump,
    detect_crossings,
    labeled_branch_difference,
    refine_event,
    scan_branches,
)

logger = logging.getLogger(__name__)

REFINED_POINTS = 8000


@dataclass(frozen=True)
class ReportedEvent:
    """
    A crossing found for one measure, with its slope check.

    Attributes:
        measure: "geometric", "info" or "info-closed-form"
        event: the crossing
        jump: slope jump of the measure's curve at the crossing
    """

    measure: str
    event: CrossingEvent
    jump: Optional[DerivativeJump] = None

    @property
    def sudden_change(self) -> bool:
        return self.event.sudden_change

    @property
    def confirmed(self) -> bool:
        return self.jump is not None and self.jump.discontinuous


@dataclass(frozen=True)
class Coincidence:
    """Geometric against information sudden changes of one run"""

    measure: str
    geometric: Tuple[float, ...]
    information: Tuple[float, ...]
    tolerance: float

    @property
    def consistent(self) -> bool:
        if len(self.geometric) != len(self.information):
            return False
        return all(
            abs(g - i) <= self.tolerance for g, i in zip(self.geometric, self.information)
        )


@dataclass
class RunReport:
    """
    Result of a scenario run.

    Attributes:
        scenario: the resolved scenario
        times: output grid
        branches: matched eigenvalue branches of A on the output grid
        curves: measure column name -> values (NaN where not evaluated)
        events: crossings of every measure
        provenance: resolved parameters and run options
    """

    scenario: Scenario
    times: np.ndarray
    branches: np.ndarray
    curves: Dict[str, np.ndarray] = field(default_factory=dict)
    events: List[ReportedEvent] = field(default_factory=list)
    provenance: Dict[str, Any] = field(default_factory=dict)

    def sudden_changes(self, measure: str) -> List[ReportedEvent]:
        return [e for e in self.events if e.measure == measure and e.sudden_change]

    def coincidence(self) -> List[Coincidence]:
        """
        Compare geometric sudden changes with each information measure.

        Times agree when they are within two grid steps.
        """
        tolerance = 2.0 * float(self.times[1] - self.times[0])
        geometric = tuple(e.event.t_star for e in self.sudden_changes("geometric"))
        results = []
        for measure in self._info_measures():
            info = tuple(e.event.t_star for e in self.sudden_changes(measure))
            results.append(Coincidence(measure, geometric, info, tolerance))
        return results

    def _info_measures(self) -> List[str]:
        names = []
        if "D_info" in self.curves:
            names.append("info")
        if "D_info_closed" in self.curves:
            names.append("info-closed-form")
        return names


class ScenarioRunner:
    """
    Main runner for sudden-change scenarios.

    Args:
        points: override of the scenario's grid size
        refine_tol: relative tolerance of crossing refinement
        down_sample_info: evaluate the numeric information discord on every k-th grid point
        measures: override of the scenario's measures
        optimizer: measurement search options for the information discord

    Example:
        >>> runner = ScenarioRunner(points=4000)
        >>> report = runner.run(load_scenario("fig2"))
        >>> [e.event.t_star for e in report.sudden_changes("geometric")]
    """

    def __init__(
        self,
        points: Optional[int] = None,
        refine_tol: float = 1e-12,
        down_sample_info: int = 5,
        measures: Optional[Sequence[str]] = None,
        optimizer: Optional[OptimizerOptions] = None,
    ):
        if points is not None and points < 2:
            raise ScenarioConfigError(f"points must be at least 2, got {points}")
        if down_sample_info < 1:
            raise ScenarioConfigError(f"down_sample_info must be >= 1, got {down_sample_info}")
        if refine_tol <= 0:
            raise ScenarioConfigError(f"refine_tol must be positive, got {refine_tol}")
        for measure in measures or ():
            if measure not in MEASURES:
                raise ScenarioConfigError(f"Unknown measure {measure!r}")
        self.points = points
        self.refine_tol = refine_tol
        self.down_sample_info = down_sample_info
        self.measures = tuple(measures) if measures else None
        self.optimizer = optimizer or OptimizerOptions()

        # Initialize family managers
        self.families: Dict[str, BaseFamily] = {
            name: family(self) for name, family in FAMILIES.items()
        }

    def family(self, name: str) -> BaseFamily:
        try:
            return self.families[name]
        except KeyError:
            raise ScenarioConfigError(f"Unknown family '{name}'") from None

    def run(self, scenario: Scenario) -> RunReport:
        """
        Evaluate a scenario and classify its sudden changes.

        The branch scan is repeated on an 8000-point grid if matching is
        ambiguous on the requested grid.

        Args:
            scenario: resolved scenario

        Returns:
            RunReport

        Raises:
            WitnessNumericalError: If a computation fails, with the scenario named
        """
        measures = self.measures or scenario.measures
        family = self.family(scenario.family)
        if "info-closed-form" in measures and not family.supports_closed_form:
            raise ScenarioConfigError(
                f"Family '{family.name}' has no closed-form information discord"
            )
        points = self.points or scenario.window.points
        logger.info(
            "Running scenario '%s' (%s) on %d points, measures %s",
            scenario.name, family.name, points, ",".join(measures),
        )
        try:
            model = family.resolve(scenario.params)
            try:
                report = self._run_on_grid(scenario, family, model, measures, points)
            except GridTooCoarseError as exc:
                if points >= REFINED_POINTS:
                    raise
                logger.warning(
                    "Scenario '%s': %s; retrying on %d points",
                    scenario.name, exc, REFINED_POINTS,
                )
                points = REFINED_POINTS
                report = self._run_on_grid(scenario, family, model, measures, points)
        except WitnessNumericalError as exc:
            if exc.args:
                exc.args = (f"Scenario '{scenario.name}': {exc.args[0]}",) + exc.args[1:]
            raise

        report.provenance = self._provenance(scenario, family, model, measures, points)
        logger.info(
            "Scenario '%s' finished: %d crossings, %d sudden changes",
            scenario.name,
            len(report.events),
            sum(e.sudden_change for e in report.events),
        )
        return report

    def _run_on_grid(self, scenario, family, model, measures, points) -> RunReport:
        times = scenario.window.grid(points)
        geometric = scan_branches(lambda u: family.a_eigenvalues(model, u), times)
        report = RunReport(scenario=scenario, times=times, branches=geometric.branches)

        if "geometric" in measures:
            report.curves["D_geo"] = np.array([family.geometric(model, u) for u in times])
            report.events.extend(self._classify(
                "geometric", scenario, geometric,
                diff_for=lambda ev: branch_difference(
                    lambda u: family.correlation(model, u), geometric, ev
                ),
                eigen_fn=lambda u: family.a_eigenvalues(model, u),
                curve=lambda u: family.geometric(model, u),
            ))

        if "info-numeric" in measures:
            report.curves["D_info"] = self._down_sampled(
                times, lambda u: family.info_numeric(model, u)
            )
            negated = lambda u: -np.asarray(family.info_axes(model, u))  # noqa: E731
            axes = scan_branches(negated, times)
            report.events.extend(self._classify(
                "info", scenario, axes,
                diff_for=lambda ev: labeled_branch_difference(negated, axes, ev),
                eigen_fn=negated,
                curve=lambda u: family.axis_info(model, u),
            ))

        if "info-closed-form" in measures:
            report.curves["D_info_closed"] = np.array(
                [family.closed_form_info(model, u) for u in times]
            )
            negated_s = lambda u: -np.asarray(family.closed_form_branches(model, u))  # noqa: E731
            s_series = scan_branches(negated_s, times)
            report.events.extend(self._classify(
                "info-closed-form", scenario, s_series,
                diff_for=lambda ev: labeled_branch_difference(negated_s, s_series, ev),
                eigen_fn=negated_s,
                curve=lambda u: family.closed_form_info(model, u),
            ))
        return report

    def _down_sampled(self, times: np.ndarray, fn: Callable[[float], float]) -> np.ndarray:
        values = np.full(len(times), np.nan)
        indices = list(range(0, len(times), self.down_sample_info))
        if indices[-1] != len(times) - 1:
            indices.append(len(times) - 1)
        for i in indices:
            values[i] = fn(times[i])
        logger.debug("Numeric information discord evaluated at %d of %d points",
                     len(indices), len(times))
        return values

    def _classify(
        self,
        measure: str,
        scenario: Scenario,
        series: EigenBranchSeries,
        diff_for: Callable[[CrossingEvent], Callable[[float], float]],
        eigen_fn: Callable[[float], Sequence[float]],
        curve: Callable[[float], float],
    ) -> List[ReportedEvent]:
        reported = []
        for event in detect_crossings(series):
            if event.kind == "crossing":
                target = event.lambda_at_crossing

                def value_at(t, target=target):
                    values = np.asarray(eigen_fn(t), dtype=float)
                    return values[int(np.argmin(np.abs(values - target)))]

                event = refine_event(event, diff_for(event), value_at, self.refine_tol)
            jump = None
            if event.sudden_change:
                jump = self._slope_jump(curve, event.t_star, scenario)
                if jump is None or not jump.discontinuous:
                    logger.warning(
                        "Scenario '%s': %s sudden change at %.10g not confirmed "
                        "(jump %.3e, noise floor %.3e)",
                        scenario.name, measure, event.t_star,
                        jump.jump if jump else float("nan"),
                        jump.noise_floor if jump else float("nan"),
                    )
            reported.append(ReportedEvent(measure, event, jump))
        return reported

    @staticmethod
    def _slope_jump(curve, t_star: float, scenario: Scenario) -> Optional[DerivativeJump]:
        window = scenario.window
        largest = DEFAULT_H_SCHEDULE[0]
        # keep every slope sample inside the window
        room = min(t_star - window.t_start, window.t_end - t_star)
        if room <= 0.0:
            return None
        scale = min(window.span, 0.5 * room / largest)
        return derivative_jump(curve, t_star, DEFAULT_H_SCHEDULE, scale)

    def _provenance(self, scenario, family, model, measures, points) -> Dict[str, Any]:
        from . import __version__

        return {
            "tool": "witnesspy",
            "version": __version__,
            "scenario": scenario.as_dict(),
            "measures": list(measures),
            "points": points,
            "units": family.units,
            "seconds_per_unit": family.time_scale(model),
            "refine_tol": self.refine_tol,
            "down_sample_info": self.down_sample_info,
            "optimizer": {
                "theta_points": self.optimizer.theta_points,
                "phi_points": self.optimizer.phi_points,
                "refine": self.optimizer.refine,
                "xatol": self.optimizer.xatol,
                "fatol": self.optimizer.fatol,
                "side": self.optimizer.side,
            },
            "info_branches": "Pauli-axis measurements",
        }
