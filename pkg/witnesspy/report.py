#!/usr/bin/python
# -*- coding: utf-8 -*-
#
# Run artifacts: CSV series, events, summary and provenance
#
# Copyright: (c) 2024, bpmconsultag
# MIT License

"""
Run artifacts: CSV series, events, summary and provenance

Numbers are written with 17 significant digits and files use LF line
endings, so identical runs give byte-identical files.
"""

import csv
import json
import logging
import math
from pathlib import Path
from typing import Dict, List, Union

from .exceptions import ScenarioIOError
from .runner import RunReport

logger = logging.getLogger(__name__)

CURVE_COLUMNS = ("D_geo", "D_info", "D_info_closed")
EVENT_COLUMNS = (
    "measure", "t_star", "branch_m", "branch_n", "lambda_at_crossing", "kind",
    "involves_max", "sudden_change", "confirmed", "refined", "jump",
)


def format_number(value: float) -> str:
    """17 significant digits; NaN becomes an empty cell"""
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return ""
    return "%.17g" % value


def _flag(value: bool) -> str:
    return "true" if value else "false"


def series_rows(report: RunReport) -> List[List[str]]:
    columns = [name for name in CURVE_COLUMNS if name in report.curves]
    rows = [["t", "lambda1", "lambda2", "lambda3", *columns]]
    for i, t in enumerate(report.times):
        cells = [format_number(t)]
        cells += [format_number(v) for v in report.branches[i]]
        cells += [format_number(report.curves[name][i]) for name in columns]
        rows.append(cells)
    return rows


def event_rows(report: RunReport) -> List[List[str]]:
    rows = [list(EVENT_COLUMNS)]
    for reported in report.events:
        event = reported.event
        rows.append([
            reported.measure,
            format_number(event.t_star),
            str(event.branch_pair[0] + 1),
            str(event.branch_pair[1] + 1),
            format_number(event.lambda_at_crossing),
            event.kind,
            _flag(event.involves_max),
            _flag(reported.sudden_change),
            _flag(reported.confirmed),
            _flag(event.refined),
            format_number(reported.jump.jump) if reported.jump else "",
        ])
    return rows


def summary_lines(report: RunReport) -> List[str]:
    scenario = report.scenario
    units = scenario.units
    lines = [
        f"Scenario {scenario.name} ({scenario.family})",
        f"Window {scenario.window.t_start:g} .. {scenario.window.t_end:g} {units}, "
        f"{len(report.times)} points",
        f"Measures: {', '.join(report.provenance.get('measures', scenario.measures))}",
        "",
    ]
    for measure in ("geometric", "info", "info-closed-form"):
        events = [e for e in report.events if e.measure == measure]
        if not events and measure not in _measures_run(report):
            continue
        sudden = [e for e in events if e.sudden_change]
        lines.append(f"[{measure}] {len(sudden)} sudden change(s), {len(events)} crossing(s)")
        for e in sudden:
            status = "confirmed" if e.confirmed else "NOT confirmed"
            jump = f", slope jump {e.jump.jump:.6g}" if e.jump else ""
            lines.append(
                f"  t* = {e.event.t_star:.10g} {units}  branches "
                f"{e.event.branch_pair[0] + 1}-{e.event.branch_pair[1] + 1}  {status}{jump}"
            )
        for e in events:
            if not e.sudden_change:
                lines.append(
                    f"  {e.event.kind} at {e.event.t_star:.10g} {units}  branches "
                    f"{e.event.branch_pair[0] + 1}-{e.event.branch_pair[1] + 1} "
                    "(maximal branch unchanged)"
                )
        reference_key = "info-numeric" if measure == "info" else measure
        reference = scenario.references.get(reference_key)
        if reference:
            lines.append(f"  reference: {', '.join(f'{v:g}' for v in reference)} {units}")
        lines.append("")

    for c in report.coincidence():
        verdict = "coincide" if c.consistent else "differ"
        lines.append(
            f"Geometric and {c.measure} critical points {verdict} "
            f"(tolerance {c.tolerance:.3g} {units}): "
            f"[{', '.join(f'{t:.6g}' for t in c.geometric)}] vs "
            f"[{', '.join(f'{t:.6g}' for t in c.information)}]"
        )
    if scenario.placeholders:
        lines.append(
            "Documented defaults in use for: " + ", ".join(scenario.placeholders)
        )
    lines.extend(scenario.notes)
    if "D_info" in report.curves:
        lines.append(
            f"Numeric information discord evaluated on every "
            f"{report.provenance.get('down_sample_info', 1)}th grid point."
        )
    lines.append(f"witnesspy {report.provenance.get('version', '')}")
    return lines


def _measures_run(report: RunReport) -> List[str]:
    names = ["geometric"] if "D_geo" in report.curves else []
    if "D_info" in report.curves:
        names.append("info")
    if "D_info_closed" in report.curves:
        names.append("info-closed-form")
    return names


def _write(path: Path, lines: List[str]):
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write("\n".join(lines) + "\n")


def _write_csv(path: Path, rows: List[List[str]]):
    with open(path, "w", encoding="utf-8", newline="") as handle:
        csv.writer(handle, lineterminator="\n").writerows(rows)


def emit(report: RunReport, out_dir: Union[str, Path]) -> Dict[str, Path]:
    """
    Write series.csv, events.csv, report.txt and params.json.

    Args:
        report: RunReport
        out_dir: directory, created if missing

    Returns:
        file kind -> written path

    Raises:
        ScenarioIOError: If the directory or a file cannot be written
    """
    out = Path(out_dir)
    paths = {
        "series": out / "series.csv",
        "events": out / "events.csv",
        "report": out / "report.txt",
        "params": out / "params.json",
    }
    try:
        out.mkdir(parents=True, exist_ok=True)
        _write_csv(paths["series"], series_rows(report))
        _write_csv(paths["events"], event_rows(report))
        _write(paths["report"], summary_lines(report))
        _write(paths["params"], [json.dumps(report.provenance, indent=2, sort_keys=True)])
    except OSError as exc:
        raise ScenarioIOError(f"Cannot write run artifacts to {out}: {exc}") from exc
    logger.info("Wrote %s artifacts to %s", report.scenario.name, out)
    return paths
