#!/usr/bin/python
# -*- coding: utf-8 -*-
#
# Command-line entry point for scenario runs
#
# Copyright: (c) 2024, bpmconsultag
# MIT License

"""
Command-line entry point for scenario runs

    witnesspy --scenario fig1 --scenario fig2 --jobs 2 --out out
    witnesspy --config my_run.yaml --measures geometric,info-numeric
"""

import argparse
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from .exceptions import (
    ScenarioConfigError,
    ScenarioIOError,
    WitnessException,
    WitnessNumericalError,
)
from .report import emit
from .runner import ScenarioRunner
from .scenario import MEASURES, Scenario, load_scenario

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_IO = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def exit_code(exc: BaseException) -> int:
    if isinstance(exc, ScenarioConfigError):
        return EXIT_CONFIG
    if isinstance(exc, WitnessNumericalError):
        return EXIT_NUMERICAL
    return EXIT_IO


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="witnesspy",
        description="Locate sudden changes of quantum discord in decohering two-qubit states.",
    )
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument(
        "--scenario", action="append", metavar="NAME",
        help="built-in scenario (fig1 ... fig5); may be repeated",
    )
    source.add_argument("--config", metavar="FILE", help="YAML or JSON scenario config")
    parser.add_argument("--out", default="out", metavar="DIR", help="output directory (default: out)")
    parser.add_argument("--points", type=int, metavar="N", help="override the grid size")
    parser.add_argument(
        "--measures", metavar="LIST",
        help=f"comma-separated subset of {','.join(MEASURES)}",
    )
    parser.add_argument(
        "--refine-tol", type=float, default=1e-12, metavar="X",
        help="relative tolerance of crossing refinement (default: 1e-12)",
    )
    parser.add_argument(
        "--down-sample-info", type=int, default=5, metavar="K",
        help="evaluate the numeric information discord on every K-th point (default: 5)",
    )
    parser.add_argument(
        "--jobs", type=int, default=1, metavar="N",
        help="run scenarios in N processes (default: 1)",
    )
    parser.add_argument(
        "--log-level", default="WARNING",
        choices=("DEBUG", "INFO", "WARNING", "ERROR"),
        help="logging level (default: WARNING)",
    )
    return parser


def _measures(value: Optional[str]) -> Optional[Tuple[str, ...]]:
    if not value:
        return None
    return tuple(item.strip() for item in value.split(",") if item.strip())


def _load_sources(args) -> List[Scenario]:
    if args.config:
        try:
            text = Path(args.config).read_text(encoding="utf-8")
        except OSError as exc:
            raise ScenarioIOError(f"Cannot read config {args.config}: {exc}") from exc
        return [load_scenario(text)]
    return [load_scenario(name) for name in args.scenario]


def run_one(scenario: Scenario, out: str, options: dict) -> Tuple[str, int, str]:
    """
    Run one scenario and write its artifacts to `<out>/<name>/`.

    Top-level so it can be shipped to worker processes.

    Returns:
        (scenario name, exit code, error message)
    """
    try:
        report = ScenarioRunner(**options).run(scenario)
        emit(report, Path(out) / scenario.name)
    except WitnessException as exc:
        return scenario.name, exit_code(exc), str(exc)
    return scenario.name, EXIT_OK, ""


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=getattr(logging, args.log_level),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    options = {
        "points": args.points,
        "refine_tol": args.refine_tol,
        "down_sample_info": args.down_sample_info,
        "measures": _measures(args.measures),
    }
    try:
        # validates the run-wide options once before any work starts
        ScenarioRunner(**options)
        scenarios = _load_sources(args)
    except WitnessException as exc:
        logger.error("%s", exc)
        return exit_code(exc)
    if args.jobs < 1:
        logger.error("--jobs must be at least 1, got %d", args.jobs)
        return EXIT_CONFIG

    if args.jobs == 1 or len(scenarios) == 1:
        results = [run_one(s, args.out, options) for s in scenarios]
    else:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            futures = [pool.submit(run_one, s, args.out, options) for s in scenarios]
            results = [f.result() for f in futures]

    code = EXIT_OK
    for name, result, message in results:
        if result != EXIT_OK:
            logger.error("%s", message)
            code = code or result
        else:
            logger.info("Scenario '%s' written to %s", name, Path(args.out) / name)
    return code


if __name__ == "__main__":
    sys.exit(main())
