#!/usr/bin/python
# -*- coding: utf-8 -*-
#
# Tests for run artifacts
#
# Copyright: (c) 2024, bpmconsultag
# MIT License

import csv
import json

import numpy as np
import pytest

from witnesspy.exceptions import ScenarioIOError
from witnesspy.report import EVENT_COLUMNS, emit, event_rows, format_number, series_rows
from witnesspy.runner import ScenarioRunner
from witnesspy.scenario import load_scenario


@pytest.fixture(scope="module")
def report():
    runner = ScenarioRunner(points=120, down_sample_info=7)
    return runner.run(load_scenario("fig2"))


class TestFormatting:
    """Number formatting"""

    def test_round_trip_precision(self):
        assert float(format_number(0.1)) == 0.1
        assert format_number(1.0 / 3.0) == "0.33333333333333331"
        assert format_number(float("nan")) == ""
        assert format_number(None) == ""


class TestEmit:
    """Artifact files"""

    def test_files(self, report, tmp_path):
        paths = emit(report, tmp_path / "nested" / "fig2")
        assert set(paths) == {"series", "events", "report", "params"}
        assert all(p.exists() for p in paths.values())

    def test_series(self, report, tmp_path):
        paths = emit(report, tmp_path)
        raw = paths["series"].read_bytes()
        assert b"\r\n" not in raw
        lines = raw.decode().splitlines()
        assert lines[0] == "t,lambda1,lambda2,lambda3,D_geo,D_info"
        assert len(lines) == 121
        first = lines[1].split(",")
        assert float(first[0]) == 0.0
        assert float(first[4]) == pytest.approx(report.curves["D_geo"][0])
        # numeric information discord only on every 7th point
        assert lines[2].split(",")[5] == ""
        assert lines[-1].split(",")[5] != ""
        assert np.array([float(c) for c in lines[50].split(",")[:5]]) == pytest.approx(
            np.concatenate(([report.times[49]], report.branches[49], [report.curves["D_geo"][49]]))
        )

    def test_events(self, report, tmp_path):
        path = emit(report, tmp_path)["events"]
        assert path.read_text().splitlines()[0] == ",".join(EVENT_COLUMNS)
        with open(path, newline="") as handle:
            rows = list(csv.DictReader(handle))
        geometric = [r for r in rows if r["measure"] == "geometric"]
        assert len(geometric) == 1
        row = geometric[0]
        assert float(row["t_star"]) == pytest.approx(np.log(1.25) / 0.6, abs=1e-10)
        assert (row["sudden_change"], row["confirmed"], row["refined"]) == ("true", "true", "true")
        assert row["kind"] == "crossing"
        assert {row["branch_m"], row["branch_n"]} <= {"1", "2", "3"}
        assert float(row["jump"]) == pytest.approx(-0.048, abs=1e-5)

    def test_summary(self, report, tmp_path):
        text = emit(report, tmp_path)["report"].read_text()
        assert text.startswith("Scenario fig2 (bell-diagonal-phase-phase)")
        assert "[geometric] 1 sudden change(s), 1 crossing(s)" in text
        assert "confirmed" in text
        assert "reference: 0.3719 s" in text
        assert "coincide" in text

    def test_params_json(self, report, tmp_path):
        path = emit(report, tmp_path)["params"]
        data = json.loads(path.read_text())
        assert data["scenario"]["params"]["gamma1"] == 0.45
        assert data["points"] == 120
        assert list(data) == sorted(data)

    def test_deterministic(self, report, tmp_path):
        first = emit(report, tmp_path / "a")
        second = emit(report, tmp_path / "b")
        for kind in first:
            assert first[kind].read_bytes() == second[kind].read_bytes()

    def test_unwritable_directory(self, report, tmp_path):
        blocker = tmp_path / "file"
        blocker.write_text("not a directory")
        with pytest.raises(ScenarioIOError):
            emit(report, blocker)

    def test_csv_files_match_row_builders(self, report, tmp_path):
        paths = emit(report, tmp_path)
        for kind, rows in (("series", series_rows(report)), ("events", event_rows(report))):
            with open(paths[kind], newline="") as handle:
                assert list(csv.reader(handle)) == rows
