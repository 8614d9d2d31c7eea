#!/usr/bin/python
# -*- coding: utf-8 -*-
#
# Tests for the scenario runner and its family managers
#
# Copyright: (c) 2024, bpmconsultag
# MIT License

import numpy as np
import pytest
from numpy.testing import assert_allclose

import witnesspy
from witnesspy.collective import CollectiveParams, collective_state
from witnesspy.discord import geometric_discord
from witnesspy.exceptions import (
    GridTooCoarseError,
    NonPhysicalParamsError,
    ScenarioConfigError,
)
from witnesspy.families import FAMILIES
from witnesspy.report import summary_lines
from witnesspy.runner import REFINED_POINTS, ScenarioRunner
from witnesspy.scenario import Scenario, Window, load_scenario

FIG2_T_STAR = np.log(1.25) / 0.6


@pytest.fixture(scope="module")
def fig2_report():
    runner = ScenarioRunner(points=200, down_sample_info=10)
    return runner.run(load_scenario("fig2"))


class TestFamilies:
    """Family managers against the generic Pauli pipeline"""

    @pytest.mark.parametrize("name", ["fig1", "fig2", "fig4"])
    def test_bell_diagonal_shortcuts(self, name):
        scenario = load_scenario(name)
        family = FAMILIES[scenario.family]()
        model = family.resolve(scenario.params)
        u = 0.3 * scenario.window.t_end
        assert geometric_discord(family.state(model, u)) == pytest.approx(family.geometric(model, u))
        assert_allclose(
            np.sort(family.a_eigenvalues(model, u)),
            np.sort(np.linalg.eigvalsh(family.correlation(model, u))),
            atol=1e-14,
        )
        assert family.closed_form_info(model, u) == pytest.approx(family.axis_info(model, u), abs=1e-12)

    def test_colored_time_scale(self):
        scenario = load_scenario("fig4")
        family = FAMILIES["bell-diagonal-colored"]()
        model = family.resolve(scenario.params)
        assert family.time_scale(model) == 10.0
        assert_allclose(family.coefficients(model, 0.0).as_array(), [0.5, -0.3, 0.4])

    def test_collective_family(self, fig5_params):
        family = FAMILIES["collective"]()
        model = family.resolve({"alpha": fig5_params.alpha, "r12": 0.6737})
        assert model.params == fig5_params
        assert_allclose(
            family.state(model, 0.5).entries, collective_state(fig5_params, 0.5).entries
        )
        assert_allclose(family.a_eigenvalues(model, 0.0), [0.36, 0.36, 1.64], atol=1e-12)

    def test_collective_time_scale(self):
        family = FAMILIES["collective"]()
        model = family.resolve({"alpha": 0.5, "r12": 0.6737, "gamma": 4.0})
        assert family.time_scale(model) == 0.25
        reference = collective_state(CollectiveParams(0.5, 4.0, 0.6737), 0.25)
        assert_allclose(family.state(model, 1.0).entries, reference.entries)

    def test_amplitude_damping_uses_generic_pipeline(self):
        family = FAMILIES["amplitude-damping"]()
        model = family.resolve({"c0": [0.5, -0.3, 0.1], "gamma_a": 1.0, "gamma_b": 1.0})
        assert family.geometric(model, 0.0) == pytest.approx(0.25 * (0.09 + 0.01))
        assert not family.supports_closed_form
        with pytest.raises(NotImplementedError):
            family.closed_form_info(model, 0.0)

    def test_negative_rates(self):
        with pytest.raises(witnesspy.OutOfRangeError):
            FAMILIES["bell-diagonal-phase-bitflip"]().resolve(
                {"c0": [0.1, 0.1, 0.1], "gamma1": -1.0, "gamma2": 0.0}
            )


class TestScenarioRunner:
    """End-to-end runs"""

    def test_fig2_geometric_sudden_change(self, fig2_report):
        sudden = fig2_report.sudden_changes("geometric")
        assert len(sudden) == 1
        event = sudden[0]
        assert event.event.refined
        assert event.event.t_star == pytest.approx(FIG2_T_STAR, abs=1e-10)
        assert event.event.lambda_at_crossing == pytest.approx(0.16, abs=1e-9)
        assert event.confirmed
        assert event.jump.jump == pytest.approx(-0.048, abs=1e-5)

    def test_fig2_information_sudden_change(self, fig2_report):
        sudden = fig2_report.sudden_changes("info")
        assert len(sudden) == 1
        assert sudden[0].event.t_star == pytest.approx(FIG2_T_STAR, abs=1e-9)
        assert sudden[0].confirmed
        (coincidence,) = fig2_report.coincidence()
        assert coincidence.measure == "info"
        assert coincidence.consistent

    def test_curves(self, fig2_report):
        assert fig2_report.branches.shape == (200, 3)
        assert len(fig2_report.curves["D_geo"]) == 200
        info = fig2_report.curves["D_info"]
        evaluated = np.flatnonzero(~np.isnan(info))
        assert evaluated[0] == 0 and evaluated[-1] == 199
        assert len(evaluated) == 21
        assert np.all(info[evaluated] >= 0.0)

    def test_provenance(self, fig2_report):
        provenance = fig2_report.provenance
        assert provenance["version"] == witnesspy.__version__
        assert provenance["points"] == 200
        assert provenance["scenario"]["name"] == "fig2"
        assert provenance["measures"] == ["geometric", "info-numeric"]

    def test_fig1_crossings(self):
        report = ScenarioRunner(points=800, measures=["geometric"]).run(load_scenario("fig1"))
        sudden = [e.event.t_star for e in report.sudden_changes("geometric")]
        assert_allclose(sudden, [5.3362, 20.2733], atol=1e-4)
        quiet = [e for e in report.events if not e.sudden_change]
        assert len(quiet) == 1
        assert quiet[0].event.t_star == pytest.approx(13.8717, abs=1e-4)
        assert report.coincidence() == []

    def test_fig5_collective(self):
        report = ScenarioRunner(points=600, measures=["geometric", "info-closed-form"]).run(
            load_scenario("fig5")
        )
        geometric = [e.event.t_star for e in report.sudden_changes("geometric")]
        assert_allclose(geometric, [0.249, 0.888], atol=5e-3)
        closed = [e.event.t_star for e in report.sudden_changes("info-closed-form")]
        assert any(abs(t - 1.649) < 1e-2 for t in closed)
        assert "D_info_closed" in report.curves

    def test_grid_retry(self, monkeypatch):
        calls = []
        original = ScenarioRunner._run_on_grid

        def flaky(self, scenario, family, model, measures, points):
            calls.append(points)
            if len(calls) == 1:
                raise GridTooCoarseError("ambiguous", index=3)
            return original(self, scenario, family, model, measures, points)

        monkeypatch.setattr(ScenarioRunner, "_run_on_grid", flaky)
        report = ScenarioRunner(points=100, measures=["geometric"]).run(load_scenario("fig2"))
        assert calls == [100, REFINED_POINTS]
        assert report.provenance["points"] == REFINED_POINTS
        assert len(report.times) == REFINED_POINTS

    def test_numerical_errors_name_the_scenario(self):
        scenario = Scenario(
            name="broken",
            family="bell-diagonal-phase-phase",
            params={"c0": [0.9, 0.9, 0.9], "gamma1": 1.0, "gamma2": 1.0},
            window=Window(0.0, 1.0, 10),
        )
        with pytest.raises(NonPhysicalParamsError, match="Scenario 'broken'"):
            ScenarioRunner().run(scenario)

    def test_option_validation(self):
        with pytest.raises(ScenarioConfigError):
            ScenarioRunner(points=1)
        with pytest.raises(ScenarioConfigError):
            ScenarioRunner(down_sample_info=0)
        with pytest.raises(ScenarioConfigError):
            ScenarioRunner(refine_tol=0.0)
        with pytest.raises(ScenarioConfigError):
            ScenarioRunner(measures=["concurrence"])

    def test_closed_form_on_unsupported_family(self):
        runner = ScenarioRunner(measures=["info-closed-form"])
        with pytest.raises(ScenarioConfigError):
            runner.run(load_scenario("fig3"))

    def test_unknown_family(self):
        with pytest.raises(ScenarioConfigError):
            ScenarioRunner().family("three-qubit")

    def test_fig5_default_measures(self):
        report = ScenarioRunner(points=400, down_sample_info=20).run(load_scenario("fig5"))
        geometric = [e.event.t_star for e in report.sudden_changes("geometric")]
        assert_allclose(geometric, [0.25, 0.89], atol=0.02)
        closed = [e.event.t_star for e in report.sudden_changes("info-closed-form")]
        assert any(abs(t - 1.65) < 0.05 for t in closed)
        by_measure = {c.measure: c for c in report.coincidence()}
        assert not by_measure["info-closed-form"].consistent
        assert any("differ" in line for line in summary_lines(report))

    def test_fig4_colored_noise(self):
        report = ScenarioRunner(points=1000, down_sample_info=50).run(load_scenario("fig4"))
        switches = [0.05550, 0.16228, 0.33210, 0.41757]
        sudden = [e.event.t_star for e in report.sudden_changes("geometric")]
        assert len(sudden) >= 3
        assert all(0.0 < t <= 0.5 for t in sudden)
        for t in sudden:
            assert min(abs(t - s) for s in switches) < 1e-3
        (coincidence,) = report.coincidence()
        assert coincidence.measure == "info"
        assert coincidence.consistent

    def test_fig3_amplitude_damping(self):
        scenario = load_scenario("fig3")
        runner = ScenarioRunner(points=300, measures=["geometric"])
        family = runner.family(scenario.family)
        model = family.resolve(scenario.params)
        outer = [(0, 1), (0, 2), (1, 3), (2, 3)]
        for u in scenario.window.grid(2000):
            rho = family.state(model, u).entries
            assert np.min(np.linalg.eigvalsh(rho)) >= -1e-10
            assert all(abs(rho[i, j]) < 1e-12 and abs(rho[j, i]) < 1e-12 for i, j in outer)
        report = runner.run(scenario)
        assert len(report.times) == 300
        assert np.all(np.isfinite(report.curves["D_geo"]))
        assert np.all(report.curves["D_geo"] >= 0.0)


class TestSuddenChangeProperties:
    """Confirmation, smoothness away from crossings and grid independence"""

    SCENARIOS = [("fig1", 800), ("fig2", 200), ("fig5", 600)]

    @pytest.mark.parametrize("name, points", SCENARIOS)
    def test_smooth_between_crossings(self, rng, name, points):
        scenario = load_scenario(name)
        runner = ScenarioRunner(points=points, measures=["geometric"])
        report = runner.run(scenario)
        sudden = report.sudden_changes("geometric")
        assert sudden
        assert all(e.confirmed for e in sudden)

        family = runner.family(scenario.family)
        model = family.resolve(scenario.params)
        window = scenario.window
        margin = 0.05 * window.span
        crossings = [e.event.t_star for e in report.events]
        checked = 0
        while checked < 20:
            t = rng.uniform(window.t_start + margin, window.t_end - margin)
            if min(abs(t - c) for c in crossings) < margin:
                continue
            jump = ScenarioRunner._slope_jump(lambda u: family.geometric(model, u), t, scenario)
            assert not jump.discontinuous, f"slope jump {jump.jump:.3e} at {t}"
            checked += 1

    @pytest.mark.parametrize("name, points", SCENARIOS)
    def test_grid_independence(self, name, points):
        scenario = load_scenario(name)
        coarse = ScenarioRunner(points=points, measures=["geometric"]).run(scenario)
        fine = ScenarioRunner(points=2 * points - 1, measures=["geometric"]).run(scenario)
        assert len(coarse.events) == len(fine.events)
        assert [e.sudden_change for e in coarse.events] == [e.sudden_change for e in fine.events]
        for a, b in zip(coarse.events, fine.events):
            assert a.event.refined and b.event.refined
            assert a.event.t_star == pytest.approx(b.event.t_star, abs=1e-9)
