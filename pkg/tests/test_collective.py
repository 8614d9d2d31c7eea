#!/usr/bin/python
# -*- coding: utf-8 -*-
#
# Tests for the collective-decay family
#
# Copyright: (c) 2024, bpmconsultag
# MIT License

import numpy as np
import pytest
from numpy.testing import assert_allclose

from witnesspy.collective import (
    CollectiveParams,
    bloch_scalars,
    check_x_structure,
    collective_coefficients,
    collective_eigs_A,
    collective_state,
    gamma_12,
    integrate_master_equation,
    omega_12,
)
from witnesspy.discord import correlation_matrix, symmetric_eigenvalues
from witnesspy.exceptions import DomainError, OutOfRangeError, StructureMismatchError
from witnesspy.qstate import pauli_decompose, random_density_matrix, validate


class TestCouplings:
    """Collective damping and dipole-dipole potential"""

    def test_values_at_reference_distance(self):
        kr = 2 * np.pi * 0.6737
        assert kr == pytest.approx(4.23298, abs=1e-5)
        assert gamma_12(1.0, kr) == pytest.approx(-0.335479, abs=1e-5)
        assert omega_12(1.0, kr) == pytest.approx(0.0400254, abs=1e-6)

    def test_gamma12_tends_to_gamma(self):
        assert gamma_12(2.0, 1e-3) == pytest.approx(2.0, rel=1e-5)
        assert gamma_12(2.0, 0.0, small_kr_limit=True) == 2.0

    def test_non_positive_distance(self):
        with pytest.raises(DomainError):
            gamma_12(1.0, 0.0)
        with pytest.raises(DomainError):
            omega_12(1.0, -1.0)
        with pytest.raises(DomainError):
            CollectiveParams(alpha=0.5, r12=0.0)

    def test_parameter_ranges(self):
        with pytest.raises(OutOfRangeError):
            CollectiveParams(alpha=1.2)
        with pytest.raises(OutOfRangeError):
            CollectiveParams(alpha=0.5, gamma=0.0)

    def test_amplitude_coefficients(self, fig5_params):
        coeff = collective_coefficients(fig5_params)
        assert coeff.gamma12_plus + coeff.gamma12_minus == pytest.approx(2.0)
        assert coeff.a1 == pytest.approx(0.2239, abs=1e-4)
        assert coeff.a2 == pytest.approx(0.9044, abs=1e-4)
        assert coeff.a1 * coeff.a2 == pytest.approx(0.9 ** 2 / 4)


class TestCollectiveState:
    """Analytic state and its correlation spectrum"""

    def test_initial_state(self, fig5_params):
        rho = collective_state(fig5_params, 0.0)
        assert_allclose(rho.entries, fig5_params.initial_state().entries, atol=1e-15)
        assert rho.purity() == pytest.approx(1.0)

    @pytest.mark.parametrize("t", [0.0, 0.1, 0.5, 1.0, 3.0, 10.0])
    def test_states_are_physical(self, fig5_params, t):
        rho = collective_state(fig5_params, t)
        assert validate(rho).ok
        check_x_structure(rho)

    def test_long_time_ground_state(self, fig5_params):
        rho = collective_state(fig5_params, 60.0)
        assert rho.entries[3, 3].real == pytest.approx(1.0, abs=1e-9)

    def test_eigenvalues_at_start(self, fig5_params):
        lam_plus, lam_minus, lam_zero = collective_eigs_A(collective_state(fig5_params, 0.0))
        assert lam_plus == pytest.approx(0.36)
        assert lam_minus == pytest.approx(0.36)
        assert lam_zero == pytest.approx(1.64)
        c, r = bloch_scalars(fig5_params.initial_state().entries)
        assert c == pytest.approx(1.0)
        assert r == pytest.approx(0.8)

    @pytest.mark.parametrize("t", [0.2, 0.7, 1.5])
    def test_closed_form_spectrum_matches_matrix(self, t):
        params = CollectiveParams(alpha=0.8, r12=0.4, omega=0.7)
        rho = collective_state(params, t)
        closed = np.sort(collective_eigs_A(rho))[::-1]
        numeric = symmetric_eigenvalues(correlation_matrix(pauli_decompose(rho)))
        assert_allclose(closed, numeric, atol=1e-12)

    def test_closed_form_spectrum_on_fig5_window(self, fig5_params):
        worst = 0.0
        for t in np.linspace(0.0, 3.0, 2000):
            rho = collective_state(fig5_params, t)
            closed = np.sort(collective_eigs_A(rho))[::-1]
            numeric = symmetric_eigenvalues(correlation_matrix(pauli_decompose(rho)))
            worst = max(worst, float(np.max(np.abs(closed - numeric))))
        assert worst <= 1e-10

    def test_zeeman_frequency_leaves_spectrum_unchanged(self, fig5_params):
        variants = [
            CollectiveParams(fig5_params.alpha, fig5_params.gamma, fig5_params.r12, omega=w)
            for w in (0.0, fig5_params.gamma, 10.0 * fig5_params.gamma)
        ]
        for t in np.linspace(0.0, 3.0, 2000):
            spectra = [np.array(collective_eigs_A(collective_state(p, t))) for p in variants]
            for other in spectra[1:]:
                assert_allclose(other, spectra[0], atol=1e-12, rtol=0)

    def test_rejects_general_states(self, rng):
        with pytest.raises(StructureMismatchError):
            collective_eigs_A(random_density_matrix(rng))

    def test_rejects_unequal_single_excitations(self):
        rho = np.diag([0.4, 0.3, 0.2, 0.1]).astype(complex)
        with pytest.raises(StructureMismatchError, match="rho22"):
            check_x_structure(rho)


class TestMasterEquation:
    """Numerical integration of the collective master equation"""

    def test_agrees_with_analytic_solution(self, fig5_params):
        trajectory = integrate_master_equation(fig5_params, 3.0, steps=200)
        assert len(trajectory) == 201
        assert trajectory.compare_to_analytic().within(1e-7)

    def test_zeeman_phase_convention(self):
        params = CollectiveParams(alpha=0.6, r12=0.5, omega=0.8)
        half = integrate_master_equation(params, 2.0, steps=100)
        assert half.compare_to_analytic().within(1e-7)
        literal = integrate_master_equation(params, 2.0, steps=100, zeeman_convention="full")
        comparison = literal.compare_to_analytic()
        assert comparison.rho14_deviation > 1e-3
        assert comparison.population_deviation < 1e-7

    def test_dipole_sign_does_not_change_populations(self, fig5_params):
        flipped = integrate_master_equation(fig5_params, 1.0, steps=100, omega_sign=-1)
        assert flipped.compare_to_analytic().within(1e-7)

    def test_zero_duration(self, fig5_params):
        trajectory = integrate_master_equation(fig5_params, 0.0)
        assert len(trajectory) == 1
        assert_allclose(trajectory.state(0).entries, fig5_params.initial_state().entries)

    def test_argument_checks(self, fig5_params):
        with pytest.raises(OutOfRangeError):
            integrate_master_equation(fig5_params, 1.0, steps=50)
        with pytest.raises(ValueError):
            integrate_master_equation(fig5_params, 1.0, zeeman_convention="other")
        with pytest.raises(ValueError):
            integrate_master_equation(fig5_params, 1.0, omega_sign=2)
