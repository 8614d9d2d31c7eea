#!/usr/bin/python
# -*- coding: utf-8 -*-
#
# Tests for Kraus channels and decoherence laws
#
# Copyright: (c) 2024, bpmconsultag
# MIT License

import numpy as np
import pytest
from numpy.testing import assert_allclose

from witnesspy.channels import (
    ColoredNoiseParams,
    DecayParams,
    KrausChannel,
    amplitude_damping,
    apply_product_channel,
    bit_flip,
    choi_matrix,
    colored_noise_probability,
    evolve_amplitude_damping,
    evolve_bd_colored,
    evolve_bd_phase_bitflip,
    evolve_bd_phase_phase,
    identity_channel,
    markov_probability,
    phase_damping,
)
from witnesspy.exceptions import NonPhysicalParamsError, OutOfRangeError
from witnesspy.qstate import (
    BellDiagonalParams,
    bell_diagonal,
    pauli_decompose,
    random_density_matrix,
)


class TestKrausChannel:
    """Kraus operator sets"""

    @pytest.mark.parametrize("p", [0.0, 0.3, 1.0, 1.7, 2.0])
    def test_flip_channels_are_complete(self, p):
        assert phase_damping(p).is_complete()
        assert bit_flip(p).is_complete()

    @pytest.mark.parametrize("p", [0.0, 0.25, 1.0])
    def test_amplitude_damping_is_complete(self, p):
        assert amplitude_damping(p).is_complete()

    def test_incomplete_operators_rejected(self):
        with pytest.raises(NonPhysicalParamsError):
            KrausChannel((0.5 * np.eye(2),), name="lossy")
        with pytest.raises(NonPhysicalParamsError):
            KrausChannel((), name="empty")

    @pytest.mark.parametrize("factory,value", [
        (phase_damping, -0.1), (phase_damping, 2.1),
        (bit_flip, float("nan")), (amplitude_damping, 1.5),
    ])
    def test_out_of_range_probability(self, factory, value):
        with pytest.raises(OutOfRangeError):
            factory(value)

    def test_phase_damping_contracts_transverse_components(self):
        rho = np.array([[0.6, 0.2 - 0.1j], [0.2 + 0.1j, 0.4]])
        out = phase_damping(0.4).apply(rho)
        assert_allclose(out[0, 0], 0.6)
        assert_allclose(out[0, 1], 0.6 * (0.2 - 0.1j))

    def test_amplitude_damping_moves_excited_population(self):
        out = amplitude_damping(0.3).apply(np.diag([1.0, 0.0]))
        assert_allclose(out, np.diag([0.7, 0.3]), atol=1e-15)

    def test_choi_matrix_is_positive(self):
        for channel in (phase_damping(1.5), bit_flip(0.4), amplitude_damping(0.8), identity_channel()):
            choi = choi_matrix(channel)
            assert np.trace(choi).real == pytest.approx(1.0)
            assert np.min(np.linalg.eigvalsh(choi)) > -1e-12


class TestProductChannels:
    """Two-qubit channel action and the closed-form laws"""

    def test_phase_bitflip_law_matches_kraus(self, werner_like):
        p, q = 0.3, 0.55
        out = apply_product_channel(werner_like, phase_damping(p), bit_flip(q))
        T = pauli_decompose(out).T
        c0 = np.array([0.5, -0.3, 0.4])
        assert_allclose(np.diag(T), c0 * [1 - p, (1 - p) * (1 - q), 1 - q], atol=1e-14)

    def test_phase_bitflip_rates(self):
        c0 = BellDiagonalParams(0.12, 0.13, 0.08)
        c = evolve_bd_phase_bitflip(c0, 0.035, 0.015, 10.0)
        assert_allclose(
            c.as_array(),
            [0.12 * np.exp(-0.35), 0.13 * np.exp(-0.5), 0.08 * np.exp(-0.15)],
        )

    def test_phase_phase_keeps_c3(self):
        c0 = BellDiagonalParams(0.5, -0.3, 0.4)
        c = evolve_bd_phase_phase(c0, 0.45, 0.15, 2.0)
        assert c.c3 == pytest.approx(0.4)
        assert c.c1 == pytest.approx(0.5 * np.exp(-1.2))
        assert c.c2 == pytest.approx(-0.3 * np.exp(-1.2))

    def test_phase_phase_law_matches_kraus(self, werner_like):
        decay = DecayParams(0.45, 0.15, t=0.8)
        out = apply_product_channel(werner_like, phase_damping(decay.p), phase_damping(decay.q))
        law = evolve_bd_phase_phase(BellDiagonalParams(0.5, -0.3, 0.4), 0.45, 0.15, 0.8)
        assert_allclose(np.diag(pauli_decompose(out).T), law.as_array(), atol=1e-14)

    @pytest.mark.parametrize(
        "law, channels",
        [
            (evolve_bd_phase_bitflip, lambda d: (phase_damping(d.p), bit_flip(d.q))),
            (evolve_bd_phase_phase, lambda d: (phase_damping(d.p), phase_damping(d.q))),
        ],
    )
    def test_laws_match_kraus_on_random_inputs(self, rng, random_bell_diagonal, law, channels):
        for _ in range(100):
            c0 = random_bell_diagonal()
            gamma1, gamma2 = rng.uniform(0.0, 2.0, size=2)
            t = rng.uniform(0.0, 5.0)
            ch_a, ch_b = channels(DecayParams(gamma1, gamma2, t=t))
            out = apply_product_channel(bell_diagonal(c0), ch_a, ch_b)
            expected = bell_diagonal(law(c0, gamma1, gamma2, t))
            assert_allclose(out.entries, expected.entries, atol=1e-12, rtol=0)

    def test_channels_preserve_states(self, rng):
        for _ in range(10):
            rho = random_density_matrix(rng)
            out = apply_product_channel(rho, amplitude_damping(0.6), bit_flip(1.3))
            assert np.trace(out.entries).real == pytest.approx(1.0)

    def test_identity_channel_is_neutral(self, rng):
        rho = random_density_matrix(rng)
        out = apply_product_channel(rho, identity_channel(), identity_channel())
        assert_allclose(out.entries, rho.entries, atol=1e-15)

    def test_amplitude_damping_populations(self):
        rho0 = bell_diagonal(BellDiagonalParams(0.5, -0.3, 0.1))
        out = evolve_amplitude_damping(rho0, 1.0, 2.0, 0.5)
        pa, pb = 1 - np.exp(-0.5), 1 - np.exp(-1.0)
        ee0 = rho0.entries[0, 0].real
        assert out.entries[0, 0].real == pytest.approx(ee0 * (1 - pa) * (1 - pb))
        assert np.trace(out.entries).real == pytest.approx(1.0)

    def test_long_time_amplitude_damping_reaches_ground_state(self, werner_like):
        out = evolve_amplitude_damping(werner_like, 1.0, 1.0, 60.0)
        assert out.entries[3, 3].real == pytest.approx(1.0)


class TestDecayParams:
    """Markovian and colored decoherence probabilities"""

    def test_negative_rates_rejected(self):
        with pytest.raises(OutOfRangeError):
            DecayParams(-0.1, 0.2)
        with pytest.raises(OutOfRangeError):
            DecayParams(0.1, 0.2, t=-1.0)

    def test_markov_probability(self):
        assert markov_probability(0.5, 0.0) == 0.0
        assert markov_probability(0.5, 2.0) == pytest.approx(1 - np.exp(-1.0))
        assert markov_probability(1.0, 1e4) == 1.0

    def test_colored_params_validation(self):
        with pytest.raises(OutOfRangeError):
            ColoredNoiseParams(-1.0, 5.0)
        with pytest.raises(OutOfRangeError):
            ColoredNoiseParams(1.0, 0.0)

    @pytest.mark.parametrize("a", [2.0 / 3.0, 1.0 / 3.0, 0.01, 0.05])
    def test_colored_probability_starts_at_zero(self, a):
        assert colored_noise_probability(ColoredNoiseParams(a, 5.0), 0.0) == pytest.approx(0.0)

    def test_oscillatory_regime_exceeds_one(self):
        params = ColoredNoiseParams(2.0 / 3.0, 5.0)
        x = [colored_noise_probability(params, t) for t in np.linspace(0, 40, 400)]
        assert max(x) > 1.0
        assert min(x) >= 0.0 and max(x) <= 2.0

    def test_overdamped_regime_is_monotone_and_finite(self):
        params = ColoredNoiseParams(0.02, 5.0)
        x = np.array([colored_noise_probability(params, t) for t in np.linspace(0, 5e4, 200)])
        assert np.all(np.isfinite(x))
        assert np.all(np.diff(x) >= -1e-12)
        assert x[-1] <= 1.0

    def test_critical_branch_is_continuous(self):
        tau = 5.0
        critical = ColoredNoiseParams(1.0 / (4 * tau), tau)
        below = ColoredNoiseParams(1.0 / (4 * tau) * (1 - 1e-6), tau)
        above = ColoredNoiseParams(1.0 / (4 * tau) * (1 + 1e-6), tau)
        for t in (1.0, 10.0, 30.0):
            x = colored_noise_probability(critical, t)
            assert colored_noise_probability(below, t) == pytest.approx(x, abs=1e-5)
            assert colored_noise_probability(above, t) == pytest.approx(x, abs=1e-5)

    def test_colored_law(self):
        pa, pb = ColoredNoiseParams(2.0 / 3.0, 5.0), ColoredNoiseParams(1.0 / 3.0, 5.0)
        c0 = BellDiagonalParams(0.5, -0.3, 0.4)
        c = evolve_bd_colored(c0, pa, pb, 3.0)
        x1, x2 = colored_noise_probability(pa, 3.0), colored_noise_probability(pb, 3.0)
        assert_allclose(c.as_array(), [0.5 * (1 - x1), -0.3 * (1 - x1) * (1 - x2), 0.4 * (1 - x2)])
