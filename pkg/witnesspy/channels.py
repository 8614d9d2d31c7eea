#!/usr/bin/python
# -*- coding: utf-8 -*-
#
# Single-qubit Kraus channels and Bell-diagonal evolution laws
#
# Copyright: (c) 2024, bpmconsultag
# MIT License

"""
Single-qubit Kraus channels and Bell-diagonal evolution laws

Channels act on one qubit in the |e>, |g> basis. Two-qubit evolution is
the product form sum_ij (A_i (x) B_j) rho (A_i (x) B_j)^dagger.
"""

import logging
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from .exceptions import NonPhysicalParamsError, OutOfRangeError
from .qstate import (
    IDENTITY,
    SIGMA_1,
    SIGMA_3,
    BellDiagonalParams,
    DensityMatrix,
    MatrixLike,
    as_matrix,
)

logger = logging.getLogger(__name__)

COMPLETENESS_TOL = 1e-12
CRITICAL_DAMPING_TOL = 1e-9


@dataclass(frozen=True)
class KrausChannel:
    """
    Single-qubit channel given by its Kraus operators.

    Attributes:
        operators: tuple of 2x2 complex matrices
        name: label used in logs and reports
    """

    operators: Tuple[np.ndarray, ...]
    name: str = "kraus"

    def __post_init__(self):
        ops = tuple(np.asarray(k, dtype=np.complex128) for k in self.operators)
        if not ops or any(k.shape != (2, 2) for k in ops):
            raise NonPhysicalParamsError(
                f"Channel '{self.name}' needs at least one 2x2 Kraus operator"
            )
        object.__setattr__(self, "operators", ops)
        if not self.is_complete():
            raise NonPhysicalParamsError(
                f"Kraus operators of '{self.name}' do not sum to the identity"
            )

    def is_complete(self, atol: float = COMPLETENESS_TOL) -> bool:
        """Check sum_k K_k^dagger K_k == 1 entrywise within `atol`"""
        accum = sum(k.conj().T @ k for k in self.operators)
        return bool(np.allclose(accum, IDENTITY, rtol=0.0, atol=atol))

    def apply(self, rho: np.ndarray) -> np.ndarray:
        """Act on a single-qubit 2x2 matrix"""
        rho = np.asarray(rho, dtype=np.complex128)
        return sum(k @ rho @ k.conj().T for k in self.operators)


@dataclass(frozen=True)
class DecayParams:
    """
    Markovian decoherence rates.

    Attributes:
        gamma1: rate of the A-side channel (1/s)
        gamma2: rate of the B-side channel (1/s)
        t: elapsed time (s)
    """

    gamma1: float
    gamma2: float
    t: float = 0.0

    def __post_init__(self):
        if self.gamma1 < 0 or self.gamma2 < 0:
            raise OutOfRangeError(
                f"Decay rates must be non-negative, got ({self.gamma1}, {self.gamma2})"
            )
        if self.t < 0:
            raise OutOfRangeError(f"Time must be non-negative, got {self.t}")

    @property
    def p(self) -> float:
        return markov_probability(self.gamma1, self.t)

    @property
    def q(self) -> float:
        return markov_probability(self.gamma2, self.t)


@dataclass(frozen=True)
class ColoredNoiseParams:
    """
    Random-telegraph (colored) noise of a single flip channel.

    Attributes:
        a: coin-flip amplitude (1/s)
        tau: memory time (s)
    """

    a: float
    tau: float

    def __post_init__(self):
        if self.a < 0:
            raise OutOfRangeError(f"Colored-noise amplitude must be >= 0, got {self.a}")
        if self.tau <= 0:
            raise OutOfRangeError(f"Memory time must be > 0, got {self.tau}")

    @property
    def damping_ratio(self) -> float:
        """4 a tau; oscillatory memory kernel above 1"""
        return 4.0 * self.a * self.tau

    def dimensionless_time(self, t: float) -> float:
        return t / (2.0 * self.tau)


def _check_probability(value: float, upper: float, what: str):
    if not (0.0 <= value <= upper) or np.isnan(value):
        raise OutOfRangeError(f"{what} probability must lie in [0, {upper:g}], got {value}")


def identity_channel() -> KrausChannel:
    return KrausChannel((IDENTITY,), name="identity")


def phase_damping(p: float) -> KrausChannel:
    """
    Phase damping A1 = sqrt(1 - p/2) 1, A2 = sqrt(p/2) sigma_3.

    Contracts the Bloch vector as (b1, b2, b3) -> ((1-p) b1, (1-p) b2, b3).
    The Kraus form stays a channel for p up to 2, the range colored noise
    reaches.

    Raises:
        OutOfRangeError: If p is outside [0, 2]
    """
    _check_probability(p, 2.0, "Phase damping")
    return KrausChannel(
        (np.sqrt(1.0 - p / 2.0) * IDENTITY, np.sqrt(p / 2.0) * SIGMA_3),
        name="phase_damping",
    )


def bit_flip(q: float) -> KrausChannel:
    """
    Bit flip B1 = sqrt(1 - q/2) 1, B2 = sqrt(q/2) sigma_1.

    Contracts the Bloch vector as (b1, b2, b3) -> (b1, (1-q) b2, (1-q) b3).

    Raises:
        OutOfRangeError: If q is outside [0, 2]
    """
    _check_probability(q, 2.0, "Bit flip")
    return KrausChannel(
        (np.sqrt(1.0 - q / 2.0) * IDENTITY, np.sqrt(q / 2.0) * SIGMA_1),
        name="bit_flip",
    )


def amplitude_damping(p: float) -> KrausChannel:
    """
    Amplitude damping with decay probability p from |e> to |g>.

    In the |e>, |g> order: A1 = diag(sqrt(1-p), 1), A2 = sqrt(p) |g><e|,
    so the excited population maps as rho_ee -> (1-p) rho_ee.

    Raises:
        OutOfRangeError: If p is outside [0, 1]
    """
    _check_probability(p, 1.0, "Amplitude damping")
    a1 = np.array([[np.sqrt(1.0 - p), 0.0], [0.0, 1.0]], dtype=np.complex128)
    a2 = np.array([[0.0, 0.0], [np.sqrt(p), 0.0]], dtype=np.complex128)
    return KrausChannel((a1, a2), name="amplitude_damping")


def markov_probability(gamma: float, t: float) -> float:
    """1 - exp(-gamma t), clamped to [0, 1]"""
    return float(np.clip(-np.expm1(-gamma * t), 0.0, 1.0))


def colored_noise_probability(params: ColoredNoiseParams, t: float) -> float:
    """
    Flip probability x = 1 - f(t) of a colored-noise channel.

    With v = t / (2 tau) and k = 4 a tau the memory function is

        k > 1:  f = exp(-v) [cos(mu v) + sin(mu v) / mu],    mu = sqrt(k^2 - 1)
        k < 1:  f = exp(-v) [cosh(nu v) + sinh(nu v) / nu],  nu = sqrt(1 - k^2)
        k = 1:  f = exp(-v) (1 + v)

    |f| <= 1, so x lies in [0, 2]; round-off is clamped to that range.
    """
    v = params.dimensionless_time(t)
    k = params.damping_ratio
    if abs(k - 1.0) <= CRITICAL_DAMPING_TOL:
        f = np.exp(-v) * (1.0 + v)
    elif k > 1.0:
        mu = np.sqrt(k * k - 1.0)
        f = np.exp(-v) * (np.cos(mu * v) + np.sin(mu * v) / mu)
    else:
        nu = np.sqrt(1.0 - k * k)
        # exp(-v) cosh(nu v) overflows separately for large v
        f = 0.5 * ((1.0 + 1.0 / nu) * np.exp((nu - 1.0) * v)
                   + (1.0 - 1.0 / nu) * np.exp(-(nu + 1.0) * v))
    return float(np.clip(1.0 - f, 0.0, 2.0))


def _product_operators(ch_a: KrausChannel, ch_b: KrausChannel) -> np.ndarray:
    return np.array([np.kron(a, b) for a in ch_a.operators for b in ch_b.operators])


def apply_product_channel(
    rho: MatrixLike, ch_a: KrausChannel, ch_b: KrausChannel
) -> DensityMatrix:
    """
    Apply ch_a (x) ch_b to a two-qubit state.

    Args:
        rho: input state
        ch_a: channel on subsystem A
        ch_b: channel on subsystem B

    Returns:
        DensityMatrix

    Raises:
        NonPhysicalParamsError: If the output fails validation
    """
    ops = _product_operators(ch_a, ch_b)
    matrix = as_matrix(rho)
    out = np.einsum("kij,jl,kml->im", ops, matrix, ops.conj())
    return DensityMatrix.from_array(out)


def choi_matrix(channel: KrausChannel) -> np.ndarray:
    """(channel (x) 1) applied to |Phi+><Phi+|; PSD iff the channel is CP"""
    phi = np.zeros(4, dtype=np.complex128)
    phi[0] = phi[3] = 1.0 / np.sqrt(2.0)
    projector = np.outer(phi, phi.conj())
    ops = _product_operators(channel, identity_channel())
    return np.einsum("kij,jl,kml->im", ops, projector, ops.conj())


def _decay(c0: BellDiagonalParams, rates: Sequence[float], t: float) -> BellDiagonalParams:
    factors = np.exp(-np.asarray(rates, dtype=float) * t)
    return BellDiagonalParams.from_sequence(c0.as_array() * factors)


def evolve_bd_phase_bitflip(
    c0: BellDiagonalParams, gamma1: float, gamma2: float, t: float
) -> BellDiagonalParams:
    """
    Phase damping on A and bit flip on B.

    c1 = c10 e^{-g1 t}, c2 = c20 e^{-(g1+g2) t}, c3 = c30 e^{-g2 t}
    """
    return _decay(c0, (gamma1, gamma1 + gamma2, gamma2), t)


def evolve_bd_phase_phase(
    c0: BellDiagonalParams, gamma1: float, gamma2: float, t: float
) -> BellDiagonalParams:
    """
    Phase damping on both sides.

    c1, c2 decay as e^{-(g1+g2) t}; c3 is conserved.
    """
    rate = gamma1 + gamma2
    return _decay(c0, (rate, rate, 0.0), t)


def evolve_bd_colored(
    c0: BellDiagonalParams,
    params_a: ColoredNoiseParams,
    params_b: ColoredNoiseParams,
    t: float,
) -> BellDiagonalParams:
    """
    Colored-noise phase flip on A and colored-noise bit flip on B.

    c1 = c10 (1-x1), c2 = c20 (1-x1)(1-x2), c3 = c30 (1-x2)
    """
    x1 = colored_noise_probability(params_a, t)
    x2 = colored_noise_probability(params_b, t)
    return BellDiagonalParams(
        c0.c1 * (1.0 - x1),
        c0.c2 * (1.0 - x1) * (1.0 - x2),
        c0.c3 * (1.0 - x2),
    )


def evolve_amplitude_damping(
    rho0: MatrixLike, gamma_a: float, gamma_b: float, t: float
) -> DensityMatrix:
    """Independent amplitude damping with p = 1 - e^{-gamma t} on each qubit"""
    return apply_product_channel(
        rho0,
        amplitude_damping(markov_probability(gamma_a, t)),
        amplitude_damping(markov_probability(gamma_b, t)),
    )
