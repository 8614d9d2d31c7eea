#!/usr/bin/python
# -*- coding: utf-8 -*-
#
# Two atoms decaying into a common vacuum field
#
# Copyright: (c) 2024, bpmconsultag
# MIT License

"""
Two atoms decaying into a common vacuum field

The atoms start in alpha |ee> + sqrt(1 - alpha^2) |gg> and share a
collective damping gamma_12 and a dipole-dipole potential Omega_12 that
depend on their separation r12, measured in wavelengths.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy.integrate import solve_ivp

from .exceptions import (
    DegenerateCouplingError,
    DomainError,
    OutOfRangeError,
    StepSizeTooLargeError,
    StructureMismatchError,
)
from .qstate import IDENTITY, DensityMatrix, MatrixLike, as_matrix

logger = logging.getLogger(__name__)

DEGENERATE_RATE_TOL = 1e-14
STRUCTURE_TOL = 1e-10
TRACE_DRIFT_TOL = 1e-8
ZEEMAN_CONVENTIONS = ("half", "full")

# sigma^- = |g><e| in the |e>, |g> order
SIGMA_MINUS = np.array([[0, 0], [1, 0]], dtype=np.complex128)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)


@dataclass(frozen=True)
class CollectiveParams:
    """
    Parameters of the collective-decay family.

    Attributes:
        alpha: amplitude of |ee> in the initial state, in [0, 1]
        gamma: single-atom spontaneous emission rate (1/s)
        r12: interatomic distance in units of the wavelength
        omega: atomic transition frequency (1/s)
    """

    alpha: float
    gamma: float = 1.0
    r12: float = 0.6737
    omega: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise OutOfRangeError(f"alpha must lie in [0, 1], got {self.alpha}")
        if self.gamma <= 0:
            raise OutOfRangeError(f"gamma must be positive, got {self.gamma}")
        if self.r12 <= 0:
            raise DomainError(f"Interatomic distance must be positive, got {self.r12}")

    @property
    def kr(self) -> float:
        """Wave vector times distance, 2 pi r12 / lambda"""
        return 2.0 * np.pi * self.r12

    def initial_state(self) -> DensityMatrix:
        psi = np.zeros(4, dtype=np.complex128)
        psi[0] = self.alpha
        psi[3] = np.sqrt(1.0 - self.alpha ** 2)
        return DensityMatrix.from_array(np.outer(psi, psi.conj()))


@dataclass(frozen=True)
class CollectiveCoefficients:
    """
    Derived collective rates.

    Attributes:
        gamma12: collective damping (1/s)
        omega12: dipole-dipole potential (1/s)
        gamma12_plus: gamma + gamma12
        gamma12_minus: gamma - gamma12
        a1: alpha^2 gamma12_plus / (2 gamma12_minus)
        a2: alpha^2 gamma12_minus / (2 gamma12_plus)
    """

    gamma12: float
    omega12: float
    gamma12_plus: float
    gamma12_minus: float
    a1: float
    a2: float


def _check_kr(kr: float):
    if kr <= 0:
        raise DomainError(f"Collective couplings need kr > 0, got {kr}")


def gamma_12(gamma: float, kr: float, small_kr_limit: bool = False) -> float:
    """
    Collective damping (3 gamma / 2) [sin x / x + cos x / x^2 - sin x / x^3], x = kr.

    Args:
        gamma: single-atom rate
        kr: wave vector times distance
        small_kr_limit: return the kr -> 0 limit gamma at kr = 0 instead of raising

    Raises:
        DomainError: If kr <= 0 and the limit was not requested
    """
    if kr == 0 and small_kr_limit:
        return float(gamma)
    _check_kr(kr)
    s, c = np.sin(kr), np.cos(kr)
    return float(1.5 * gamma * (s / kr + c / kr ** 2 - s / kr ** 3))


def omega_12(gamma: float, kr: float) -> float:
    """
    Dipole-dipole potential (3 gamma / 4) [sin x / x^2 + cos x / x^3 - cos x / x], x = kr.

    Raises:
        DomainError: If kr <= 0
    """
    _check_kr(kr)
    s, c = np.sin(kr), np.cos(kr)
    return float(0.75 * gamma * (s / kr ** 2 + c / kr ** 3 - c / kr))


def collective_coefficients(params: CollectiveParams) -> CollectiveCoefficients:
    """
    Rates and amplitude coefficients of the analytic solution.

    Raises:
        DegenerateCouplingError: If gamma +- gamma12 vanishes
    """
    g12 = gamma_12(params.gamma, params.kr)
    o12 = omega_12(params.gamma, params.kr)
    plus = params.gamma + g12
    minus = params.gamma - g12
    if abs(plus) < DEGENERATE_RATE_TOL or abs(minus) < DEGENERATE_RATE_TOL:
        raise DegenerateCouplingError(
            f"Collective rates ({plus:.3e}, {minus:.3e}) are degenerate at kr={params.kr}"
        )
    alpha2 = params.alpha ** 2
    return CollectiveCoefficients(
        gamma12=g12,
        omega12=o12,
        gamma12_plus=plus,
        gamma12_minus=minus,
        a1=alpha2 * plus / (2.0 * minus),
        a2=alpha2 * minus / (2.0 * plus),
    )


def collective_state(
    params: CollectiveParams,
    t: float,
    coefficients: Optional[CollectiveCoefficients] = None,
) -> DensityMatrix:
    """
    Analytic state of the two atoms at time t.

    The singly excited populations are fed by the doubly excited one,
    which decays as e^{-2 gamma t}:

        rho11 = alpha^2 e^{-2 gamma t}
        rho14 = alpha sqrt(1 - alpha^2) e^{-(gamma + 2 i omega) t}
        rho22 = rho33 = a1 [e^{-g+ t} - e^{-2 gamma t}] + a2 [e^{-g- t} - e^{-2 gamma t}]
        rho23 = rho32 = a1 [e^{-g+ t} - e^{-2 gamma t}] - a2 [e^{-g- t} - e^{-2 gamma t}]
        rho44 = 1 - rho11 - rho22 - rho33

    Args:
        params: family parameters
        t: time (s)
        coefficients: precomputed `collective_coefficients(params)`

    Returns:
        DensityMatrix
    """
    coeff = coefficients or collective_coefficients(params)
    gamma = params.gamma
    alpha = params.alpha
    double = np.exp(-2.0 * gamma * t)
    sym = coeff.a1 * (np.exp(-coeff.gamma12_plus * t) - double)
    anti = coeff.a2 * (np.exp(-coeff.gamma12_minus * t) - double)

    rho11 = alpha ** 2 * double
    rho22 = sym + anti
    rho23 = sym - anti
    rho14 = alpha * np.sqrt(1.0 - alpha ** 2) * np.exp(-(gamma + 2j * params.omega) * t)

    matrix = np.zeros((4, 4), dtype=np.complex128)
    matrix[0, 0] = rho11
    matrix[1, 1] = matrix[2, 2] = rho22
    matrix[1, 2] = matrix[2, 1] = rho23
    matrix[0, 3] = rho14
    matrix[3, 0] = np.conj(rho14)
    matrix[3, 3] = 1.0 - rho11 - 2.0 * rho22
    return DensityMatrix.from_array(matrix)


def check_x_structure(rho: MatrixLike) -> np.ndarray:
    """
    Return the matrix if it is an X state with rho22 = rho33.

    Raises:
        StructureMismatchError: If it is not
    """
    matrix = as_matrix(rho)
    mask = np.ones((4, 4), dtype=bool)
    for i, j in ((0, 0), (1, 1), (2, 2), (3, 3), (0, 3), (3, 0), (1, 2), (2, 1)):
        mask[i, j] = False
    stray = float(np.max(np.abs(matrix[mask])))
    if stray > STRUCTURE_TOL:
        raise StructureMismatchError(f"State is not X-shaped, stray entry {stray:.3e}")
    gap = abs(matrix[1, 1] - matrix[2, 2])
    if gap > STRUCTURE_TOL:
        raise StructureMismatchError(f"rho22 and rho33 differ by {gap:.3e}")
    if abs(matrix[1, 2].imag) > STRUCTURE_TOL:
        raise StructureMismatchError(f"rho23 is not real: {matrix[1, 2]}")
    return matrix


def bloch_scalars(matrix: np.ndarray) -> Tuple[float, float]:
    """C = 1 - 4 rho22 and R = 2 rho11 + 2 rho22 - 1"""
    rho11 = matrix[0, 0].real
    rho22 = matrix[1, 1].real
    return 1.0 - 4.0 * rho22, 2.0 * rho11 + 2.0 * rho22 - 1.0


def collective_eigs_A(rho: MatrixLike) -> Tuple[float, float, float]:
    """
    Closed-form spectrum (lambda_+, lambda_-, lambda_0) of the correlation matrix.

    lambda_+- = 4 (rho23 -+ |rho14|)^2 and lambda_0 = C^2 + R^2.

    Raises:
        StructureMismatchError: If the state lacks the collective X structure
    """
    matrix = check_x_structure(rho)
    c, r = bloch_scalars(matrix)
    rho23 = matrix[1, 2].real
    coherence = abs(matrix[0, 3])
    return (
        4.0 * (rho23 - coherence) ** 2,
        4.0 * (rho23 + coherence) ** 2,
        c * c + r * r,
    )


@dataclass(frozen=True)
class AnalyticComparison:
    """Largest deviations of an integrated trajectory from the analytic state"""

    population_deviation: float
    coherence_deviation: float
    rho14_deviation: float

    def within(self, tol: float) -> bool:
        return max(self.population_deviation, self.coherence_deviation, self.rho14_deviation) <= tol


@dataclass
class MasterEquationTrajectory:
    """
    States produced by `integrate_master_equation`.

    Attributes:
        params: family parameters
        times: output times
        states: array of shape (n, 4, 4)
        zeeman_convention: "half" or "full"
        omega_sign: sign applied to Omega_12
    """

    params: CollectiveParams
    times: np.ndarray
    states: np.ndarray
    zeeman_convention: str = "half"
    omega_sign: int = 1

    def __len__(self):
        return len(self.times)

    def state(self, index: int) -> DensityMatrix:
        return DensityMatrix.from_array(self.states[index])

    def compare_to_analytic(self) -> AnalyticComparison:
        """
        Compare each output state with `collective_state` at the same time.

        Populations are rho11, rho22 + rho33 and rho44; coherences are rho23
        and rho14. Deviations are reported, never corrected.
        """
        coeff = collective_coefficients(self.params)
        pops = coh = phase = 0.0
        for t, rho in zip(self.times, self.states):
            ref = collective_state(self.params, float(t), coeff).entries
            got = (rho[0, 0], rho[1, 1] + rho[2, 2], rho[3, 3])
            want = (ref[0, 0], ref[1, 1] + ref[2, 2], ref[3, 3])
            pops = max(pops, max(abs(g - w) for g, w in zip(got, want)))
            coh = max(coh, abs(rho[1, 2] - ref[1, 2]))
            phase = max(phase, abs(rho[0, 3] - ref[0, 3]))
        comparison = AnalyticComparison(float(pops), float(coh), float(phase))
        if not comparison.within(1e-6):
            logger.warning(
                "Master equation (%s convention, omega sign %+d) departs from the "
                "analytic solution: populations %.3e, rho23 %.3e, rho14 %.3e",
                self.zeeman_convention,
                self.omega_sign,
                comparison.population_deviation,
                comparison.coherence_deviation,
                comparison.rho14_deviation,
            )
        return comparison


def _liouvillian_rhs(params: CollectiveParams, coeff: CollectiveCoefficients,
                     zeeman_convention: str, omega_sign: int):
    lowering = (np.kron(SIGMA_MINUS, IDENTITY), np.kron(IDENTITY, SIGMA_MINUS))
    raising = tuple(op.conj().T for op in lowering)
    zeeman = np.kron(SIGMA_Z, IDENTITY) + np.kron(IDENTITY, SIGMA_Z)
    scale = 0.5 if zeeman_convention == "half" else 1.0
    hamiltonian = scale * params.omega * zeeman
    omega12 = omega_sign * coeff.omega12
    hamiltonian = hamiltonian + omega12 * (raising[0] @ lowering[1] + raising[1] @ lowering[0])
    rates = np.array([[params.gamma, coeff.gamma12], [coeff.gamma12, params.gamma]])
    jumps = [
        (rates[i, j], lowering[j], raising[i], raising[i] @ lowering[j])
        for i in range(2) for j in range(2)
    ]

    def rhs(_t, y):
        rho = y.reshape(4, 4)
        drho = -1j * (hamiltonian @ rho - rho @ hamiltonian)
        for rate, low, up, number in jumps:
            drho += 0.5 * rate * (2.0 * low @ rho @ up - number @ rho - rho @ number)
        return drho.ravel()

    return rhs


def integrate_master_equation(
    params: CollectiveParams,
    t_end: float,
    steps: int = 1000,
    zeeman_convention: str = "half",
    omega_sign: int = 1,
    rtol: float = 1e-10,
    atol: float = 1e-12,
) -> MasterEquationTrajectory:
    """
    Integrate the collective master equation from the initial pure state.

    Uses an adaptive 8th-order Runge-Kutta scheme (DOP853) and reports the
    state at `steps + 1` equally spaced times.

    Args:
        params: family parameters
        t_end: final time (s)
        steps: number of output intervals, at least 100
        zeeman_convention: "half" uses (omega/2) sigma^z per atom, "full" omega sigma^z
        omega_sign: +1 or -1, sign of the dipole-dipole term
        rtol: relative tolerance
        atol: absolute tolerance

    Returns:
        MasterEquationTrajectory

    Raises:
        StepSizeTooLargeError: If the trace drifts by more than 1e-8
    """
    if zeeman_convention not in ZEEMAN_CONVENTIONS:
        raise ValueError(f"zeeman_convention must be one of {ZEEMAN_CONVENTIONS}")
    if omega_sign not in (1, -1):
        raise ValueError(f"omega_sign must be +1 or -1, got {omega_sign}")
    if steps < 100:
        raise OutOfRangeError(f"steps must be at least 100, got {steps}")
    if t_end < 0:
        raise OutOfRangeError(f"t_end must be non-negative, got {t_end}")

    rho0 = params.initial_state().entries
    if t_end == 0:
        return MasterEquationTrajectory(
            params, np.zeros(1), rho0[np.newaxis].copy(), zeeman_convention, omega_sign
        )

    coeff = collective_coefficients(params)
    rhs = _liouvillian_rhs(params, coeff, zeeman_convention, omega_sign)
    t_eval = np.linspace(0.0, t_end, steps + 1)
    logger.debug("Integrating master equation to t=%g with %d outputs", t_end, steps + 1)
    sol = solve_ivp(
        rhs, (0.0, t_end), rho0.ravel(), method="DOP853",
        t_eval=t_eval, rtol=rtol, atol=atol,
    )
    if not sol.success:
        raise StepSizeTooLargeError(f"Integrator failed: {sol.message}")

    states = sol.y.T.reshape(-1, 4, 4)
    drift = float(np.max(np.abs(np.trace(states, axis1=1, axis2=2) - 1.0)))
    if drift > TRACE_DRIFT_TOL:
        raise StepSizeTooLargeError(
            f"Trace drifted by {drift:.3e} over [0, {t_end}]", drift=drift
        )
    return MasterEquationTrajectory(params, sol.t, states, zeeman_convention, omega_sign)
