#!/usr/bin/python
# -*- coding: utf-8 -*-
#
# Two-qubit density matrices and their Pauli decomposition
#
# Copyright: (c) 2024, bpmconsultag
# MIT License

"""
Two-qubit density matrices and their Pauli decomposition

The basis order is |ee>, |eg>, |ge>, |gg> with sigma_3 |e> = +|e>, and the
tensor order is A (x) B. Every state family of the library is expressed in
this basis.
"""

import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from .exceptions import NonPhysicalParamsError

logger = logging.getLogger(__name__)

HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = -1e-10

IDENTITY = np.eye(2, dtype=np.complex128)
SIGMA_1 = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_2 = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_3 = np.array([[1, 0], [0, -1]], dtype=np.complex128)
PAULIS = (SIGMA_1, SIGMA_2, SIGMA_3)

# sigma_i (x) 1, 1 (x) sigma_j and sigma_i (x) sigma_j, stacked for einsum
_LOCAL_A = np.array([np.kron(s, IDENTITY) for s in PAULIS])
_LOCAL_B = np.array([np.kron(IDENTITY, s) for s in PAULIS])
_CORRELATORS = np.array([[np.kron(si, sj) for sj in PAULIS] for si in PAULIS])


@dataclass(frozen=True)
class ValidationReport:
    """
    Outcome of a density-matrix check.

    Attributes:
        hermiticity_defect: max |rho_ij - conj(rho_ji)|
        trace_defect: |Tr rho - 1|
        min_eigenvalue: smallest eigenvalue of the Hermitian part
    """

    hermiticity_defect: float
    trace_defect: float
    min_eigenvalue: float

    @property
    def ok(self) -> bool:
        return (
            self.hermiticity_defect <= HERMITICITY_TOL
            and self.trace_defect <= TRACE_TOL
            and self.min_eigenvalue >= PSD_TOL
        )

    def describe(self) -> str:
        return (
            f"hermiticity defect {self.hermiticity_defect:.3e}, "
            f"trace defect {self.trace_defect:.3e}, "
            f"min eigenvalue {self.min_eigenvalue:.3e}"
        )


@dataclass(frozen=True)
class DensityMatrix:
    """
    Joint two-qubit state.

    Use `DensityMatrix.from_array` to build a checked instance; the plain
    constructor trusts its input.
    """

    entries: np.ndarray = field(repr=False)

    @classmethod
    def from_array(cls, matrix, validate_state: bool = True) -> "DensityMatrix":
        """
        Wrap a 4x4 matrix.

        Args:
            matrix: array-like 4x4 complex matrix
            validate_state: run `validate` and raise on failure

        Returns:
            DensityMatrix

        Raises:
            NonPhysicalParamsError: If validation is requested and fails
        """
        entries = np.array(matrix, dtype=np.complex128)
        if entries.shape != (4, 4):
            raise NonPhysicalParamsError(
                f"Two-qubit state must be 4x4, got shape {entries.shape}"
            )
        if validate_state:
            report = validate(entries)
            if not report.ok:
                raise NonPhysicalParamsError(
                    f"Matrix is not a density matrix: {report.describe()}",
                    report=report,
                )
        entries.setflags(write=False)
        return cls(entries)

    def eigenvalues(self) -> np.ndarray:
        """Eigenvalues in ascending order"""
        return np.linalg.eigvalsh(_hermitian_part(self.entries))

    def purity(self) -> float:
        """Tr rho^2"""
        return float(np.real(np.trace(self.entries @ self.entries)))

    def partial_trace(self, keep: str = "A") -> np.ndarray:
        """
        Reduced 2x2 state.

        Args:
            keep: "A" or "B", the subsystem that survives the trace
        """
        r = self.entries.reshape(2, 2, 2, 2)
        if keep == "A":
            return np.einsum("ijkj->ik", r)
        if keep == "B":
            return np.einsum("ijil->jl", r)
        raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


@dataclass(frozen=True)
class PauliDecomposition:
    """
    Bloch representation rho = 1/4 [1 + x.sigma (x) 1 + 1 (x) y.sigma + T_ij sigma_i (x) sigma_j].

    Attributes:
        x: Bloch vector of subsystem A
        y: Bloch vector of subsystem B
        T: 3x3 correlation tensor
    """

    x: np.ndarray
    y: np.ndarray
    T: np.ndarray

    def swapped(self) -> "PauliDecomposition":
        """Decomposition of the state with A and B exchanged"""
        return PauliDecomposition(x=self.y, y=self.x, T=self.T.T)


@dataclass(frozen=True)
class BellDiagonalParams:
    """Correlation coefficients of 1/4 [1 + sum_i c_i sigma_i (x) sigma_i]"""

    c1: float
    c2: float
    c3: float

    @classmethod
    def from_sequence(cls, values: Sequence[float]) -> "BellDiagonalParams":
        if len(values) != 3:
            raise ValueError(f"Expected three coefficients, got {len(values)}")
        return cls(float(values[0]), float(values[1]), float(values[2]))

    def as_array(self) -> np.ndarray:
        return np.array([self.c1, self.c2, self.c3], dtype=float)


MatrixLike = Union[DensityMatrix, np.ndarray]


def as_matrix(rho: MatrixLike) -> np.ndarray:
    """Return the raw 4x4 array of a DensityMatrix or array"""
    if isinstance(rho, DensityMatrix):
        return rho.entries
    return np.asarray(rho, dtype=np.complex128)


def _hermitian_part(matrix: np.ndarray) -> np.ndarray:
    return 0.5 * (matrix + matrix.conj().T)


def validate(rho: MatrixLike) -> ValidationReport:
    """
    Check Hermiticity, unit trace and positivity.

    Never raises; callers decide what a failed report means.

    Args:
        rho: DensityMatrix or raw 4x4 array

    Returns:
        ValidationReport
    """
    matrix = as_matrix(rho)
    hermiticity = float(np.max(np.abs(matrix - matrix.conj().T)))
    trace_defect = float(abs(np.trace(matrix) - 1.0))
    min_eig = float(np.min(np.linalg.eigvalsh(_hermitian_part(matrix))))
    report = ValidationReport(hermiticity, trace_defect, min_eig)
    if report.ok and min_eig < 0.0:
        logger.debug("State passes with round-off negative eigenvalue %.3e", min_eig)
    return report


def pauli_sum(x, y, T) -> np.ndarray:
    """
    Unvalidated matrix 1/4 [1 + x.sigma (x) 1 + 1 (x) y.sigma + T_ij sigma_i (x) sigma_j].

    Args:
        x: A-side Bloch vector
        y: B-side Bloch vector
        T: correlation tensor

    Returns:
        4x4 complex array
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    T = np.asarray(T, dtype=float)
    matrix = np.eye(4, dtype=np.complex128)
    matrix = matrix + np.einsum("i,ijk->jk", x, _LOCAL_A)
    matrix = matrix + np.einsum("j,jkl->kl", y, _LOCAL_B)
    matrix = matrix + np.einsum("ij,ijkl->kl", T, _CORRELATORS)
    return 0.25 * matrix


def pauli_decompose(rho: MatrixLike) -> PauliDecomposition:
    """
    Bloch vectors and correlation tensor of a two-qubit state.

    x_i = Tr[rho (sigma_i (x) 1)], y_j = Tr[rho (1 (x) sigma_j)],
    T_ij = Tr[rho (sigma_i (x) sigma_j)]. Imaginary parts are round-off
    for a Hermitian input and are dropped.
    """
    matrix = as_matrix(rho)
    # Tr[rho O] = sum_kl rho_kl O_lk
    x = np.einsum("kl,ilk->i", matrix, _LOCAL_A).real
    y = np.einsum("kl,ilk->i", matrix, _LOCAL_B).real
    T = np.einsum("kl,ijlk->ij", matrix, _CORRELATORS).real
    return PauliDecomposition(x=x, y=y, T=T)


def pauli_compose(d: PauliDecomposition) -> DensityMatrix:
    """
    Inverse of `pauli_decompose`.

    Raises:
        NonPhysicalParamsError: If the composed matrix is not a state
    """
    return DensityMatrix.from_array(pauli_sum(d.x, d.y, d.T))


def bell_diagonal(c: BellDiagonalParams) -> DensityMatrix:
    """
    Bell-diagonal state 1/4 [1 (x) 1 + sum_i c_i sigma_i (x) sigma_i].

    Raises:
        NonPhysicalParamsError: If any Bell-state weight is negative
    """
    coeffs = c.as_array()
    matrix = pauli_sum(np.zeros(3), np.zeros(3), np.diag(coeffs))
    try:
        return DensityMatrix.from_array(matrix)
    except NonPhysicalParamsError as exc:
        weights = bell_diagonal_spectrum(c)
        raise NonPhysicalParamsError(
            f"Bell-diagonal coefficients {tuple(coeffs)} give weights {tuple(weights)}",
            report=exc.report,
        ) from exc


def bell_diagonal_spectrum(c: BellDiagonalParams) -> Tuple[float, float, float, float]:
    """Weights of |Phi+>, |Phi->, |Psi+>, |Psi-> in a Bell-diagonal state"""
    c1, c2, c3 = c.c1, c.c2, c.c3
    return (
        0.25 * (1 + c1 - c2 + c3),
        0.25 * (1 - c1 + c2 + c3),
        0.25 * (1 + c1 + c2 - c3),
        0.25 * (1 - c1 - c2 - c3),
    )


def maximally_mixed() -> DensityMatrix:
    return DensityMatrix.from_array(np.eye(4) / 4.0)


def product_state(rho_a: np.ndarray, rho_b: np.ndarray) -> DensityMatrix:
    return DensityMatrix.from_array(np.kron(rho_a, rho_b))


def random_density_matrix(
    rng: np.random.Generator, rank: Optional[int] = None
) -> DensityMatrix:
    """
    Random state rho = G G^dagger / Tr(G G^dagger) with complex Gaussian G.

    Args:
        rng: numpy Generator
        rank: number of columns of G (default 4, full rank)
    """
    cols = 4 if rank is None else rank
    g = rng.normal(size=(4, cols)) + 1j * rng.normal(size=(4, cols))
    rho = g @ g.conj().T
    rho = rho / np.trace(rho).real
    return DensityMatrix.from_array(_hermitian_part(rho))


def random_local_unitary(rng: np.random.Generator) -> np.ndarray:
    """U_A (x) U_B with each factor Haar-random in U(2)"""
    factors = []
    for _ in range(2):
        z = (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))) / np.sqrt(2.0)
        q, r = np.linalg.qr(z)
        phases = np.diag(r) / np.abs(np.diag(r))
        factors.append(q * phases)
    return np.kron(factors[0], factors[1])
