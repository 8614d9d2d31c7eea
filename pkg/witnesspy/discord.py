#!/usr/bin/python
# -*- coding: utf-8 -*-
#
# Geometric and information-theoretic quantum discord
#
# Copyright: (c) 2024, bpmconsultag
# MIT License

"""
Geometric and information-theoretic quantum discord

Geometric discord is D = 1/4 (|x|^2 + |T|_F^2 - lambda_max(A)) with
A = x x^T + T T^T. Information discord D' is the gap between the two
quantum mutual informations, minimized over projective measurements on
one side. Entropies are in bits.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple, Union

import numpy as np
from scipy.optimize import minimize
from scipy.special import xlogy

from .collective import bloch_scalars, check_x_structure, collective_eigs_A
from .exceptions import NotAProbabilityVectorError
from .qstate import (
    PSD_TOL,
    BellDiagonalParams,
    MatrixLike,
    PauliDecomposition,
    as_matrix,
    bell_diagonal_spectrum,
    pauli_decompose,
)

logger = logging.getLogger(__name__)

LN2 = np.log(2.0)
NEGATIVE_PROBABILITY_TOL = 1e-12
PROBABILITY_SUM_TOL = 1e-10
DISCREPANCY_TOL = 1e-4


@dataclass(frozen=True)
class CorrelationMatrixA:
    """Real symmetric 3x3 matrix A = x x^T + T T^T"""

    entries: np.ndarray

    @property
    def trace(self) -> float:
        return float(np.trace(self.entries))


SymmetricLike = Union[CorrelationMatrixA, np.ndarray]


def _as_symmetric(a: SymmetricLike) -> np.ndarray:
    if isinstance(a, CorrelationMatrixA):
        return a.entries
    return np.asarray(a, dtype=float)


def correlation_matrix(d: PauliDecomposition) -> CorrelationMatrixA:
    """A = x x^T + T T^T"""
    x = np.asarray(d.x, dtype=float)
    T = np.asarray(d.T, dtype=float)
    a = np.outer(x, x) + T @ T.T
    return CorrelationMatrixA(0.5 * (a + a.T))


def smooth_part(d: PauliDecomposition, literal_norms: bool = False) -> float:
    """
    Smooth term of the geometric discord.

    |x|^2 + |T|_F^2, which is Tr A. With `literal_norms` the Frobenius
    norms of the outer products are used instead, |x x^T|^2 + |T T^T|^2.
    """
    x = np.asarray(d.x, dtype=float)
    T = np.asarray(d.T, dtype=float)
    if literal_norms:
        return float(np.dot(x, x) ** 2 + np.sum((T @ T.T) ** 2))
    return float(np.dot(x, x) + np.sum(T * T))


@dataclass(frozen=True)
class CubicSolution:
    """
    Characteristic cubic lambda^3 + a2 lambda^2 + a1 lambda + a0 of A and its roots.

    Attributes:
        a0, a1, a2: characteristic coefficients
        p, q: depressed cubic mu^3 + p mu + q
        delta: discriminant q^2/4 + p^3/27, clamped to <= 0
        m_plus, m_minus: -q/2 +- sqrt(delta)
        roots: real roots, descending
    """

    a0: float
    a1: float
    a2: float
    p: float
    q: float
    delta: float
    m_plus: complex
    m_minus: complex
    roots: Tuple[float, float, float]

    def residual(self, root: float) -> float:
        return root ** 3 + self.a2 * root ** 2 + self.a1 * root + self.a0


def _deflated_pair(m: np.ndarray, isolated: float) -> Optional[Tuple[float, float]]:
    """
    Remaining two eigenvalues once `isolated` is known.

    The eigenvector of `isolated` is the largest cross product of two rows
    of A - isolated 1; the pair are the eigenvalues of A restricted to its
    orthogonal complement. None when that eigenvector cannot be formed.
    """
    c = m - isolated * np.eye(3)
    crosses = (np.cross(c[0], c[1]), np.cross(c[0], c[2]), np.cross(c[1], c[2]))
    v = max(crosses, key=lambda w: float(np.dot(w, w)))
    norm = float(np.linalg.norm(v))
    if norm == 0.0 or not np.isfinite(norm):
        return None
    v = v / norm
    u1 = np.cross(v, np.eye(3)[int(np.argmin(np.abs(v)))])
    u1 /= np.linalg.norm(u1)
    u2 = np.cross(v, u1)
    top, corner, bottom = u1 @ m @ u1, u1 @ m @ u2, u2 @ m @ u2
    mean = 0.5 * (top + bottom)
    radius = float(np.hypot(0.5 * (top - bottom), corner))
    return mean + radius, mean - radius


def cubic_eigenvalues(a: SymmetricLike) -> CubicSolution:
    """
    Eigenvalues of a real symmetric 3x3 matrix from its characteristic cubic.

    The depressed cubic is taken from the shifted matrix B = A - (Tr A / 3) 1,
    p = -Tr(B^2)/2 and q = -det B, which keeps the coefficients accurate
    when the eigenvalues are close. All roots are real, so the
    trigonometric form of the Cardano solution is used for the root set
    apart from the other two; that pair comes from the 2x2 block of A on
    the complement of its eigenvector, where arccos near +-1 would lose
    half the digits.

    Args:
        a: symmetric 3x3 matrix

    Returns:
        CubicSolution
    """
    m = _as_symmetric(a)
    trace = float(np.trace(m))
    minors = (
        m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
        + m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1]
        + m[0, 0] * m[2, 2] - m[0, 2] * m[2, 0]
    )
    a2 = -trace
    a1 = float(minors)
    a0 = -float(np.linalg.det(m))

    shift = trace / 3.0
    b = m - shift * np.eye(3)
    p = -0.5 * float(np.sum(b * b.T))
    q = -float(np.linalg.det(b))
    delta = q * q / 4.0 + p ** 3 / 27.0
    if delta > 0.0:
        # symmetric input, so any positive discriminant is round-off
        delta = 0.0
    root_delta = np.sqrt(complex(delta))
    m_plus = -q / 2.0 + root_delta
    m_minus = -q / 2.0 - root_delta

    off_diagonal = m[0, 1] ** 2 + m[0, 2] ** 2 + m[1, 2] ** 2
    if off_diagonal == 0.0:
        roots = sorted(np.diag(m).tolist(), reverse=True)
    elif p >= 0.0:
        roots = [shift, shift, shift]
    else:
        rho = np.sqrt(-p / 3.0)
        r = float(np.clip(-q / (2.0 * rho ** 3), -1.0, 1.0))
        phi = np.arccos(r) / 3.0
        largest = shift + 2.0 * rho * np.cos(phi)
        smallest = shift + 2.0 * rho * np.cos(phi + 2.0 * np.pi / 3.0)
        middle = trace - largest - smallest
        # r >= 0: the two lower roots may nearly coincide, r < 0: the two upper
        isolated = largest if r >= 0.0 else smallest
        pair = _deflated_pair(m, isolated)
        if pair is not None:
            roots = sorted([isolated, *pair], reverse=True)
        else:
            roots = sorted([largest, middle, smallest], reverse=True)

    return CubicSolution(
        a0=a0, a1=a1, a2=a2, p=p, q=q, delta=delta,
        m_plus=m_plus, m_minus=m_minus,
        roots=(float(roots[0]), float(roots[1]), float(roots[2])),
    )


def symmetric_eigenvalues(a: SymmetricLike) -> np.ndarray:
    """Iterative (LAPACK) eigenvalues of a symmetric matrix, descending"""
    return np.linalg.eigvalsh(_as_symmetric(a))[::-1]


def geometric_discord(
    rho: MatrixLike, literal_norms: bool = False, solver: str = "cardano"
) -> float:
    """
    Geometric discord D = 1/4 (|x|^2 + |T|_F^2 - lambda_max(A)).

    Args:
        rho: two-qubit state
        literal_norms: evaluate the smooth term as |x x^T|^2 + |T T^T|^2
        solver: "cardano" or "iterative" for lambda_max

    Returns:
        float
    """
    d = pauli_decompose(rho)
    a = correlation_matrix(d)
    if solver == "cardano":
        lam_max = cubic_eigenvalues(a).roots[0]
    elif solver == "iterative":
        lam_max = float(symmetric_eigenvalues(a)[0])
    else:
        raise ValueError(f"Unknown eigenvalue solver {solver!r}")
    return 0.25 * (smooth_part(d, literal_norms) - lam_max)


def entropy(eigenvalues: Sequence[float]) -> float:
    """
    Shannon entropy -sum p log2 p of a probability vector, with 0 log 0 = 0.

    Entries in [-1e-12, 0) are treated as zero.

    Raises:
        NotAProbabilityVectorError: On larger negatives or a sum away from 1
    """
    values = np.asarray(eigenvalues, dtype=float)
    if np.any(values < -NEGATIVE_PROBABILITY_TOL) or np.any(np.isnan(values)):
        raise NotAProbabilityVectorError(f"Negative probabilities in {values.tolist()}")
    total = float(np.sum(values))
    if abs(total - 1.0) > PROBABILITY_SUM_TOL:
        raise NotAProbabilityVectorError(f"Probabilities sum to {total!r}, not 1")
    values = np.clip(values, 0.0, None)
    return float(-np.sum(xlogy(values, values)) / LN2)


def von_neumann_entropy(rho) -> float:
    """S(rho) in bits for a Hermitian matrix of any size"""
    matrix = as_matrix(rho)
    eigs = np.linalg.eigvalsh(0.5 * (matrix + matrix.conj().T))
    # validate() accepts eigenvalues down to PSD_TOL
    eigs = np.where((eigs < 0.0) & (eigs >= PSD_TOL), 0.0, eigs)
    return entropy(eigs)


def binary_entropy(p):
    """h(p) = -p log2 p - (1-p) log2 (1-p); works elementwise on arrays"""
    p = np.clip(np.asarray(p, dtype=float), 0.0, 1.0)
    value = -(xlogy(p, p) + xlogy(1.0 - p, 1.0 - p)) / LN2
    return float(value) if value.ndim == 0 else value


@dataclass(frozen=True)
class OptimizerOptions:
    """
    Measurement search for `info_discord_numeric`.

    Attributes:
        theta_points: polar grid over [0, pi], endpoints included
        phi_points: azimuthal grid over [0, 2 pi)
        refine: polish the best grid point with Nelder-Mead
        xatol: Nelder-Mead tolerance in (theta, phi)
        fatol: Nelder-Mead tolerance in the objective
        side: measured subsystem, "A" or "B"
    """

    theta_points: int = 65
    phi_points: int = 128
    refine: bool = True
    xatol: float = 1e-10
    fatol: float = 1e-12
    side: str = "B"

    def __post_init__(self):
        if self.theta_points < 2 or self.phi_points < 1:
            raise ValueError("Measurement grid needs at least 2 x 1 points")
        if self.side not in ("A", "B"):
            raise ValueError(f"side must be 'A' or 'B', got {self.side!r}")


def _unit_vectors(theta, phi) -> np.ndarray:
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    return np.stack(
        [np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)],
        axis=-1,
    )


def _oriented(d: PauliDecomposition, side: str) -> PauliDecomposition:
    """Decomposition with the measured subsystem in the `y` slot"""
    return d if side == "B" else d.swapped()


def _conditional_entropy(d: PauliDecomposition, n: np.ndarray) -> np.ndarray:
    """
    Average entropy left on the unmeasured side after measuring along n.

    Outcome +-1 has probability p = (1 +- y.n) / 2 and leaves the Bloch
    vector (x +- T n) / (2 p).
    """
    n = np.atleast_2d(n)
    yn = n @ d.y
    tn = n @ d.T.T
    total = np.zeros(len(n))
    for sign in (1.0, -1.0):
        prob = 0.5 * (1.0 + sign * yn)
        vec = d.x[np.newaxis, :] + sign * tn
        norm = np.linalg.norm(vec, axis=1)
        safe = prob > 1e-15
        radius = np.where(safe, norm / np.where(safe, 2.0 * prob, 1.0), 0.0)
        radius = np.clip(radius, 0.0, 1.0)
        total += np.where(safe, prob * binary_entropy(0.5 * (1.0 + radius)), 0.0)
    return total


def _marginal_entropies(rho: MatrixLike) -> Tuple[float, float, float]:
    matrix = as_matrix(rho)
    r = matrix.reshape(2, 2, 2, 2)
    s_a = von_neumann_entropy(np.einsum("ijkj->ik", r))
    s_b = von_neumann_entropy(np.einsum("ijil->jl", r))
    return s_a, s_b, von_neumann_entropy(matrix)


def _clamp_discord(value: float, s_a: float, s_b: float) -> float:
    upper = min(s_a, s_b) + 1e-9
    if value < 0.0 or value > upper:
        logger.debug("Clamping information discord %.3e into [0, %.6g]", value, upper)
    return float(np.clip(value, 0.0, upper))


def info_discord_numeric(
    rho: MatrixLike, options: Optional[OptimizerOptions] = None
) -> float:
    """
    Information discord minimized over projective qubit measurements.

    D' = S(measured) - S(AB) + min_n sum_k p_k S(unmeasured | k). The
    minimum is taken on a (theta, phi) grid, then polished with
    Nelder-Mead; the smaller of the two objective values is kept.

    Args:
        rho: two-qubit state
        options: OptimizerOptions

    Returns:
        D' in bits, clamped to [0, min(S_A, S_B) + 1e-9]
    """
    opts = options or OptimizerOptions()
    d = _oriented(pauli_decompose(rho), opts.side)
    s_a, s_b, s_ab = _marginal_entropies(rho)
    s_measured = s_b if opts.side == "B" else s_a

    thetas = np.linspace(0.0, np.pi, opts.theta_points)
    phis = np.linspace(0.0, 2.0 * np.pi, opts.phi_points, endpoint=False)
    grid_t, grid_p = np.meshgrid(thetas, phis, indexing="ij")
    values = _conditional_entropy(d, _unit_vectors(grid_t.ravel(), grid_p.ravel()))
    best = int(np.argmin(values))
    best_value = float(values[best])

    if opts.refine:
        start = np.array([grid_t.ravel()[best], grid_p.ravel()[best]])
        result = minimize(
            lambda angles: float(_conditional_entropy(d, _unit_vectors(*angles))[0]),
            start,
            method="Nelder-Mead",
            options={"xatol": opts.xatol, "fatol": opts.fatol},
        )
        logger.debug(
            "Measurement refinement: grid %.15g, refined %.15g after %d iterations",
            best_value, result.fun, result.nit,
        )
        best_value = min(best_value, float(result.fun))

    return _clamp_discord(s_measured - s_ab + best_value, s_a, s_b)


def info_discord_bell_diagonal(c: BellDiagonalParams) -> float:
    """
    Closed-form information discord of a Bell-diagonal state.

    D' = 1 - S(rho) + h((1 + c) / 2) with c = max |c_i|.
    """
    weights = bell_diagonal_spectrum(c)
    c_max = float(np.max(np.abs(c.as_array())))
    return 1.0 - entropy(weights) + binary_entropy(0.5 * (1.0 + c_max))


def axis_conditional_entropies(rho: MatrixLike, side: str = "B") -> np.ndarray:
    """Conditional entropies for measuring sigma_1, sigma_2, sigma_3 on `side`"""
    d = _oriented(pauli_decompose(rho), side)
    return _conditional_entropy(d, np.eye(3))


def axis_info_discord(rho: MatrixLike, side: str = "B") -> float:
    """Information discord restricted to the three Pauli-axis measurements"""
    s_a, s_b, s_ab = _marginal_entropies(rho)
    s_measured = s_b if side == "B" else s_a
    conditional = float(np.min(axis_conditional_entropies(rho, side)))
    return _clamp_discord(s_measured - s_ab + conditional, s_a, s_b)


@dataclass(frozen=True)
class CollectiveDiscordTerms:
    """Intermediate terms of the collective closed form"""

    C: float
    R: float
    u_plus: float
    u_minus: float
    v_plus: float
    v_minus: float
    s_plus: float
    s_minus: float
    s_zero: float
    m_plus: float
    m_minus: float
    n_plus: float
    n_minus: float

    @property
    def s_branches(self) -> Tuple[float, float, float]:
        return (self.s_plus, self.s_minus, self.s_zero)

    @property
    def weights(self) -> Tuple[float, float, float, float]:
        return (self.u_plus, self.u_minus, self.v_plus, self.v_minus)


def collective_h(x: float) -> float:
    """H(x) = -(1-x) log2(1-x) - (1+x) log2(1+x), x clamped to [-1, 1]"""
    if abs(x) > 1.0 + 1e-12:
        logger.debug("Clamping H argument %.15g into [-1, 1]", x)
    x = float(np.clip(x, -1.0, 1.0))
    return float(-(xlogy(1.0 - x, 1.0 - x) + xlogy(1.0 + x, 1.0 + x)) / LN2)


def _weighted_log2_ratio(weight: float, num: float, den: float) -> float:
    """weight * log2(num / den) with 0 log(anything) = 0"""
    weight, num, den = (max(v, 0.0) for v in (weight, num, den))
    with np.errstate(divide="ignore", invalid="ignore"):
        return float((xlogy(weight, num) - xlogy(weight, den)) / LN2)


def collective_discord_terms(rho: MatrixLike) -> CollectiveDiscordTerms:
    """
    Evaluate the collective closed-form terms as written.

    u_+- = (1 - C +- 4 rho23) / 4
    v_+- = (1 + C +- 2 sqrt(R^2 + |rho14|^2)) / 4
    s_+- = 1 + H(sqrt(R^2 + lambda_+-))
    s_0  = -sum_+- [m/4 log2(m/n) + (1-C)/4 log2((1-C)/n)]
    m_+- = (1 + C +- 2R) / 4,  n_+- = 2 (1 +- R)

    Raises:
        StructureMismatchError: If the state lacks the collective X structure
    """
    matrix = check_x_structure(rho)
    c, r = bloch_scalars(matrix)
    rho23 = matrix[1, 2].real
    coherence = abs(matrix[0, 3])
    lam_plus, lam_minus, _ = collective_eigs_A(matrix)

    u_plus = 0.25 * (1.0 - c + 4.0 * rho23)
    u_minus = 0.25 * (1.0 - c - 4.0 * rho23)
    radical = 2.0 * np.sqrt(r * r + coherence ** 2)
    v_plus = 0.25 * (1.0 + c + radical)
    v_minus = 0.25 * (1.0 + c - radical)
    s_plus = 1.0 + collective_h(np.sqrt(r * r + lam_plus))
    s_minus = 1.0 + collective_h(np.sqrt(r * r + lam_minus))

    m_plus = 0.25 * (1.0 + c + 2.0 * r)
    m_minus = 0.25 * (1.0 + c - 2.0 * r)
    n_plus = 2.0 * (1.0 + r)
    n_minus = 2.0 * (1.0 - r)
    s_zero = -sum(
        _weighted_log2_ratio(m / 4.0, m, n) + _weighted_log2_ratio((1.0 - c) / 4.0, 1.0 - c, n)
        for m, n in ((m_plus, n_plus), (m_minus, n_minus))
    )
    return CollectiveDiscordTerms(
        C=float(c), R=float(r),
        u_plus=float(u_plus), u_minus=float(u_minus),
        v_plus=float(v_plus), v_minus=float(v_minus),
        s_plus=float(s_plus), s_minus=float(s_minus), s_zero=float(s_zero),
        m_plus=float(m_plus), m_minus=float(m_minus),
        n_plus=float(n_plus), n_minus=float(n_minus),
    )


def info_discord_collective(rho: MatrixLike) -> Tuple[float, CollectiveDiscordTerms]:
    """
    Closed-form information discord of the collective family, as written.

    D' = 1 + H(R) + min(s_0, s_+, s_-) - sum_+- (u log2 u + v log2 v)

    Returns:
        (D', CollectiveDiscordTerms)

    Raises:
        StructureMismatchError: If the state lacks the collective X structure
    """
    terms = collective_discord_terms(rho)
    weights = np.clip(np.array(terms.weights), 0.0, None)
    spectral = float(np.sum(xlogy(weights, weights)) / LN2)
    value = 1.0 + collective_h(terms.R) + min(terms.s_branches) - spectral
    return float(value), terms


@dataclass(frozen=True)
class CollectiveDiscordAudit:
    """
    Closed form against numeric minimization for one collective state.

    Attributes:
        closed_form: D' from `info_discord_collective`
        numeric: D' from `info_discord_numeric`
        spectrum_deviation: max |sorted(u, v) - sorted(eig rho)|
        conditional_deviation: |min s_i - numeric minimal conditional entropy|
        terms: the closed-form intermediates
    """

    closed_form: float
    numeric: float
    spectrum_deviation: float
    conditional_deviation: float
    terms: CollectiveDiscordTerms

    @property
    def difference(self) -> float:
        return abs(self.closed_form - self.numeric)

    @property
    def discrepant(self) -> bool:
        return self.difference > DISCREPANCY_TOL


def audit_collective_discord(
    rho: MatrixLike, options: Optional[OptimizerOptions] = None
) -> CollectiveDiscordAudit:
    """
    Check the collective closed form term by term against the state.

    The closed-form weights are compared with the spectrum of rho and the
    minimal s_i with the numerically minimized conditional entropy.
    A discrepancy is logged as a warning, never corrected.
    """
    opts = options or OptimizerOptions()
    closed, terms = info_discord_collective(rho)
    numeric = info_discord_numeric(rho, opts)

    spectrum = np.sort(np.linalg.eigvalsh(as_matrix(rho)))
    spectrum_dev = float(np.max(np.abs(np.sort(terms.weights) - spectrum)))
    s_a, s_b, s_ab = _marginal_entropies(rho)
    s_measured = s_b if opts.side == "B" else s_a
    # invert the numeric pipeline to recover its minimal conditional entropy
    numeric_conditional = numeric - s_measured + s_ab
    conditional_dev = abs(min(terms.s_branches) - numeric_conditional)

    audit = CollectiveDiscordAudit(closed, numeric, spectrum_dev, conditional_dev, terms)
    if audit.discrepant:
        logger.warning(
            "DISCREPANT collective closed form: %.6g vs numeric %.6g "
            "(spectrum deviation %.3e, conditional-entropy deviation %.3e)",
            closed, numeric, spectrum_dev, conditional_dev,
        )
    return audit
