#!/usr/bin/python
# -*- coding: utf-8 -*-
#
# Sudden-change witness from eigenvalue branch crossings
#
# Copyright: (c) 2024, bpmconsultag
# MIT License

"""
Sudden-change witness from eigenvalue branch crossings

A discord that is a smooth function minus the largest of three smooth
branches has a kink exactly where the maximal branch changes identity.
This module tracks branches along a time grid, finds their crossings,
refines the crossing times and measures the slope jump of a curve there.
"""

import itertools
import logging
from dataclasses import dataclass, replace
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import brentq, linear_sum_assignment

from .channels import evolve_bd_phase_bitflip, evolve_bd_phase_phase
from .exceptions import GridTooCoarseError, NoSignChangeError
from .qstate import BellDiagonalParams

logger = logging.getLogger(__name__)

PERMUTATIONS = tuple(itertools.permutations(range(3)))
TIE_TOL = 1e-14
OSCULATION_TOL = 1e-9
DEFAULT_H_SCHEDULE = (1e-3, 1e-4, 1e-5)
JUMP_MARGIN = 10.0

BD_LAWS = {
    "phase-bitflip": lambda g1, g2: (g1, g1 + g2, g2),
    "phase-phase": lambda g1, g2: (g1 + g2, g1 + g2, 0.0),
}
BD_EVOLUTIONS = {
    "phase-bitflip": evolve_bd_phase_bitflip,
    "phase-phase": evolve_bd_phase_phase,
}


@dataclass(frozen=True)
class EigenBranchSeries:
    """
    Three continuity-matched branches sampled on a time grid.

    Attributes:
        times: strictly increasing grid, shape (n,)
        branches: branch values, shape (n, 3); column b is one branch identity
        max_index: index of the maximal branch at each time, shape (n,)
    """

    times: np.ndarray
    branches: np.ndarray
    max_index: np.ndarray

    @property
    def scale(self) -> float:
        return max(1.0, float(np.max(np.abs(self.branches))))

    def __len__(self):
        return len(self.times)


@dataclass(frozen=True)
class CrossingEvent:
    """
    A zero of a pairwise branch difference.

    Attributes:
        t_star: crossing time, refined when `refined` is True
        branch_pair: (m, n) branch identities, m < n
        lambda_at_crossing: common branch value at t_star
        involves_max: the maximal branch changes identity across t_star
        kind: "crossing" or "osculation"
        bracket: grid interval enclosing t_star
        refined: t_star was polished by root finding
    """

    t_star: float
    branch_pair: Tuple[int, int]
    lambda_at_crossing: float
    involves_max: bool
    kind: str = "crossing"
    bracket: Tuple[float, float] = (0.0, 0.0)
    refined: bool = False

    @property
    def sudden_change(self) -> bool:
        return self.kind == "crossing" and self.involves_max


@dataclass(frozen=True)
class AnalyticCrossing:
    """Closed-form crossing of two Bell-diagonal coefficient magnitudes"""

    t_star: float
    pair: Tuple[int, int]
    involves_max: bool


@dataclass(frozen=True)
class DerivativeJump:
    """
    One-sided slopes of a curve at a point.

    Attributes:
        left: Richardson-extrapolated left slope
        right: Richardson-extrapolated right slope
        noise_floor: finite-difference uncertainty of the slopes
    """

    left: float
    right: float
    noise_floor: float

    @property
    def jump(self) -> float:
        return self.right - self.left

    @property
    def discontinuous(self) -> bool:
        return abs(self.jump) > JUMP_MARGIN * self.noise_floor


def _check_grid(times: np.ndarray):
    if times.ndim != 1 or len(times) < 2:
        raise ValueError("Time grid needs at least two points")
    if np.any(np.diff(times) <= 0):
        raise ValueError("Time grid must be strictly increasing")


def _extrapolate(times: np.ndarray, branches: np.ndarray, k: int) -> np.ndarray:
    """Lagrange extrapolation of the matched branches to times[k]"""
    if k == 1:
        return branches[0]
    tk = times[k]
    if k == 2:
        ratio = (tk - times[1]) / (times[1] - times[0])
        return branches[1] + (branches[1] - branches[0]) * ratio
    t0, t1, t2 = times[k - 3:k]
    w0 = (tk - t1) * (tk - t2) / ((t0 - t1) * (t0 - t2))
    w1 = (tk - t0) * (tk - t2) / ((t1 - t0) * (t1 - t2))
    w2 = (tk - t0) * (tk - t1) / ((t2 - t0) * (t2 - t1))
    return w0 * branches[k - 3] + w1 * branches[k - 2] + w2 * branches[k - 1]


def _relabelling(tied: np.ndarray, prev: np.ndarray, tie: float) -> bool:
    """True when tied candidates only swap branches that were equal at the previous step"""
    reference = tied[0]
    for candidate in tied[1:]:
        moved = np.flatnonzero(np.abs(candidate - reference) > tie)
        if moved.size and np.ptp(prev[moved]) > tie:
            return False
    return True


def match_branches(times: Sequence[float], values: np.ndarray) -> EigenBranchSeries:
    """
    Assign unordered eigenvalue triples to continuous branches.

    Each step matches the new triple against a quadratic extrapolation of
    the previous three steps (linear on the second step), choosing the
    permutation with the least total displacement. Equal-cost permutations keep the previous ranking.
    Swapping branches that were degenerate at the previous step is a
    relabelling and never ambiguous.

    Args:
        times: strictly increasing grid
        values: eigenvalues, shape (n, 3), any order per row

    Returns:
        EigenBranchSeries

    Raises:
        GridTooCoarseError: If equal-cost permutations disagree on the maximal
            branch while swapping branches that were distinct at the previous step
    """
    times = np.asarray(times, dtype=float)
    values = np.asarray(values, dtype=float)
    _check_grid(times)
    if values.shape != (len(times), 3):
        raise ValueError(f"Expected values of shape ({len(times)}, 3), got {values.shape}")

    scale = max(1.0, float(np.max(np.abs(values))))
    tie = TIE_TOL * scale
    branches = np.empty_like(values)
    branches[0] = np.sort(values[0])[::-1]
    perms = np.array(PERMUTATIONS)

    for k in range(1, len(times)):
        prev = branches[k - 1]
        target = _extrapolate(times, branches, k)
        candidates = values[k][perms]
        costs = np.sum(np.abs(candidates - target), axis=1)
        best = float(np.min(costs))
        tied = np.flatnonzero(costs <= best + tie)
        choice = int(tied[0])
        if len(tied) > 1:
            maxima = {int(np.argmax(candidates[i])) for i in tied}
            if len(maxima) > 1 and not _relabelling(candidates[tied], prev, tie):
                raise GridTooCoarseError(
                    f"Ambiguous branch matching at t={times[k]:.17g}", index=k
                )
            prev_rank = np.argsort(np.argsort(-prev, kind="stable"), kind="stable")
            for i in tied:
                rank = np.argsort(np.argsort(-candidates[i], kind="stable"), kind="stable")
                if np.array_equal(rank, prev_rank):
                    choice = int(i)
                    break
        branches[k] = candidates[choice]

    return EigenBranchSeries(times, branches, np.argmax(branches, axis=1))


def scan_branches(
    eig_fn: Callable[[float], Sequence[float]], t_grid: Sequence[float]
) -> EigenBranchSeries:
    """
    Evaluate three eigenvalues on a grid and match them into branches.

    Args:
        eig_fn: time -> three eigenvalues
        t_grid: strictly increasing grid

    Returns:
        EigenBranchSeries
    """
    times = np.asarray(t_grid, dtype=float)
    _check_grid(times)
    values = np.array([np.asarray(eig_fn(t), dtype=float) for t in times])
    return match_branches(times, values)


def _crossing_event(series: EigenBranchSeries, pair, i: int, j: int) -> CrossingEvent:
    m, n = pair
    t, b = series.times, series.branches
    d_i = b[i, m] - b[i, n]
    d_j = b[j, m] - b[j, n]
    frac = d_i / (d_i - d_j)
    t_lin = t[i] + frac * (t[j] - t[i])
    lam = b[i, m] + frac * (b[j, m] - b[i, m])
    before, after = int(series.max_index[i]), int(series.max_index[j])
    involves_max = before != after and {before, after} == {m, n}
    return CrossingEvent(
        t_star=float(t_lin),
        branch_pair=(m, n),
        lambda_at_crossing=float(lam),
        involves_max=involves_max,
        kind="crossing",
        bracket=(float(t[i]), float(t[j])),
    )


def _osculation_event(series: EigenBranchSeries, pair, t_touch: float, lam: float,
                      bracket) -> CrossingEvent:
    return CrossingEvent(
        t_star=float(t_touch),
        branch_pair=pair,
        lambda_at_crossing=float(lam),
        involves_max=False,
        kind="osculation",
        bracket=(float(bracket[0]), float(bracket[1])),
    )


def detect_crossings(series: EigenBranchSeries) -> List[CrossingEvent]:
    """
    Find every sign change and touch of the pairwise branch differences.

    A sign change between grid points is a crossing. A difference that
    reaches zero on the grid without changing sign, or whose local
    minimum in magnitude fits a parabola with vertex value below 1e-9
    times the branch scale, is an osculation. Only crossings that swap
    the maximal branch are sudden changes.

    Returns:
        events sorted by time
    """
    events = []
    t, b = series.times, series.branches
    touch_tol = OSCULATION_TOL * series.scale
    for pair in ((0, 1), (0, 2), (1, 2)):
        m, n = pair
        diff = b[:, m] - b[:, n]
        nonzero = np.flatnonzero(diff != 0.0)
        for i, j in zip(nonzero[:-1], nonzero[1:]):
            if np.sign(diff[i]) != np.sign(diff[j]):
                events.append(_crossing_event(series, pair, i, j))
            elif j > i + 1:
                mid = (i + j) // 2
                events.append(_osculation_event(series, pair, t[mid], b[mid, m], (t[i], t[j])))

        mag = np.abs(diff)
        for k in range(1, len(t) - 1):
            window = diff[k - 1:k + 2]
            if np.any(window == 0.0) or abs(np.sum(np.sign(window))) != 3:
                continue
            if not (mag[k] <= mag[k - 1] and mag[k] < mag[k + 1]):
                continue
            coeffs = np.polyfit(t[k - 1:k + 2] - t[k], window, 2)
            if coeffs[0] == 0.0:
                continue
            offset = -coeffs[1] / (2.0 * coeffs[0])
            vertex = np.polyval(coeffs, offset)
            t_vertex = t[k] + offset
            if t[k - 1] <= t_vertex <= t[k + 1] and abs(vertex) <= touch_tol:
                events.append(
                    _osculation_event(series, pair, t_vertex, b[k, m], (t[k - 1], t[k + 1]))
                )

    events.sort(key=lambda e: (e.t_star, e.branch_pair))
    logger.debug(
        "Detected %d crossings (%d sudden) and %d osculations",
        sum(e.kind == "crossing" for e in events),
        sum(e.sudden_change for e in events),
        sum(e.kind == "osculation" for e in events),
    )
    return events


def refine_crossing(
    diff_fn: Callable[[float], float],
    bracket: Tuple[float, float],
    rel_tol: float = 1e-12,
) -> float:
    """
    Root of a branch difference inside a sign-changing bracket.

    Uses Brent's method to an interval width of rel_tol * max(1, |t|).

    Raises:
        NoSignChangeError: If the bracket does not enclose a sign change
    """
    lo, hi = float(bracket[0]), float(bracket[1])
    f_lo, f_hi = diff_fn(lo), diff_fn(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if np.sign(f_lo) == np.sign(f_hi):
        raise NoSignChangeError(
            f"No sign change on [{lo:.17g}, {hi:.17g}]: ({f_lo:.3e}, {f_hi:.3e})"
        )
    xtol = rel_tol * max(1.0, abs(lo), abs(hi))
    return float(brentq(diff_fn, lo, hi, xtol=xtol, maxiter=200))


def _identity_at(series: EigenBranchSeries, index: int, reference: np.ndarray) -> np.ndarray:
    """Map branch identities at a grid point onto positions of `reference`"""
    cost = np.abs(series.branches[index][:, np.newaxis] - reference[np.newaxis, :])
    rows, cols = linear_sum_assignment(cost)
    mapping = np.empty(3, dtype=int)
    mapping[rows] = cols
    return mapping


def _anchor_index(series: EigenBranchSeries, event: CrossingEvent) -> int:
    return int(np.searchsorted(series.times, event.bracket[0]))


def branch_difference(
    matrix_fn: Callable[[float], np.ndarray],
    series: EigenBranchSeries,
    event: CrossingEvent,
) -> Callable[[float], float]:
    """
    Signed difference of the event's two branches as a function of time.

    Branch identity is carried from the left end of the bracket by
    eigenvector overlap, so the difference changes sign at the crossing
    instead of staying sorted.

    Args:
        matrix_fn: time -> symmetric 3x3 matrix whose eigenvalues are the branches
        series: the series the event was detected on
        event: crossing to follow
    """
    anchor = _anchor_index(series, event)
    w0, v0 = np.linalg.eigh(matrix_fn(float(series.times[anchor])))
    eig_of_branch = _identity_at(series, anchor, w0)
    reference = v0[:, eig_of_branch]
    m, n = event.branch_pair

    def diff(t: float) -> float:
        w, v = np.linalg.eigh(matrix_fn(t))
        overlap = np.abs(reference.T @ v) ** 2
        rows, cols = linear_sum_assignment(-overlap)
        current = np.empty(3, dtype=int)
        current[rows] = cols
        return float(w[current[m]] - w[current[n]])

    return diff


def labeled_branch_difference(
    values_fn: Callable[[float], Sequence[float]],
    series: EigenBranchSeries,
    event: CrossingEvent,
) -> Callable[[float], float]:
    """
    Signed difference for branches that come with fixed labels.

    `values_fn` returns the three branch values in a fixed label order
    (measurement axes, closed-form terms). The event's branch identities
    are mapped onto labels at the left end of the bracket.
    """
    anchor = _anchor_index(series, event)
    labels = _identity_at(
        series, anchor, np.asarray(values_fn(float(series.times[anchor])), dtype=float)
    )
    m, n = labels[event.branch_pair[0]], labels[event.branch_pair[1]]

    def diff(t: float) -> float:
        values = values_fn(t)
        return float(values[m] - values[n])

    return diff


def refine_event(
    event: CrossingEvent,
    diff_fn: Callable[[float], float],
    value_fn: Optional[Callable[[float], float]] = None,
    rel_tol: float = 1e-12,
) -> CrossingEvent:
    """
    Refine a crossing event in place of its grid estimate.

    Osculations are returned unchanged. If the bracket does not show a
    sign change under `diff_fn` the grid estimate is kept and a warning
    is logged.
    """
    if event.kind != "crossing":
        return event
    try:
        t_star = refine_crossing(diff_fn, event.bracket, rel_tol)
    except NoSignChangeError as exc:
        logger.warning("Crossing of branches %s left unrefined: %s", event.branch_pair, exc)
        return event
    lam = value_fn(t_star) if value_fn is not None else event.lambda_at_crossing
    return replace(event, t_star=t_star, lambda_at_crossing=float(lam), refined=True)


def analytic_crossings_bd(
    c0: BellDiagonalParams, gamma1: float, gamma2: float, law: str = "phase-bitflip"
) -> List[AnalyticCrossing]:
    """
    Closed-form times where two Bell-diagonal coefficients meet in magnitude.

    With c_i(t) = c_i0 e^{-r_i t}, pair (i, j) meets at
    t = ln(|c_i0| / |c_j0|) / (r_i - r_j). Only finite t > 0 are kept.

    Args:
        c0: initial coefficients
        gamma1, gamma2: channel rates
        law: "phase-bitflip" or "phase-phase"

    Returns:
        crossings sorted by time; pair indices are 0-based
    """
    if law not in BD_LAWS:
        raise ValueError(f"Unknown Bell-diagonal law {law!r}")
    rates = BD_LAWS[law](gamma1, gamma2)
    mags = np.abs(c0.as_array())
    found = []
    for i, j in ((0, 1), (0, 2), (1, 2)):
        if rates[i] == rates[j] or mags[i] == 0.0 or mags[j] == 0.0:
            continue
        t_star = np.log(mags[i] / mags[j]) / (rates[i] - rates[j])
        if not np.isfinite(t_star) or t_star <= 0.0:
            continue
        c_t = np.abs(BD_EVOLUTIONS[law](c0, gamma1, gamma2, t_star).as_array())
        other = 3 - i - j
        found.append(AnalyticCrossing(float(t_star), (i, j), bool(c_t[i] > c_t[other])))
    return sorted(found, key=lambda c: c.t_star)


def _richardson(slopes: Sequence[float], steps: Sequence[float]) -> List[float]:
    """Cancel the first-order error term between consecutive steps"""
    extrapolated = []
    for k in range(1, len(slopes)):
        ratio = steps[k - 1] / steps[k]
        extrapolated.append((ratio * slopes[k] - slopes[k - 1]) / (ratio - 1.0))
    return extrapolated


def derivative_jump(
    f: Callable[[float], float],
    t_star: float,
    h_schedule: Sequence[float] = DEFAULT_H_SCHEDULE,
    scale: float = 1.0,
) -> DerivativeJump:
    """
    Left and right slopes of f at t_star.

    One-sided differences at steps h_k = h_schedule[k] * scale are
    combined by Richardson extrapolation using the ratio of consecutive
    steps. The noise floor is the larger of the round-off bound and the
    spread between the last two extrapolations on either side.

    Args:
        f: curve
        t_star: evaluation point
        h_schedule: decreasing relative steps
        scale: time scale of the curve

    Returns:
        DerivativeJump
    """
    steps = [h * scale for h in h_schedule]
    if len(steps) < 3 or any(b >= a for a, b in zip(steps[:-1], steps[1:])):
        raise ValueError("h_schedule needs at least three decreasing steps")
    f0 = f(t_star)
    left = [(f0 - f(t_star - h)) / h for h in steps]
    right = [(f(t_star + h) - f0) / h for h in steps]
    left_r, right_r = _richardson(left, steps), _richardson(right, steps)
    ratio = steps[-2] / steps[-1]

    roundoff = 4.0 * np.finfo(float).eps * max(abs(f0), 1e-300) / steps[-1] * ratio / (ratio - 1.0)
    spread = max(abs(left_r[-1] - left_r[-2]), abs(right_r[-1] - right_r[-2]))
    result = DerivativeJump(float(left_r[-1]), float(right_r[-1]), float(max(roundoff, spread)))
    logger.debug(
        "Slopes at %.12g: left %.6g, right %.6g, floor %.3e",
        t_star, result.left, result.right, result.noise_floor,
    )
    return result
