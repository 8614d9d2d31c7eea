#!/usr/bin/python
# -*- coding: utf-8 -*-
#
# Bell-diagonal state families
#
# Copyright: (c) 2024, bpmconsultag
# MIT License

"""
Bell-diagonal state families

The state stays Bell-diagonal under each evolution, so A = diag(c_i^2)
and every quantity follows from the three coefficients.
"""

from dataclasses import dataclass
from typing import Any, Mapping

import numpy as np

from ..channels import (
    ColoredNoiseParams,
    evolve_bd_colored,
    evolve_bd_phase_bitflip,
    evolve_bd_phase_phase,
)
from ..discord import binary_entropy, info_discord_bell_diagonal
from ..qstate import BellDiagonalParams, DensityMatrix, bell_diagonal
from .base import BaseFamily


@dataclass(frozen=True)
class MarkovBellDiagonal:
    c0: BellDiagonalParams
    gamma1: float
    gamma2: float


@dataclass(frozen=True)
class ColoredBellDiagonal:
    c0: BellDiagonalParams
    noise_a: ColoredNoiseParams
    noise_b: ColoredNoiseParams


class BellDiagonalFamily(BaseFamily):
    """
    Shared evaluation for Bell-diagonal families.

    Subclasses provide `coefficients(model, u)`.
    """

    supports_closed_form = True

    def coefficients(self, model, u: float) -> BellDiagonalParams:
        raise NotImplementedError

    def state(self, model, u: float) -> DensityMatrix:
        return bell_diagonal(self.coefficients(model, u))

    def correlation(self, model, u: float) -> np.ndarray:
        return np.diag(self.coefficients(model, u).as_array() ** 2)

    def a_eigenvalues(self, model, u: float) -> np.ndarray:
        return self.coefficients(model, u).as_array() ** 2

    def geometric(self, model, u: float) -> float:
        squares = self.a_eigenvalues(model, u)
        return 0.25 * float(np.sum(squares) - np.max(squares))

    def info_axes(self, model, u: float) -> np.ndarray:
        c = np.abs(self.coefficients(model, u).as_array())
        return binary_entropy(0.5 * (1.0 + c))

    def closed_form_info(self, model, u: float) -> float:
        return info_discord_bell_diagonal(self.coefficients(model, u))

    def closed_form_branches(self, model, u: float) -> np.ndarray:
        return self.info_axes(model, u)


class PhaseBitflip(BellDiagonalFamily):
    """Phase damping on A, bit flip on B, both Markovian"""

    name = "bell-diagonal-phase-bitflip"
    schema = {"c0": "vector3", "gamma1": "float", "gamma2": "float"}

    def resolve(self, params: Mapping[str, Any]) -> MarkovBellDiagonal:
        self._non_negative(params, ("gamma1", "gamma2"))
        c0 = BellDiagonalParams.from_sequence(params["c0"])
        # fail early on an unphysical initial state
        bell_diagonal(c0)
        return MarkovBellDiagonal(c0, float(params["gamma1"]), float(params["gamma2"]))

    def coefficients(self, model: MarkovBellDiagonal, u: float) -> BellDiagonalParams:
        return evolve_bd_phase_bitflip(model.c0, model.gamma1, model.gamma2, u)


class PhasePhase(PhaseBitflip):
    """Phase damping on both qubits"""

    name = "bell-diagonal-phase-phase"

    def coefficients(self, model: MarkovBellDiagonal, u: float) -> BellDiagonalParams:
        return evolve_bd_phase_phase(model.c0, model.gamma1, model.gamma2, u)


class Colored(BellDiagonalFamily):
    """
    Colored-noise phase flip on A and colored-noise bit flip on B.

    Grid times are the dimensionless v = t / (2 tau1).
    """

    name = "bell-diagonal-colored"
    units = "upsilon"
    schema = {
        "c0": "vector3",
        "a1": "float",
        "a2": "float",
        "tau1": "float",
        "tau2": "float",
    }

    def resolve(self, params: Mapping[str, Any]) -> ColoredBellDiagonal:
        c0 = BellDiagonalParams.from_sequence(params["c0"])
        bell_diagonal(c0)
        return ColoredBellDiagonal(
            c0,
            ColoredNoiseParams(float(params["a1"]), float(params["tau1"])),
            ColoredNoiseParams(float(params["a2"]), float(params["tau2"])),
        )

    def time_scale(self, model: ColoredBellDiagonal) -> float:
        return 2.0 * model.noise_a.tau

    def coefficients(self, model: ColoredBellDiagonal, u: float) -> BellDiagonalParams:
        return evolve_bd_colored(model.c0, model.noise_a, model.noise_b, u * self.time_scale(model))
