#!/usr/bin/python
# -*- coding: utf-8 -*-
#
# Bell-diagonal state under independent amplitude damping
#
# Copyright: (c) 2024, bpmconsultag
# MIT License

"""
Bell-diagonal state under independent amplitude damping
"""

from dataclasses import dataclass
from typing import Any, Mapping

from ..channels import evolve_amplitude_damping
from ..qstate import BellDiagonalParams, DensityMatrix, bell_diagonal
from .base import BaseFamily


@dataclass(frozen=True)
class AmplitudeDampingModel:
    rho0: DensityMatrix
    gamma_a: float
    gamma_b: float


class AmplitudeDamping(BaseFamily):
    """
    Manager for the amplitude-damping family.

    There is no analytic law for this family; states come from the Kraus
    sum, and the generic Pauli pipeline gives A and the discords.
    """

    name = "amplitude-damping"
    schema = {"c0": "vector3", "gamma_a": "float", "gamma_b": "float"}

    def resolve(self, params: Mapping[str, Any]) -> AmplitudeDampingModel:
        self._non_negative(params, ("gamma_a", "gamma_b"))
        rho0 = bell_diagonal(BellDiagonalParams.from_sequence(params["c0"]))
        return AmplitudeDampingModel(rho0, float(params["gamma_a"]), float(params["gamma_b"]))

    def state(self, model: AmplitudeDampingModel, u: float) -> DensityMatrix:
        return evolve_amplitude_damping(model.rho0, model.gamma_a, model.gamma_b, u)
