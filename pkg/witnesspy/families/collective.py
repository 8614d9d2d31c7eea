#!/usr/bin/python
# -*- coding: utf-8 -*-
#
# Collective-decay family manager
#
# Copyright: (c) 2024, bpmconsultag
# MIT License

"""
Collective-decay family manager
"""

from dataclasses import dataclass
from typing import Any, Mapping

import numpy as np

from ..collective import (
    CollectiveCoefficients,
    CollectiveParams,
    collective_coefficients,
    collective_eigs_A,
    collective_state,
)
from ..discord import collective_discord_terms, info_discord_collective
from ..qstate import DensityMatrix
from .base import BaseFamily


@dataclass(frozen=True)
class CollectiveModel:
    params: CollectiveParams
    coefficients: CollectiveCoefficients


class Collective(BaseFamily):
    """
    Two atoms in a common vacuum, started in alpha |ee> + sqrt(1 - alpha^2) |gg>.

    Grid times are the dimensionless v = gamma t.
    """

    name = "collective"
    units = "upsilon"
    schema = {"alpha": "float", "gamma": "float", "r12": "float", "omega": "float"}
    optional = ("gamma", "omega")
    supports_closed_form = True

    def resolve(self, params: Mapping[str, Any]) -> CollectiveModel:
        p = CollectiveParams(
            alpha=float(params["alpha"]),
            gamma=float(params.get("gamma", 1.0)),
            r12=float(params["r12"]),
            omega=float(params.get("omega", 0.0)),
        )
        return CollectiveModel(p, collective_coefficients(p))

    def time_scale(self, model: CollectiveModel) -> float:
        return 1.0 / model.params.gamma

    def state(self, model: CollectiveModel, u: float) -> DensityMatrix:
        return collective_state(model.params, u * self.time_scale(model), model.coefficients)

    def a_eigenvalues(self, model: CollectiveModel, u: float) -> np.ndarray:
        return np.array(collective_eigs_A(self.state(model, u)))

    def closed_form_info(self, model: CollectiveModel, u: float) -> float:
        return info_discord_collective(self.state(model, u))[0]

    def closed_form_branches(self, model: CollectiveModel, u: float) -> np.ndarray:
        return np.array(collective_discord_terms(self.state(model, u)).s_branches)
