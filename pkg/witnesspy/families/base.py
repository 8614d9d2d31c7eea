#!/usr/bin/python
# -*- coding: utf-8 -*-
#
# Base family class for all state families
#
# Copyright: (c) 2024, bpmconsultag
# MIT License

"""
Base family class for all state families
"""

from typing import Any, Dict, Mapping, Sequence, Tuple

import numpy as np

from ..discord import (
    OptimizerOptions,
    axis_conditional_entropies,
    axis_info_discord,
    correlation_matrix,
    cubic_eigenvalues,
    geometric_discord,
    info_discord_numeric,
)
from ..exceptions import OutOfRangeError
from ..qstate import DensityMatrix, pauli_decompose


class BaseFamily:
    """
    Base class for all state-family managers.

    A family turns a parameter mapping into a model and evaluates states
    and discord quantities of that model at grid times. Grid times are in
    the family's `units`; `time_scale` converts them to seconds.
    """

    name = None
    units = "s"
    # parameter name -> "vector3" | "float"
    schema: Dict[str, str] = {}
    optional: Tuple[str, ...] = ()
    supports_closed_form = False

    def __init__(self, runner=None):
        """
        Initialize the family manager.

        Args:
            runner: ScenarioRunner instance, source of run-wide options
        """
        self.runner = runner

    @property
    def optimizer(self) -> OptimizerOptions:
        if self.runner is not None:
            return self.runner.optimizer
        return OptimizerOptions()

    def resolve(self, params: Mapping[str, Any]) -> Any:
        """
        Build the family model from a parameter mapping.

        Args:
            params: parameter values keyed as in `schema`

        Returns:
            Family-specific model object
        """
        raise NotImplementedError

    def time_scale(self, model) -> float:
        """Seconds per grid unit"""
        return 1.0

    def state(self, model, u: float) -> DensityMatrix:
        raise NotImplementedError

    def correlation(self, model, u: float) -> np.ndarray:
        return correlation_matrix(pauli_decompose(self.state(model, u))).entries

    def a_eigenvalues(self, model, u: float) -> np.ndarray:
        return np.array(cubic_eigenvalues(self.correlation(model, u)).roots)

    def geometric(self, model, u: float) -> float:
        return geometric_discord(self.state(model, u))

    def info_axes(self, model, u: float) -> np.ndarray:
        return axis_conditional_entropies(self.state(model, u), self.optimizer.side)

    def axis_info(self, model, u: float) -> float:
        return axis_info_discord(self.state(model, u), self.optimizer.side)

    def info_numeric(self, model, u: float) -> float:
        return info_discord_numeric(self.state(model, u), self.optimizer)

    def closed_form_info(self, model, u: float) -> float:
        raise NotImplementedError(f"Family '{self.name}' has no closed-form information discord")

    def closed_form_branches(self, model, u: float) -> np.ndarray:
        raise NotImplementedError(f"Family '{self.name}' has no closed-form branches")

    @staticmethod
    def _non_negative(params: Mapping[str, Any], keys: Sequence[str]):
        for key in keys:
            if params[key] < 0:
                raise OutOfRangeError(f"Parameter '{key}' must be non-negative, got {params[key]}")
