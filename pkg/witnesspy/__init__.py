#!/usr/bin/python
# -*- coding: utf-8 -*-
#
# witnesspy - Sudden changes of quantum discord in decohering two-qubit states
#
# This library computes geometric and information discord of two-qubit
# states under local and collective decoherence, and locates the instants
# where the discord changes abruptly through eigenvalue crossings of the
# correlation matrix A = x x^T + T T^T.
#
# Copyright: (c) 2024, bpmconsultag
# MIT License

"""
witnesspy - Sudden changes of quantum discord in decohering two-qubit states

This library computes geometric and information discord of two-qubit
states under local and collective decoherence, and locates the instants
where the discord changes abruptly through eigenvalue crossings of the
correlation matrix A = x x^T + T T^T.
"""

from .runner import ScenarioRunner, RunReport
from .scenario import Scenario, Window, load_scenario
from .report import emit
from .qstate import (
    DensityMatrix,
    PauliDecomposition,
    BellDiagonalParams,
    validate,
    pauli_decompose,
    pauli_compose,
    bell_diagonal,
)
from .discord import (
    OptimizerOptions,
    geometric_discord,
    info_discord_numeric,
    info_discord_bell_diagonal,
    info_discord_collective,
    audit_collective_discord,
)
from .exceptions import (
    WitnessException,
    WitnessNumericalError,
    NonPhysicalParamsError,
    OutOfRangeError,
    DomainError,
    DegenerateCouplingError,
    StructureMismatchError,
    StepSizeTooLargeError,
    NotAProbabilityVectorError,
    GridTooCoarseError,
    NoSignChangeError,
    ScenarioConfigError,
    ScenarioParseError,
    UnknownScenarioError,
    ScenarioIOError,
)

__version__ = "0.1.0"
__all__ = [
    "ScenarioRunner",
    "RunReport",
    "Scenario",
    "Window",
    "load_scenario",
    "emit",
    "DensityMatrix",
    "PauliDecomposition",
    "BellDiagonalParams",
    "validate",
    "pauli_decompose",
    "pauli_compose",
    "bell_diagonal",
    "OptimizerOptions",
    "geometric_discord",
    "info_discord_numeric",
    "info_discord_bell_diagonal",
    "info_discord_collective",
    "audit_collective_discord",
    "WitnessException",
    "WitnessNumericalError",
    "NonPhysicalParamsError",
    "OutOfRangeError",
    "DomainError",
    "DegenerateCouplingError",
    "StructureMismatchError",
    "StepSizeTooLargeError",
    "NotAProbabilityVectorError",
    "GridTooCoarseError",
    "NoSignChangeError",
    "ScenarioConfigError",
    "ScenarioParseError",
    "UnknownScenarioError",
    "ScenarioIOError",
]
