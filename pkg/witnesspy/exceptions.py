#!/usr/bin/python
# -*- coding: utf-8 -*-
#
# Exceptions for the witnesspy library
#
# Copyright: (c) 2024, bpmconsultag
# MIT License

"""
Exceptions for the witnesspy library
"""


class WitnessException(Exception):
    """Base exception for all witnesspy errors"""
    pass


class WitnessNumericalError(WitnessException):
    """Raised when a computation cannot produce a trustworthy number"""
    pass


class NonPhysicalParamsError(WitnessNumericalError):
    """Raised when parameters compose a matrix that is not a density matrix"""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class OutOfRangeError(WitnessNumericalError):
    """Raised when a probability or rate lies outside its admissible range"""
    pass


class DomainError(WitnessNumericalError):
    """Raised when a function is evaluated outside its domain"""
    pass


class DegenerateCouplingError(WitnessNumericalError):
    """Raised when collective rates make the amplitude coefficients diverge"""
    pass


class StructureMismatchError(WitnessNumericalError):
    """Raised when a state lacks the structure a closed form requires"""
    pass


class StepSizeTooLargeError(WitnessNumericalError):
    """Raised when the master-equation integrator drifts off unit trace"""

    def __init__(self, message, drift=None):
        super().__init__(message)
        self.drift = drift


class NotAProbabilityVectorError(WitnessNumericalError):
    """Raised when entropy is requested for values that are not probabilities"""
    pass


class GridTooCoarseError(WitnessNumericalError):
    """Raised when branch matching on a time grid is ambiguous"""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class NoSignChangeError(WitnessNumericalError):
    """Raised when a root bracket does not enclose a sign change"""
    pass


class ScenarioConfigError(WitnessException):
    """Raised when a scenario cannot be resolved from its configuration"""
    pass


class ScenarioParseError(ScenarioConfigError):
    """Raised when a scenario config is malformed"""

    def __init__(self, message, line=None, field=None):
        super().__init__(message)
        self.line = line
        self.field = field

    def __str__(self):
        message = super().__str__()
        where = []
        if self.line is not None:
            where.append(f"line {self.line}")
        if self.field:
            where.append(f"field '{self.field}'")
        if where:
            return f"{message} ({', '.join(where)})"
        return message


class UnknownScenarioError(ScenarioConfigError):
    """Raised when a built-in scenario name is not known"""
    pass


class ScenarioIOError(WitnessException):
    """Raised when run artifacts cannot be written"""
    pass
