#!/usr/bin/python
# -*- coding: utf-8 -*-
#
# State-family managers for scenario runs
#
# Copyright: (c) 2024, bpmconsultag
# MIT License

"""
State-family managers for scenario runs
"""

from .base import BaseFamily
from .bell_diagonal import BellDiagonalFamily, Colored, PhaseBitflip, PhasePhase
from .amplitude_damping import AmplitudeDamping
from .collective import Collective

FAMILIES = {
    family.name: family
    for family in (PhaseBitflip, PhasePhase, Colored, AmplitudeDamping, Collective)
}

__all__ = [
    "BaseFamily",
    "BellDiagonalFamily",
    "PhaseBitflip",
    "PhasePhase",
    "Colored",
    "AmplitudeDamping",
    "Collective",
    "FAMILIES",
]
