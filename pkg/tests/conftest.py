#!/usr/bin/python
# -*- coding: utf-8 -*-
#
# Shared fixtures for the witnesspy test suite
#
# Copyright: (c) 2024, bpmconsultag
# MIT License

import numpy as np
import pytest

from witnesspy.collective import CollectiveParams
from witnesspy.qstate import (
    BellDiagonalParams,
    DensityMatrix,
    bell_diagonal,
    bell_diagonal_spectrum,
)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def bell_state():
    """|Phi+> = (|ee> + |gg>) / sqrt(2)"""
    psi = np.array([1.0, 0.0, 0.0, 1.0]) / np.sqrt(2.0)
    return DensityMatrix.from_array(np.outer(psi, psi.conj()))


@pytest.fixture
def werner_like():
    return bell_diagonal(BellDiagonalParams(0.5, -0.3, 0.4))


@pytest.fixture
def fig5_params():
    return CollectiveParams(alpha=float(np.sqrt(0.9)), gamma=1.0, r12=0.6737, omega=0.0)


@pytest.fixture
def random_bell_diagonal(rng):
    """Sampler of uniformly random physical Bell-diagonal coefficients"""

    def sample() -> BellDiagonalParams:
        while True:
            c = BellDiagonalParams(*rng.uniform(-1.0, 1.0, size=3))
            if min(bell_diagonal_spectrum(c)) >= 0.0:
                return c

    return sample
