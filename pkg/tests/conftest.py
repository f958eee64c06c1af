"""Shared fixtures"""

import pytest

from entanglement import BeamSplitterConfig
from fock_core import HARMONIC, QUADRATIC, make_spectrum


@pytest.fixture
def tol():
    return 1e-9


@pytest.fixture
def lq_model():
    return make_spectrum("linear_quadratic", 1.0, 1.0)


@pytest.fixture
def all_models(lq_model):
    return [HARMONIC, QUADRATIC, lq_model]


@pytest.fixture
def balanced():
    """50:50 beam splitter"""
    return BeamSplitterConfig()
