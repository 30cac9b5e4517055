"""
Shared fixtures for the simulator test suite.
"""

import numpy as np
import pytest

from src.services.hilbert.gates import haar_state
from src.services.boundary.schedule import BoundaryPair


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def random_pair(rng: np.random.Generator):
    """Factory for Haar-random boundary pairs on n qubits."""

    def make(n_qubits: int) -> BoundaryPair:
        return BoundaryPair(haar_state(n_qubits, rng), haar_state(n_qubits, rng))

    return make
