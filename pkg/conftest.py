import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from spin_unruh.entanglement import StateParams


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def random_params(rng):
    """
    Factory for random normalized StateParams, mu comes out real and positive
    """
    def _make():
        amps = rng.normal(size=5) + 1j * rng.normal(size=5)
        return StateParams.from_amplitudes(*amps)
    return _make
