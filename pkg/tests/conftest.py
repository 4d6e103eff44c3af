import numpy as np
import pytest

from lagt.fixtures import source_signal


@pytest.fixture(scope="session")
def source():
    """Test-1 smooth fixture: f0=30, g=4, t0=0.5, h_t=0.002, T=1."""
    return source_signal()


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(1234)
