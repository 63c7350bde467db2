import numpy as np
import pytest

from qibench.validation import random_physical_cov


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def random_cov():
    """Factory for random physical covariance matrices."""

    def make(rng, modes):
        return random_physical_cov(rng, modes)

    return make
