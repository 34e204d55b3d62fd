import numpy as np
import pytest

from edgesym import DEFAULT_TOLERANCE, gallery


@pytest.fixture
def tol():
    return DEFAULT_TOLERANCE


@pytest.fixture
def cube():
    return gallery("cube")


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
