import numpy as np
import pytest

from qctradeoff import ensembles


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def pair():
    return ensembles.pair_ensemble()


@pytest.fixture
def bb84():
    return ensembles.bb84_ensemble()


@pytest.fixture
def three_state():
    return ensembles.three_state_ensemble()
