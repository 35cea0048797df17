import numpy as np
import pytest

from data.models import s1_model, s2_model


@pytest.fixture
def rng():
    return np.random.default_rng(42)


@pytest.fixture(scope="session")
def s1():
    return s1_model()


@pytest.fixture(scope="session")
def s2():
    return s2_model()
