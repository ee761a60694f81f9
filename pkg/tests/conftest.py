import numpy as np
import pytest

from osculant.curves import build_model


@pytest.fixture(scope="session")
def trig():
    return {n: build_model("trig_convex", n) for n in range(2, 7)}


@pytest.fixture(scope="session")
def rational():
    return {n: build_model("rational_normal", n) for n in range(2, 7)}


@pytest.fixture
def rng():
    return np.random.default_rng(20260823)
