import random

import pytest

from sdgr import make_params
from sdgr.skewring import SkewRing


@pytest.fixture(scope="session")
def toy_ring() -> SkewRing:
    return SkewRing(3, 3)


@pytest.fixture(scope="session")
def p19_params():
    return make_params("p19", seed=1001)


@pytest.fixture(scope="session")
def toy_params():
    return make_params("toy", seed=1002)


@pytest.fixture()
def rng() -> random.Random:
    return random.Random(424242)
