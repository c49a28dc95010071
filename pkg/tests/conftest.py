import numpy as np
import pytest

from tolalg.relation import ToleranceRelation

PATH3_EDGES = [(1, 2), (2, 3)]


@pytest.fixture
def path3():
    """1 ~ 2 ~ 3 with 1 !~ 3."""
    return ToleranceRelation(3, PATH3_EDGES)


@pytest.fixture
def rng():
    return np.random.default_rng(20261015)
