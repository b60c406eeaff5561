import random

import pytest

import sepidem as sd


@pytest.fixture
def m2():
    return sd.matrix_algebra(2, with_star=True)


@pytest.fixture
def m3():
    return sd.matrix_algebra(3, with_star=True)


@pytest.fixture
def e0_2():
    return sd.standard_idempotent(2)


@pytest.fixture
def r75(m2):
    """diag(7/5, 1/5); satisfies tr(r* r) = 2, the involutive normalization."""
    return sd.element_from_matrix(m2, [["7/5", 0], [0, "1/5"]])


@pytest.fixture
def involutive_75(r75):
    return sd.involutive_twisted_idempotent(r75)


@pytest.fixture
def rng():
    return random.Random(20260810)


def unit_index(a, i, j, block=0):
    return a.unit_index(block, i, j)
