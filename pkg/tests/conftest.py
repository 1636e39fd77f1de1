import pytest

from isotropy import index, realize
from isotropy.ring import parse_ring


def realization_of(name, ring_spec):
    return realize.realize(index.parse_index(name), parse_ring(ring_spec))


@pytest.fixture
def a2_f2():
    return realization_of("1A(2,2,1)", "F2")


@pytest.fixture
def a2_f3():
    return realization_of("1A(2,2,1)", "F3")


@pytest.fixture
def c2_f2():
    return realization_of("C(2,2,1)", "F2")


@pytest.fixture
def bc2_f2():
    return realization_of("2A(4,2,1)", "F2")
