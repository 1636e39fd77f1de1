from hypothesis import assume, given, settings, strategies as st
import numpy as np
import pytest

from isotropy.errors import ConstructionError, RingError
from isotropy.ring import FiniteRing, make_ring, parse_ring


def test_parse_ring():
    assert parse_ring("Z4").moduli == (4,)
    assert parse_ring("F5").is_field()
    ring = parse_ring("Z2xZ3")
    assert ring.moduli == (2, 3) and ring.order == 6 and ring.factors == 2
    assert not ring.is_local() and parse_ring("Z9").is_local()
    for spec in ("F4", "Q5", "Z", "Z2xx"):
        with pytest.raises(ConstructionError):
            parse_ring(spec)


def test_bad_moduli():
    with pytest.raises(ConstructionError):
        FiniteRing([1])
    with pytest.raises(ConstructionError):
        FiniteRing([])


@pytest.mark.parametrize("spec", ["Z4", "F5", "Z2xZ3", "Z6"])
def test_axioms(spec):
    assert parse_ring(spec).check_axioms()


def test_units_and_two():
    z4 = parse_ring("Z4")
    assert z4.units() == [(1,), (3,)]
    assert not z4.two_is_unit()
    assert parse_ring("F3").two_is_unit()
    assert not parse_ring("Z2xZ3").two_is_unit()
    with pytest.raises(RingError):
        z4.inverse((2,))
    with pytest.raises(RingError):
        z4.element((4,))


def test_elements_of_products():
    ring = parse_ring("Z2xZ3")
    assert len(ring.elements()) == 6
    assert ring.element(5) == (1, 2)
    assert ring.mul((1, 2), (1, 2)) == (1, 1)
    assert ring.vectors(2).shape == (36, 2, 2)


def test_determinant():
    z4 = parse_ring("Z4")
    assert z4.det(z4.matrix([[2, 1], [1, 2]])) == (3,)
    f5 = parse_ring("F5")
    assert f5.det(f5.matrix([[1, 2, 3], [0, 1, 4], [0, 0, 2]])) == (2,)
    assert f5.det(f5.matrix([[0, 1], [1, 0]])) == (4,)


def test_singular_inverse():
    z4 = parse_ring("Z4")
    with pytest.raises(RingError):
        z4.mat_inv(z4.matrix([[2, 0], [0, 1]]))


@given(st.lists(st.integers(0, 4), min_size=9, max_size=9))
@settings(max_examples=50, deadline=None)
def test_inverse_over_f5(entries):
    f5 = parse_ring("F5")
    matrix = f5.matrix([entries[0:3], entries[3:6], entries[6:9]])
    assume(f5.is_unit(f5.det(matrix)))
    product = f5.mat_mul(matrix, f5.mat_inv(matrix))
    assert np.array_equal(product, f5.identity(3))


@given(st.lists(st.integers(0, 5), min_size=8, max_size=8))
@settings(max_examples=50, deadline=None)
def test_determinant_is_multiplicative(entries):
    ring = parse_ring("Z2xZ3")
    a = ring.matrix([[entries[0], entries[1]], [entries[2], entries[3]]])
    b = ring.matrix([[entries[4], entries[5]], [entries[6], entries[7]]])
    assert ring.det(ring.mat_mul(a, b)) == ring.mul(ring.det(a), ring.det(b))


def test_all_matrices_in_code_order():
    f2 = parse_ring("F2")
    batch = f2.all_matrices(2)
    assert batch.shape == (16, 1, 2, 2)
    assert np.array_equal(f2.encode(batch), np.arange(16))
    invertible = [m for m in batch if f2.is_unit(f2.det(m))]
    assert len(invertible) == 6


def test_code_overflow():
    with pytest.raises(RingError):
        parse_ring("Z7").code_weights(6)


def test_make_ring():
    ring = make_ring([2, 3])
    assert ring.spec == "Z2xZ3"
    assert ring.order == 6
    assert not ring.is_local()
    with pytest.raises(ConstructionError):
        make_ring([1])
