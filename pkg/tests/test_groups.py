import numpy as np
import pytest

from isotropy import groups, index, realize, subsets
from isotropy.errors import CapExceededError, PreconditionError
from isotropy.ring import parse_ring


def realization_of(name, ring_spec):
    return realize.realize(index.parse_index(name), parse_ring(ring_spec))


@pytest.mark.parametrize("name,ring_spec,order", [("1A(1,1,1)", "F2", 6), ("1A(1,1,1)", "F3", 24),
                                                  ("1A(2,2,1)", "F2", 168), ("C(2,2,1)", "F2", 720),
                                                  ("1A(1,1,1)", "Z4", 48)])
def test_point_group_orders(name, ring_spec, order):
    group = groups.point_group(realization_of(name, ring_spec))
    assert group.complete
    assert len(group) == order


def test_point_group_matches_filter():
    r = realization_of("1A(1,1,1)", "F3")
    assert groups.point_group(r).equals(groups.filter_group(r))


def test_elementary_group(a2_f2):
    assert groups.elementary_group(a2_f2).equals(groups.point_group(a2_f2))


def test_cap_truncates(a2_f2):
    group = groups.generate(a2_f2, a2_f2.all_generators(), cap=10, provenance="test")
    assert not group.complete
    assert len(group) > 10
    assert group.subset_of(groups.point_group(a2_f2))
    with pytest.raises(PreconditionError):
        group.equals(group)
    with pytest.raises(CapExceededError):
        groups.filter_group(a2_f2, cap=100)


def test_unipotent_points(a2_f2):
    upper = groups.points_of(a2_f2, subsets.positive(a2_f2.relative))
    assert len(upper) == 8
    assert upper.notes["product_decomposition"]
    with pytest.raises(PreconditionError):
        groups.points_of(a2_f2, subsets.RootSubset(a2_f2.relative, a2_f2.relative.basis))


def test_centralizer_of_generators(a2_f2):
    center = groups.centralizer(groups.point_group(a2_f2), a2_f2.all_generators())
    assert len(center) == 1


def test_set_algebra(a2_f2):
    alpha, beta = a2_f2.relative.basis
    ring = a2_f2.ring
    ua = np.unique(ring.encode(a2_f2.root_points(alpha)))
    ub = np.unique(ring.encode(a2_f2.root_points(beta)))
    product = groups.set_product(a2_f2, ua, ub)
    assert len(product) == 4
    assert len(groups.intersect(ua, ub)) == 1
    assert len(groups.product_of(a2_f2, ua, ub, ua)) == len(groups.set_product(a2_f2, product, ua))
    with pytest.raises(CapExceededError):
        groups.set_product(a2_f2, ua, ub, cap=3)
    comms = groups.commutator_set(a2_f2, ua, a2_f2.t(beta, [1]))
    assert len(comms) == 2


def test_random_words_are_seeded(c2_f2):
    gens = c2_f2.all_generators()
    first = groups.random_words(c2_f2, gens, 50, seed=7)
    second = groups.random_words(c2_f2, gens, 50, seed=7)
    assert np.array_equal(first, second)
    assert c2_f2.in_group(first).all()


@pytest.mark.parametrize("name,ring_spec", [("1A(1,1,1)", "Z4"), ("1A(2,2,1)", "F2"), ("1A(1,1,1)", "Z2xZ3")])
def test_gauss_decomposition(name, ring_spec):
    assert groups.gauss_check(realization_of(name, ring_spec))


def test_gauss_decomposition_of_parabolic(a2_f2):
    parabolic = subsets.standard_parabolic(a2_f2.relative, [1])
    assert groups.gauss_check(a2_f2, parabolic)


def test_subgroup_intersection(a2_f2):
    rel = a2_f2.relative
    assert groups.subgroup_intersection_check(a2_f2, subsets.positive(rel), subsets.standard_parabolic(rel, [1]))
    with pytest.raises(PreconditionError):
        groups.subgroup_intersection_check(realization_of("1A(1,1,1)", "Z2xZ3"), subsets.positive(rel),
                                           subsets.positive(rel))


@pytest.mark.slow
def test_large_point_group():
    assert len(groups.point_group(realization_of("C(2,2,1)", "F3"))) == 51840
