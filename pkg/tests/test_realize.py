from hypothesis import given, settings, strategies as st
import numpy as np
import pytest

from isotropy import index, realize
from isotropy.errors import PreconditionError, UnsupportedError
from isotropy.ring import parse_ring


def realization_of(name, ring_spec):
    return realize.realize(index.parse_index(name), parse_ring(ring_spec))


def test_model_shapes(a2_f2, c2_f2, bc2_f2):
    assert (a2_f2.size, a2_f2.kind) == (3, "sl")
    assert (c2_f2.size, c2_f2.kind) == (4, "sp")
    assert bc2_f2.relative_type() == "BC_2"
    assert bc2_f2.strip_widths() == [1, 1, 1, 1, 1]


def test_unsupported_instances():
    with pytest.raises(UnsupportedError):
        realization_of("B(2,1)", "F2")
    with pytest.raises(UnsupportedError):
        realization_of("1D(4,1,1)", "Z4")
    with pytest.raises(UnsupportedError):
        realize.realize(index.parse_index("E_{8,2}^{66}"), parse_ring("F3"))


def test_form_is_preserved_by_root_elements(c2_f2):
    assert c2_f2.in_group(c2_f2.all_generators()).all()
    assert c2_f2.in_group(c2_f2.identity())


def test_orthogonal_model():
    r = realization_of("B(2,1)", "F3")
    assert r.size == 5 and r.kind == "so"
    assert r.in_group(r.all_generators()).all()
    for alpha in r.relative.roots:
        points = r.root_points(alpha)
        assert r.in_root_subgroup(alpha, points).all()


def test_determinant_condition(a2_f3):
    ring = a2_f3.ring
    assert not a2_f3.in_group(ring.scalar_matrix(2, 3))


@given(st.integers(0, 4), st.integers(0, 4))
@settings(max_examples=25, deadline=None)
def test_root_subgroup_is_additive(x, y):
    r = realization_of("1A(2,2,1)", "F5")
    alpha = r.relative.basis[0]
    product = r.multiply(r.t(alpha, [x]), r.t(alpha, [y]))
    assert np.array_equal(product, r.t(alpha, [(x + y) % 5]))
    assert np.array_equal(r.decode(alpha, product), np.array([[(x + y) % 5]]))


def test_decode_rejects_other_subgroups(a2_f3):
    alpha, beta = a2_f3.relative.basis
    assert a2_f3.decode(alpha, a2_f3.t(beta, [1])) is None
    assert a2_f3.decode(alpha, a2_f3.identity()) is not None


def test_inverse_and_commutator(c2_f2):
    gens = c2_f2.all_generators()
    products = c2_f2.multiply(gens, c2_f2.inverse(gens))
    assert c2_f2.ring.is_identity(products).all()
    alpha = c2_f2.relative.basis[0]
    g = c2_f2.t(alpha, [1])
    assert c2_f2.ring.is_identity(c2_f2.commutator(g, g))


def test_bracket(a2_f3):
    alpha, beta = a2_f3.relative.basis
    z = a2_f3.bracket(alpha, [[1]], beta, [[1]])
    assert z is not None and z.any()
    assert a2_f3.bracket(alpha, [[1]], alpha, [[1]]) is None


def test_levi_and_center(a2_f3):
    assert len(a2_f3.L_points()) == 4
    assert len(a2_f3.center_points()) == 1
    assert a2_f3.in_L(a2_f3.L_points()).all()
    assert len(realization_of("1A(1,1,1)", "F3").center_points()) == 2


def test_nondegeneracy(a2_f3, bc2_f2):
    alpha, beta = a2_f3.relative.basis
    assert a2_f3.nondegeneracy_check(alpha, beta) == ("long-obtuse", True)
    with pytest.raises(PreconditionError):
        a2_f3.nondegeneracy_configuration(alpha, -alpha)


def test_weyl_elements(a2_f3):
    for alpha in a2_f3.relative.basis:
        w = a2_f3.weyl_element(alpha)
        assert a2_f3.in_group(w)
        assert a2_f3.reflects(w, alpha)


def test_two_step_module(bc2_f2):
    rel = bc2_f2.relative
    ultrashort = [a for a in rel.roots if rel.length_class[a] == "ultrashort"]
    assert ultrashort
    module = bc2_f2.two_step_module(ultrashort[0])
    assert module.dims == (2, 1)
    results = realize.two_step_axioms(module)
    assert all(results.values()), results
    long_root = next(a for a in rel.roots if rel.length_class[a] == "long")
    with pytest.raises(PreconditionError):
        bc2_f2.two_step_module(long_root)


def test_commutator_formula(a2_f2):
    alpha, beta = a2_f2.relative.basis
    assert a2_f2.chevalley_commutator_check(alpha, beta)
    with pytest.raises(PreconditionError):
        a2_f2.chevalley_commutator_check(alpha, -alpha)


def test_descriptor(bc2_f2):
    data = bc2_f2.descriptor()
    assert data["N"] == 5 and data["kind"] == "sl" and data["relative"] == "BC_2"
    assert len(data["root_spaces"]) == 12
