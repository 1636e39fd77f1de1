import pytest

from isotropy import index, interpret, realize
from isotropy.errors import SearchBudgetError, UnsupportedError
from isotropy.ring import parse_ring


def realization_of(name, ring_spec):
    return realize.realize(index.parse_index(name), parse_ring(ring_spec))


@pytest.mark.parametrize("ring_spec,order", [("Z2", 2), ("Z3", 3), ("Z4", 4), ("Z2xZ3", 6)])
def test_ktilde_recovers_ring(ring_spec, order):
    kt = interpret.build_ktilde(realization_of("1A(2,2,1)", ring_spec))
    assert len(kt) == order
    assert interpret.certify_ring_iso(kt)


def test_certificate_checks(a2_f3):
    kt = interpret.build_ktilde(a2_f3)
    checks = interpret.certificate(kt)
    assert set(checks) == {"size", "scalar", "identity", "addition", "multiplication", "determined",
                           "commutative", "associative", "unit"}
    assert all(checks.values())


def test_scalar_families(a2_f3):
    kt = interpret.build_ktilde(a2_f3)
    images = [kt.find(kt.scalar_family(kappa)) for kappa in a2_f3.ring.elements()]
    assert sorted(images) == [0, 1, 2]
    zero = kt.find(kt.scalar_family(0))
    assert all(kt.add(zero, i) == i for i in range(len(kt)))


def test_table_labels(a2_f3):
    table = interpret.ktilde_table(interpret.build_ktilde(a2_f3))
    assert sorted(table["labels"]) == ["0", "1", "2"]
    assert len(table["add"]) == 3 and len(table["mul"]) == 3


def test_record(a2_f2):
    record = interpret.interpretation_record(interpret.build_ktilde(a2_f2))
    assert record["index"] == "1A(n=2,r=2,d=1)"
    assert record["ring"] == "F2"
    assert record["families"] == 2
    assert record["isomorphic"]


@pytest.mark.parametrize("name", ["2A(4,2,1)", "1A(1,1,1)"])
def test_unsupported_instances(name):
    with pytest.raises(UnsupportedError):
        interpret.build_ktilde(realization_of(name, "F2"))


def test_node_budget(a2_f3):
    with pytest.raises(SearchBudgetError):
        interpret.build_ktilde(a2_f3, budget=1)


@pytest.mark.slow
def test_ktilde_for_c3():
    kt = interpret.build_ktilde(realization_of("C(3,3,1)", "F2"))
    assert len(kt) == 2
    assert interpret.certify_ring_iso(kt)


@pytest.mark.parametrize("name,ring_spec,order", [
    ("1A(2,2,1)", "F5", 5),
    ("1A(5,2,2)", "F2", 2),
    ("C(4,2,2)", "F2", 2),
])
def test_ktilde_over_larger_instances(name, ring_spec, order):
    kt = interpret.build_ktilde(realization_of(name, ring_spec))
    assert len(kt) == order
    assert all(interpret.certificate(kt).values())
