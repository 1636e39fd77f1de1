import pytest

from isotropy import index, roots
from isotropy.errors import ConstructionError, ParameterError
from isotropy.index import TitsIndex

FOLDS = [
    ("1A(5,2,2)", "A_2", "3A_1", (4,)),
    ("2A(4,2,1)", "BC_2", "∅", (2, 2, 1)),
    ("C(3,3,1)", "C_3", "∅", (1, 1)),
    ("1D(5,2,1)", "B_2", "D_3", (6, 1)),
    ("E_{8,2}^{66}", "BC_2", "D_6", (32, 12, 1)),
    ("E_{8,1}^{133}", "BC_1", "E_7", (56, 1)),
    ("E_{7,1}^{78}", "A_1", "E_6", (27,)),
    ("F_{4,1}^{21}", "BC_1", "B_3", (8, 7)),
]


@pytest.mark.parametrize("name,relative,kernel,fibers", FOLDS)
def test_fold(name, relative, kernel, fibers):
    fm = index.fold(index.parse_index(name))
    assert roots.same_type(fm.relative_type(), relative)
    assert roots.same_type(index.kernel_type(fm), kernel)
    assert fm.fiber_sizes() == fibers


def test_fibers_partition_the_base():
    fm = index.fold(index.parse_index("2A(4,2,1)"))
    total = sum(len(fm.fiber(alpha)) for alpha in fm.relative.roots) + len(fm.kernel)
    assert total == len(fm.base.roots)
    assert sorted(fm.index.J) == [1, 2, 3, 4]
    assert fm.relative.length_classes() == ["ultrashort", "short", "long"]


@pytest.mark.parametrize("name,order", [("1A(1,1,1)", 1), ("2D(4,1,2)", 6), ("E_{7,1}^{78}", 1),
                                        ("2A(4,2,1)", 2), ("1A(3,1,2)", 2)])
def test_outer_automorphisms(name, order):
    assert index.outer_aut_order(index.parse_index(name)) == order


def test_parse_forms_agree():
    assert index.parse_index("2A(n=4,r=2,d=1)") == index.parse_index("2A(4,2,1)")
    assert index.parse_index("B(3,1)").params == (3, 1, 1)
    assert index.parse_index("E_8,2^66").name == "E_{8,2}^{66}"


@pytest.mark.parametrize("family,n,r,d", [("1A", 4, 1, 2), ("C", 3, 1, 1), ("C", 3, 1, 3), ("2D", 4, 2, 2),
                                          ("1D", 4, 3, 1), ("2A", 1, 1, 1), ("B", 2, 3, 1)])
def test_family_constraints(family, n, r, d):
    with pytest.raises(ParameterError):
        index.make_classical(family, n, r, d)


def test_bad_names():
    with pytest.raises(ConstructionError):
        index.parse_index("X_{1,1}")
    with pytest.raises(ConstructionError):
        index.make_classical("3A", 2, 1, 1)
    with pytest.raises(ConstructionError):
        index.parse_index("1A(2)")


def test_index_needs_gamma_invariant_J():
    base = roots.build("A", 3)
    with pytest.raises(ConstructionError):
        TitsIndex(base, [(3, 2, 1)], [1], "bad")
    with pytest.raises(ConstructionError):
        TitsIndex(base, [(2, 1, 3)], [1, 2], "bad")


def test_classical_grid():
    assert index.classical_grid("1A", 3) == [(1, 1, 1), (2, 2, 1), (3, 3, 1), (3, 1, 2)]


def test_describe():
    record = index.describe(index.parse_index("1A(5,2,2)"))
    assert record["relative"] == "A_2"
    assert record["J"] == [2, 4]
    assert record["fibers"] == [4]
    assert record["kernel_size"] == 6


@pytest.mark.parametrize("first,second,strict,status", [
    ("1D(4,1,2)", "2D(4,1,2)", False, "equivalent"),
    ("1A(1,1,1)", "C(1,1,1)", True, "equivalent"),
    ("1A(2,2,1)", "C(2,2,1)", False, "not_equivalent"),
    ("1A(3,1,2)", "1D(3,1,1)", True, "equivalent"),
    ("1D(4,1,1)", "1D(4,1,4)", True, "equivalent"),
])
def test_equivalence(first, second, strict, status):
    result = index.equivalent(index.parse_index(first), index.parse_index(second), strict=strict)
    assert result.status == status
    if status == "equivalent":
        assert result.witness is not None


def test_equivalence_budget():
    result = index.equivalent(index.parse_index("1D(4,1,2)"), index.parse_index("2D(4,1,2)"), budget=1)
    assert result.status == "inconclusive"
    assert not result.equivalent


def test_isomorphic_needs_conjugate_actions():
    first, second = index.parse_index("1D(4,1,2)"), index.parse_index("2D(4,1,2)")
    assert index.isomorphic(first, second).status == "not_equivalent"
    assert index.isomorphic(first, first).equivalent


def test_small_table_grid():
    limits = {"1A": 4, "2A": 4, "B": 3, "C": 3, "1D": 4, "2D": 4}
    records = index.verify_tables(limits=limits, exceptional=False)
    failing = [r for r in records if not r["pass"]]
    assert records and not failing, failing


@pytest.mark.slow
def test_exceptional_table():
    records = index.verify_tables(limits={}, exceptional=True)
    failing = [r for r in records if not r["pass"]]
    assert not failing, failing


@pytest.mark.slow
def test_equivalence_list():
    records = index.equivalence_list(n_max=5)
    failing = [r for r in records if not r["pass"]]
    assert not failing, failing
