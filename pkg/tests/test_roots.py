from collections import Counter

from hypothesis import given, settings, strategies as st
import pytest

from isotropy import roots
from isotropy.errors import ConstructionError, PreconditionError, WiringError
from isotropy.roots import Root

SIZES = [("A", 1, 2), ("A", 4, 20), ("B", 3, 18), ("C", 4, 32), ("D", 4, 24), ("D", 5, 40), ("BC", 1, 4),
         ("BC", 3, 24), ("G", 2, 12), ("F", 4, 48), ("E", 6, 72), ("E", 7, 126), ("E", 8, 240)]

HEIGHTS = [("A", 3, 3), ("B", 4, 7), ("C", 3, 5), ("D", 5, 7), ("G", 2, 5), ("F", 4, 11), ("E", 6, 11),
           ("E", 7, 17), ("E", 8, 29), ("BC", 2, 4)]

SYSTEMS = [("A", 3), ("B", 3), ("C", 3), ("D", 4), ("BC", 2), ("G", 2), ("F", 4)]


@pytest.mark.parametrize("type_label,rank,count", SIZES)
def test_root_counts(type_label, rank, count):
    assert len(roots.build(type_label, rank)) == count


@pytest.mark.parametrize("type_label,rank,height", HEIGHTS)
def test_highest_root_height(type_label, rank, height):
    system = roots.build(type_label, rank)
    assert system.height(system.highest_root()) == height


@pytest.mark.parametrize("type_label,rank", [("E", 5), ("F", 3), ("G", 3), ("A", 0), ("X", 2)])
def test_invalid_systems(type_label, rank):
    with pytest.raises(ConstructionError):
        roots.build(type_label, rank)


@pytest.mark.parametrize("type_label,rank", SYSTEMS)
def test_positive_roots_are_half(type_label, rank):
    system = roots.build(type_label, rank)
    positive = system.positive_roots()
    assert 2 * len(positive) == len(system)
    assert sorted(-r for r in positive) == sorted(system.negative_roots())


@pytest.mark.parametrize("type_label,rank", SYSTEMS)
def test_coefficients_reconstruct_roots(type_label, rank):
    system = roots.build(type_label, rank)
    for root in system:
        assert system.from_coefficients(system.coefficients(root)) == root


@given(st.sampled_from(SYSTEMS), st.data())
@settings(max_examples=40, deadline=None)
def test_reflections_preserve_the_system(system_key, data):
    system = roots.build(*system_key)
    alpha = data.draw(st.sampled_from(system.roots))
    beta = data.draw(st.sampled_from(system.roots))
    image = system.reflect(alpha, beta)
    assert image in system
    assert system.reflect(alpha, image) == beta
    assert system.length_class[image] == system.length_class[beta]


def test_length_classes():
    assert roots.build("BC", 2).length_classes() == ["ultrashort", "short", "long"]
    assert roots.build("BC", 1).length_classes() == ["ultrashort", "long"]
    assert roots.build("G", 2).length_classes() == ["short", "long"]
    assert roots.build("A", 3).length_classes() == ["long"]
    assert roots.build("BC", 2).length_class[Root((2, 0))] == "ultrashort"


def test_long_roots_form_one_orbit():
    system = roots.build("B", 3)
    long_roots = {r for r in system if system.length_class[r] == "long"}
    assert system.weyl_orbit([system.highest_root()]) == long_roots


@pytest.mark.parametrize("type_label,rank,expected", [("A", 3, ("A", 3)), ("B", 3, ("B", 3)), ("C", 3, ("C", 3)),
                                                      ("C", 2, ("B", 2)), ("D", 4, ("D", 4)), ("G", 2, ("G", 2)),
                                                      ("F", 4, ("F", 4)), ("E", 7, ("E", 7))])
def test_recognize(type_label, rank, expected):
    diagram = roots.dynkin_diagram(roots.build(type_label, rank).cartan_matrix())
    assert roots.recognize(diagram) == expected


def test_decompose_disconnected_diagram():
    diagram = roots.dynkin_diagram(((2, 0, 0), (0, 2, -1), (0, -1, 2)))
    assert roots.decompose(diagram) == Counter({("A", 1): 1, ("A", 2): 1})


def test_recognize_rejects_non_dynkin():
    diagram = roots.dynkin_diagram(((2, -3, 0), (-1, 2, -1), (0, -1, 2)))
    with pytest.raises(WiringError):
        roots.recognize(diagram)


@pytest.mark.parametrize("type_label,rank,count", [("A", 3, 2), ("D", 4, 6), ("D", 5, 2), ("E", 6, 2),
                                                   ("E", 7, 1), ("B", 3, 1)])
def test_diagram_automorphisms(type_label, rank, count):
    diagram = roots.dynkin_diagram(roots.build(type_label, rank).cartan_matrix())
    assert len(roots.diagram_automorphisms(diagram)) == count


def test_type_labels():
    assert roots.same_type("C_2", "B_2")
    assert roots.same_type("D_3", "A_3")
    assert roots.same_type("D_2", "2A_1")
    assert roots.same_type("3A_0 + D_4", "D_4")
    assert not roots.same_type("A_3", "B_3")
    assert roots.format_type(Counter()) == "∅"
    assert roots.format_type(roots.parse_type("D_4 + 3A_1")) == "3A_1 + D_4"
    with pytest.raises(ConstructionError):
        roots.parse_type("Q_3")


def test_cartan_integer():
    assert roots.cartan_integer(Root((2, -2)), Root((0, 2))) == -2
    assert roots.cartan_integer(Root((0, 2)), Root((2, -2))) == -1
    with pytest.raises(PreconditionError):
        roots.cartan_integer(Root((2, 0)), Root((0, 0)))


def test_to_json():
    data = roots.build("A", 2).to_json()
    assert data["type"] == "A" and data["rank"] == 2
    assert len(data["roots"]) == 6 and len(data["basis"]) == 2
