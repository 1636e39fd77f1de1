from fractions import Fraction

from hypothesis import given, settings, strategies as st

from isotropy import cone
from isotropy.roots import Root

vectors = st.lists(st.integers(-3, 3), min_size=3, max_size=3)


def test_simple_cones():
    assert cone.in_cone([(1, 0), (0, 1)], (2, 3))
    assert not cone.in_cone([(1, 0), (0, 1)], (-1, 0))
    assert cone.in_cone([], (0, 0))
    assert not cone.in_cone([], (1, 0))
    assert cone.in_cone([Root((2, 0)), Root((0, 2))], Root((1, 1)))


def test_fractional_solution():
    solution = cone.feasible_nonnegative([(1, 1), (1, -1)], (1, 0))
    assert solution == [Fraction(1, 2), Fraction(1, 2)]


def test_degenerate_generators():
    generators = [(1, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)]
    assert cone.in_cone(generators, (3, 2, 0))
    assert not cone.in_cone(generators, (3, 2, 1))


@given(st.lists(vectors, min_size=1, max_size=5), st.data())
@settings(max_examples=60, deadline=None)
def test_nonnegative_combinations_are_inside(generators, data):
    coefficients = data.draw(st.lists(st.integers(0, 4), min_size=len(generators), max_size=len(generators)))
    target = tuple(sum(c * g[i] for c, g in zip(coefficients, generators)) for i in range(3))
    solution = cone.feasible_nonnegative(generators, target)
    assert solution is not None
    assert all(x >= 0 for x in solution)
    assert tuple(sum(x * g[i] for x, g in zip(solution, generators)) for i in range(3)) == target


@given(st.lists(st.lists(st.integers(0, 3), min_size=3, max_size=3), min_size=1, max_size=5),
       st.integers(1, 5))
@settings(max_examples=30, deadline=None)
def test_halfspace_excludes(generators, depth):
    assert not cone.in_cone(generators, (-depth, 0, 0))
