import itertools

import pytest

from isotropy import index, roots, subsets
from isotropy.errors import PreconditionError
from isotropy.roots import Root
from isotropy.subsets import RootSubset


def _all_subsets(system):
    for mask in range(1 << len(system.roots)):
        yield RootSubset(system, [r for i, r in enumerate(system.roots) if mask >> i & 1])


def test_rank_one_closed_subsets():
    assert len(subsets.enumerate_closed(roots.build("A", 1))) == 4


@pytest.mark.parametrize("type_label,rank", [("A", 2), ("B", 2), ("BC", 1)])
def test_enumeration_matches_closure_test(type_label, rank):
    system = roots.build(type_label, rank)
    enumerated = {s.members for s in subsets.enumerate_closed(system)}
    brute = {s.members for s in _all_subsets(system) if subsets.is_closed(s)}
    assert enumerated == brute


def test_enumeration_limit():
    with pytest.raises(PreconditionError):
        subsets.enumerate_closed(roots.build("A", 3))


def test_borel_classes():
    system = roots.build("A", 2)
    cls = subsets.classify(subsets.positive(system))
    assert cls.unipotent and cls.parabolic and cls.saturated and not cls.subsystem


def test_whole_and_empty():
    system = roots.build("B", 2)
    whole = subsets.classify(RootSubset(system, system.roots))
    assert whole.subsystem and whole.parabolic and whole.saturated and not whole.unipotent
    empty = subsets.classify(RootSubset(system, []))
    assert empty.unipotent and empty.subsystem and empty.saturated and not empty.parabolic


def test_closed_but_not_saturated():
    system = roots.build("BC", 1)
    long_only = RootSubset(system, [Root((4,))])
    assert subsets.is_closed(long_only)
    assert not subsets.is_saturated(long_only)
    ultrashort = RootSubset(system, [Root((2,))])
    assert not subsets.is_closed(ultrashort)
    assert subsets.closure(ultrashort).members == {Root((2,)), Root((4,))}


def test_decompose_standard_parabolic():
    system = roots.build("A", 2)
    parabolic = subsets.standard_parabolic(system, [1])
    alpha1, alpha2 = system.basis
    reductive, unipotent = subsets.decompose(parabolic)
    assert reductive.members == {alpha1, -alpha1}
    assert unipotent.members == {alpha2, alpha1 + alpha2}
    assert subsets.splitting_compatible(reductive, unipotent)
    assert subsets.classify(parabolic).parabolic


def test_standard_parabolic_extremes():
    system = roots.build("C", 3)
    assert subsets.standard_parabolic(system, []).members == frozenset(system.positive_roots())
    assert subsets.standard_parabolic(system, [1, 2, 3]).members == frozenset(system.roots)


@pytest.mark.parametrize("type_label,rank", [("A", 2), ("B", 2), ("G", 2)])
def test_parabolic_sets_are_weyl_conjugate_to_standard(type_label, rank):
    system = roots.build(type_label, rank)
    for subset in subsets.enumerate_closed(system):
        assert subsets.is_parabolic(subset) == subsets.is_parabolic_by_weyl(subset)


def test_preconditions():
    system = roots.build("A", 2)
    with pytest.raises(PreconditionError):
        RootSubset(system, [Root((2, 0))])
    alpha1, alpha2 = system.basis
    with pytest.raises(PreconditionError):
        subsets.classify(RootSubset(system, [alpha1, alpha2]))


def test_sampling_is_seeded():
    system = roots.build("E", 6)
    first = subsets.sample_closed(system, 20, seed=3)
    second = subsets.sample_closed(system, 20, seed=3)
    assert [s.members for s in first] == [s.members for s in second]
    assert all(subsets.is_closed(s) for s in first)


def test_atlas_records():
    records = subsets.atlas(roots.build("A", 1))
    assert [r["bitmask"] for r in records] == [0, 1, 2, 3]
    assert records[3]["subsystem"] and not records[3]["unipotent"]


def test_preimages_keep_classes():
    fm = index.fold(index.parse_index("1A(5,2,2)"))
    for subset in subsets.enumerate_closed(fm.relative):
        details = subsets.preimage_class_details(fm, subset)
        assert all(details.values()), (str(subset), details)


@pytest.mark.slow
def test_preimages_keep_classes_bc():
    fm = index.fold(index.parse_index("2A(4,2,1)"))
    for subset in subsets.enumerate_closed(fm.relative):
        assert subsets.preimage_class_check(fm, subset)


def test_bitmask_order():
    system = roots.build("A", 2)
    subset = RootSubset(system, system.roots[:2])
    assert subset.bitmask() == 3
    assert list(itertools.islice(subset, 2)) == list(system.roots[:2])
