import pytest

from isotropy import index, realize, verify
from isotropy.errors import ParameterError, PreconditionError, UnsupportedError
from isotropy.ring import parse_ring
from isotropy.roots import Root


def realization_of(name, ring_spec):
    return realize.realize(index.parse_index(name), parse_ring(ring_spec))


@pytest.mark.parametrize("theorem,name,ring_spec", [
    ("long-norm", "1A(2,2,1)", "F2"),
    ("long-norm", "C(2,2,1)", "F2"),
    ("dbl-centzer", "1A(2,2,1)", "F2"),
    ("dbl-centzer", "C(2,2,1)", "F2"),
    ("cent-norm", "1A(2,2,1)", "F2"),
    ("urad-cent", "1A(2,2,1)", "F2"),
    ("cent-us", "2A(5,2,1)", "F2"),
    ("gauss", "1A(2,2,1)", "F2"),
    ("subgr-int", "1A(2,2,1)", "F2"),
    ("nondeg", "1A(2,2,1)", "F3"),
    ("two-step", "2A(4,2,1)", "F2"),
    ("commutator", "C(2,2,1)", "F2"),
    ("weyl", "1A(2,2,1)", "F3"),
])
def test_theorems_hold(theorem, name, ring_spec):
    result = verify.run_theorem(theorem, realization_of(name, ring_spec))
    assert result.outcome == "pass", result.as_dict()


def test_exhaustive_context(a2_f2):
    ctx = verify.Context(a2_f2)
    assert ctx.exhaustive and ctx.mode == "exhaustive"
    assert ctx.counts() == {"group": 168, "center": 1}


def test_sampled_context(a2_f2):
    ctx = verify.Context(a2_f2, sampled=200, seed=1)
    assert ctx.mode == "one-sided+sampled"
    assert len(ctx.elements()) == 200
    result = verify.check_long_norm(a2_f2, ctx=ctx)
    assert result.outcome == "pass"
    assert result.mode == "one-sided+sampled"


def test_long_norm_on_another_root(a2_f2):
    rel = a2_f2.relative
    result = verify.check_long_norm(a2_f2, alpha=rel.basis[0])
    assert result.passed
    assert result.instance["root"] == str(rel.basis[0])


def test_root_preconditions(c2_f2):
    rel = c2_f2.relative
    short = next(a for a in rel.roots if rel.length_class[a] == "short")
    with pytest.raises(PreconditionError):
        verify.check_long_norm(c2_f2, alpha=short)
    with pytest.raises(PreconditionError):
        verify.check_dbl_centzer(c2_f2, alpha=Root((5, 5)))


def test_rank_one_is_unsupported():
    with pytest.raises(UnsupportedError):
        verify.run_theorem("long-norm", realization_of("1A(1,1,1)", "F2"))


def test_unknown_theorem(a2_f2):
    with pytest.raises(ParameterError):
        verify.run_theorem("bogus", a2_f2)


def test_gradings(a2_f2):
    grading = verify.default_grading(a2_f2)
    rel = a2_f2.relative
    assert grading.values == (1, 1)
    assert grading.top(rel) == [rel.highest_root()]
    assert all(g.is_valid(rel) and g.top(rel) for g in verify.gradings(a2_f2))
    assert grading in verify.gradings(a2_f2)
    with pytest.raises(ParameterError):
        verify.check_urad_cent(a2_f2, grading=verify.Grading((3, 0)))
    with pytest.raises(PreconditionError):
        verify.check_urad_cent(a2_f2, grading=verify.Grading((0, 0)))


def test_urad_cent_other_grading(a2_f2):
    result = verify.check_urad_cent(a2_f2, grading=verify.Grading((2, 0)))
    assert result.passed


def test_cent_us_table():
    r = realization_of("2A(5,2,1)", "F2")
    assert verify.expected_cent_us_order(r) == 6
    result = verify.check_cent_us_table(r)
    assert result.counts["cent_us"] == 6
    with pytest.raises(UnsupportedError):
        verify.expected_cent_us_order(realization_of("1A(2,2,1)", "F2"))


def test_diophantine_checks(a2_f2):
    result = verify.check_diophantine_identities(a2_f2)
    assert result.outcome == "pass"
    assert result.checks["center"] == "pass"
    assert result.checks["rank_two"].startswith("skipped")


def test_two_step_needs_ultrashort_roots(a2_f2):
    with pytest.raises(UnsupportedError):
        verify.check_two_step(a2_f2)


def test_result_dict():
    result = verify.VerificationResult(theorem="gauss", instance={"index": "x", "ring": "F2"}, mode="exhaustive",
                                       outcome="pass", wall_time=1.23456)
    assert "wall_time" not in result.as_dict()
    assert result.as_dict(timings=True)["wall_time"] == 1.235
    assert result.passed


@pytest.mark.slow
@pytest.mark.parametrize("theorem,name,ring_spec", [
    ("long-norm", "1A(2,2,1)", "F3"),
    ("diophantine", "C(2,2,1)", "F2"),
    ("dbl-centzer", "2A(4,2,1)", "F2"),
    ("cent-norm", "C(2,2,1)", "F2"),
    ("two-step", "2A(4,2,1)", "Z4"),
])
def test_larger_instances(theorem, name, ring_spec):
    assert verify.run_theorem(theorem, realization_of(name, ring_spec)).outcome == "pass"


@pytest.mark.parametrize("name,classes,count", [
    ("1A(2,2,1)", None, 1),
    ("C(2,2,1)", None, 2),
    ("C(2,2,1)", ("long",), 1),
    ("2A(4,2,1)", None, 3),
])
def test_orbit_representatives(name, classes, count):
    r = realization_of(name, "F2")
    reps = verify.orbit_representatives(r, classes)
    assert len(reps) == count
    rel = r.relative
    assert reps[0] == max(a for a in rel.roots if classes is None or rel.length_class[a] in classes)
    seen = set()
    for alpha in reps:
        orbit = rel.weyl_orbit([alpha])
        assert not orbit & seen
        seen |= orbit


def test_dbl_centzer_runs_every_orbit(c2_f2):
    result = verify.run_theorem("dbl-centzer", c2_f2)
    assert result.outcome == "pass", result.as_dict()
    assert result.counts["orbits"] == 2
    assert sorted(v.split(" ", 1)[1] for v in result.checks.values()) == ["(case c-short)", "(case generic)"]


def test_dbl_centzer_short_root(c2_f2):
    rel = c2_f2.relative
    short = max(a for a in rel.roots if rel.length_class[a] == "short")
    result = verify.check_dbl_centzer(c2_f2, alpha=short)
    assert result.detail == "case c-short"
    assert result.passed
    assert result.counts["lhs"] == result.counts["rhs"] == 8


def test_dbl_centzer_ultrashort_sampled(bc2_f2):
    rel = bc2_f2.relative
    ultrashort = max(a for a in rel.roots if rel.length_class[a] == "ultrashort")
    ctx = verify.Context(bc2_f2, sampled=2000, seed=0)
    result = verify.check_dbl_centzer(bc2_f2, alpha=ultrashort, ctx=ctx)
    assert result.detail == "case ultrashort"
    assert result.mode == "one-sided+sampled"
    assert result.passed


@pytest.mark.slow
@pytest.mark.parametrize("theorem", verify.GROUP_THEOREMS)
@pytest.mark.parametrize("name,ring_spec", [
    ("1A(2,2,1)", "F3"),
    ("1A(2,2,1)", "Z4"),
    ("C(2,2,1)", "F2"),
    ("C(2,2,1)", "F3"),
    ("1A(3,3,1)", "F2"),
])
def test_group_theorems_exhaustive(theorem, name, ring_spec):
    result = verify.run_theorem(theorem, realization_of(name, ring_spec))
    assert result.mode == "exhaustive"
    assert result.outcome == "pass", result.as_dict()
