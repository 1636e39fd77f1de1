import pytest

from isotropy import experiments, verify
from isotropy.errors import ParameterError


def test_suite_tasks():
    quick = experiments.suite_tasks("quick")
    assert len(quick) == 2 + len(experiments.QUICK_THEOREMS) + len(experiments.QUICK_INTERPRETATIONS)
    assert quick[0] == ("tables", experiments.QUICK_LIMITS)
    full = experiments.suite_tasks("full", seed=3)
    assert len(full) == (2 + len(experiments.FULL_THEOREMS) + len(experiments.FULL_SAMPLED)
                         + len(experiments.FULL_INTERPRETATIONS))
    assert all(task[5] == 3 for task in full if task[0] == "theorem")
    with pytest.raises(ParameterError):
        experiments.suite_tasks("bogus")


@pytest.mark.parametrize("options", [
    {"seed": -1},
    {"seed": 1.5},
    {"sampled": 0},
    {"cap": 0},
    {"workers": 0},
])
def test_run_parameters(options):
    with pytest.raises(ParameterError):
        experiments.check_run_parameters(**options)


def test_run_parameters_defaults():
    assert experiments.check_run_parameters()


def test_unsupported_theorems_are_skipped():
    result = experiments.run_theorem("two-step", "1A(2,2,1)", "F2")
    assert result.outcome == "skipped"
    result = experiments.run_theorem("gauss", "B(2,1)", "F2")
    assert result.outcome == "skipped"
    assert "unit" in result.detail


def test_theorem_record():
    result = experiments.run_theorem("cent-us", "2A(5,2,1)", "F2")
    assert result.outcome == "pass"
    assert result.instance["ring"] == "F2"


def test_unsupported_interpretation_is_skipped():
    record = experiments.run_interpretation("2A(4,2,1)", "F2")
    assert record["skipped"]
    assert record["families"] is None


def test_interpretation_budget():
    record = experiments.run_interpretation("1A(2,2,1)", "Z3", budget=1)
    assert record["inconclusive"]


@pytest.mark.slow
def test_quick_suite(tmp_path):
    log = experiments.run_suite("quick", results_path=str(tmp_path / "quick.json"), verbose=False)
    outcomes = log.outcomes()
    assert "fail" not in outcomes, log.summary()
    assert (tmp_path / "quick.json").exists()


def test_full_suite_covers_exhaustive_instances():
    for index_name, ring_spec in experiments.EXHAUSTIVE_INSTANCES:
        for theorem in verify.GROUP_THEOREMS:
            assert (theorem, index_name, ring_spec) in experiments.FULL_THEOREMS
    assert len(set(experiments.FULL_THEOREMS)) == len(experiments.FULL_THEOREMS)


def test_suite_runs_every_root_orbit():
    result = experiments.run_theorem("dbl-centzer", "C(2,2,1)", "F2")
    assert result.outcome == "pass"
    assert len(result.instance["roots"]) == 2
