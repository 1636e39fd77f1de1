import csv
import json

import pytest

from isotropy import logger
from isotropy.errors import WiringError
from isotropy.verify import VerificationResult


def verification(outcome="pass", wall_time=0.5):
    return VerificationResult(theorem="gauss", instance={"index": "1A(n=1,r=1,d=1)", "ring": "Z4"},
                              mode="exhaustive", outcome=outcome, counts={"group": 48}, wall_time=wall_time)


EQUIVALENCE = {"pair": ["1A(1,1,1)", "C(1,1,1)"], "relation": "equiv", "expected": True,
               "result": {"status": "equivalent", "nodes": 3}, "pass": True}
TABLE = {"index": "B(n=3,r=1)", "mismatches": [], "pass": True}
INTERPRETATION = {"index": "1A(n=2,r=2,d=1)", "ring": "Z3", "families": 3, "checks": {}, "isomorphic": True}
ATLAS = {"bitmask": 5, "unipotent": True, "parabolic": False}
INDEX = {"index": "B(n=3,r=1)", "relative": "B_1"}


@pytest.mark.parametrize("record,kind", [
    (verification(), "verification"),
    (TABLE, "table"),
    (EQUIVALENCE, "equivalence"),
    (INTERPRETATION, "interpretation"),
    (ATLAS, "atlas"),
    (INDEX, "index"),
])
def test_record_kind(record, kind):
    assert logger.record_kind(record) == kind


def test_unknown_record():
    with pytest.raises(WiringError):
        logger.record_kind({"something": 1})


def test_outcomes():
    log = logger.Logger()
    log.log(verification())
    log.log(verification("inconclusive"))
    log.log(dict(EQUIVALENCE, **{"pass": False}))
    log.log(dict(EQUIVALENCE, inconclusive=True))
    log.log(dict(INTERPRETATION, isomorphic=False, skipped=True))
    log.log(dict(INTERPRETATION, isomorphic=False, inconclusive=True))
    log.log(dict(TABLE, **{"pass": False}))
    log.log(ATLAS)
    assert log.outcomes() == ["pass", "inconclusive", "fail", "inconclusive", "skipped", "inconclusive", "fail",
                              "pass"]


def test_task_order():
    log = logger.Logger()
    log.log(INDEX, task=2)
    log.log(TABLE, task=0)
    log.log(ATLAS)
    assert [task for task, _, _ in log.sorted_records()] == [0, 2, 3]
    assert [item["kind"] for item in log.report()["records"]] == ["table", "index", "atlas"]


def test_timings_gate():
    hidden = logger.Logger()
    assert "wall_time" not in hidden.log(verification())
    shown = logger.Logger(timings=True)
    assert shown.log(verification())["wall_time"] == 0.5


def test_dumps_are_deterministic():
    first = logger.Logger(config={"seed": 0, "command": "suite"})
    second = logger.Logger(config={"command": "suite", "seed": 0})
    for log in (first, second):
        log.log_all([verification(), TABLE, INTERPRETATION])
    assert first.dumps() == second.dumps()


def test_files(tmp_path):
    path = tmp_path / "reports" / "run.json"
    log = logger.Logger(str(path), config={"command": "verify"})
    log.log(verification())
    log.log(EQUIVALENCE)
    log.close()
    report = json.loads(path.read_text())
    assert report["config"] == {"command": "verify"}
    assert [item["kind"] for item in report["records"]] == ["verification", "equivalence"]
    with open(tmp_path / "reports" / "run.csv", newline="") as handle:
        rows = list(csv.reader(handle))
    assert rows[0] == ["id", "kind", "instance", "mode", "outcome", "counts"]
    assert [row[4] for row in rows[1:]] == ["pass", "pass"]


def test_summary():
    log = logger.Logger()
    log.log(verification())
    log.log(INTERPRETATION)
    lines = log.summary().splitlines()
    assert len(lines) == 2
    assert "gauss" in lines[0] and "Z3" in lines[1]
