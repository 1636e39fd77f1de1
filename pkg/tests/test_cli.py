import json

import pytest

from isotropy import cli, logger


def test_index_report(tmp_path, capsys):
    out = tmp_path / "index.json"
    assert cli.main(["index", "1A(5,2,2)", "--out", str(out)]) == cli.EXIT_PASS
    report = json.loads(out.read_text())
    assert report["config"]["command"] == "index"
    assert "out" not in report["config"]
    assert report["records"][0]["kind"] == "index"
    assert (tmp_path / "index.csv").exists()
    assert "index" in capsys.readouterr().out


@pytest.mark.parametrize("argv", [
    [],
    ["index"],
    ["nonsense"],
    ["verify", "bogus", "--index", "1A(2,2,1)", "--ring", "F2"],
    ["verify", "gauss", "--index", "1A(2,2,1)"],
    ["verify", "two-step", "--index", "1A(2,2,1)", "--ring", "F2"],
    ["verify", "gauss", "--index", "1A(2,2,1)", "--ring", "F2", "--seed", "-1"],
    ["verify", "gauss", "--index", "1A(2,3,1)", "--ring", "F2"],
    ["verify", "gauss", "--index", "1A(2,2,1)", "--ring", "Q7"],
    ["verify", "long-norm", "--index", "1A(2,2,1)", "--ring", "F2", "--root", "1,x"],
    ["subsets", "A", "2", "--count", "0"],
    ["equiv", "1A(1,1,1)", "C(1,1,1)", "--budget", "0"],
])
def test_usage_errors(argv):
    assert cli.main(argv) == cli.EXIT_USAGE


@pytest.mark.parametrize("argv", [
    ["equiv", "1A(1,1,1)", "C(1,1,1)"],
    ["equiv", "1A(1,1,1)", "C(1,1,1)", "--strict"],
    ["verify", "cent-us", "--index", "2A(5,2,1)", "--ring", "F2"],
    ["verify", "gauss", "--index", "1A(1,1,1)", "--ring", "Z4"],
    ["verify", "long-norm", "--index", "1A(2,2,1)", "--ring", "F2", "--root", "1,1"],
    ["verify", "urad-cent", "--index", "1A(2,2,1)", "--ring", "F2", "--grading", "2,0"],
    ["subsets", "A", "2"],
    ["interpret", "--index", "1A(2,2,1)", "--ring", "Z3", "--verbose"],
])
def test_commands_pass(argv):
    assert cli.main(argv) == cli.EXIT_PASS


def test_config_header():
    args = cli.build_parser().parse_args(["verify", "gauss", "--index", "1A(2,2,1)", "--ring", "F2",
                                          "--sampled", "10", "--timings"])
    config = cli.make_config(args)
    assert config.names == ["1A(2,2,1)"] and config.rings == ["F2"]
    assert config.sampled == 10 and config.timings
    assert cli.check_run_parameters(config)
    assert "out" not in config.header()


@pytest.mark.parametrize("outcomes,code", [
    (["pass", "pass"], cli.EXIT_PASS),
    (["pass", "skipped"], cli.EXIT_PASS),
    (["inconclusive", "pass"], cli.EXIT_INCONCLUSIVE),
    (["inconclusive", "fail"], cli.EXIT_FAIL),
    ([], cli.EXIT_PASS),
])
def test_exit_code(outcomes, code):
    assert cli.exit_code(outcomes) == code


@pytest.mark.parametrize("expect,code,outcome", [
    (None, cli.EXIT_PASS, "info"),
    ("none", cli.EXIT_PASS, "pass"),
    ("equiv", cli.EXIT_FAIL, "fail"),
])
def test_equiv_expectation(tmp_path, expect, code, outcome):
    out = tmp_path / "equiv.json"
    argv = ["equiv", "1A(2,2,1)", "C(2,2,1)", "--out", str(out)]
    if expect is not None:
        argv += ["--expect", expect]
    assert cli.main(argv) == code
    record = json.loads(out.read_text())["records"][0]["record"]
    assert record["result"]["status"] == "not_equivalent"
    assert logger.outcome_of("equivalence", record) == outcome


def test_expect_iso_is_strict():
    assert cli.main(["equiv", "1D(4,1,2)", "2D(4,1,2)", "--expect", "iso"]) == cli.EXIT_FAIL
    assert cli.main(["equiv", "1D(4,1,2)", "2D(4,1,2)", "--expect", "equiv"]) == cli.EXIT_PASS


def test_sampled_reports_are_identical(tmp_path):
    paths = [tmp_path / "first.json", tmp_path / "second.json"]
    for path in paths:
        argv = ["verify", "dbl-centzer", "--index", "1A(2,2,1)", "--ring", "F3", "--sampled", "300", "--seed", "7",
                "--out", str(path)]
        assert cli.main(argv) == cli.EXIT_PASS
    first, second = (path.read_bytes() for path in paths)
    assert first == second
    assert json.loads(first)["records"][0]["record"]["mode"] == "one-sided+sampled"
