import json

import pytest

from src.pipeline import main

SMALL = ["--seed", "7", "--cases", "6", "--dims", "0..3", "--magnitude", "20"]


def run(tmp_path, *argv: str) -> tuple[int, dict]:
    out = tmp_path / "report.json"
    code = main([*argv, "--quiet", "--format", "structured", "--out", str(out)])
    report = json.loads(out.read_text()) if out.exists() else {}
    return code, report


def test_cs_fixture_reports_cases_and_rejects_mismatch(tmp_path, fixtures):
    code, report = run(tmp_path, "cs", str(fixtures / "cs_pairs.txt"))
    assert code == 2
    assert report["verdict"] == "pass"
    certs = [c["certificate"] for c in report["cases"]]
    assert certs[:5] == [
        {"kind": "dependent", "a": "2"},
        {"kind": "strict", "gap": "9"},
        {"kind": "zero_u"},
        {"kind": "zero_v"},
        {"kind": "zero_u"},
    ]
    assert [e["line"] for e in report["errors"]] == [8]


def test_cs_json_fixture(tmp_path, fixtures):
    code, report = run(tmp_path, "cs", str(fixtures / "cs_pairs.json"))
    assert code == 0
    assert report["cases"][3]["certificate"] == {"kind": "dependent", "a": "2"}


def test_replay_includes_steps(tmp_path, fixtures):
    code, report = run(tmp_path, "replay", str(fixtures / "cs_pairs.json"))
    assert code == 0
    assert report["command"] == "replay"
    assert all(c["replay_all_hold"] for c in report["cases"])
    assert all("replay" in c for c in report["cases"])


def test_metric_fixture(tmp_path, fixtures):
    code, report = run(tmp_path, "metric", str(fixtures / "metric_triples.txt"))
    assert code == 0
    assert report["cases"][0]["triangle_tight"] is True
    assert report["cases"][1]["coincident"] is True


@pytest.mark.parametrize("name, expected", [
    ("continuity_sum3.txt", 0),
    ("continuity_prod2.json", 0),
    ("sgn_control.txt", 1),
])
def test_continuity_fixtures(tmp_path, fixtures, name, expected):
    code, report = run(tmp_path, "continuity", str(fixtures / name))
    assert code == expected


def test_probe_without_order_runs_every_order(tmp_path, fixtures):
    _, report = run(tmp_path, "continuity", str(fixtures / "continuity_sum3.txt"), "--orders", "1,3")
    assert [c["k"] for c in report["cases"]] == [1, 1, 3, 2]
    assert report["config"]["expr"] == "x1 + x2 + x3"


def test_sgn_control_flags_the_origin(tmp_path, fixtures):
    _, report = run(tmp_path, "continuity", str(fixtures / "sgn_control.txt"))
    assert [c["violation"] for c in report["cases"]] == [True, True, False]
    assert report["verdict"] == "violation"


@pytest.mark.parametrize("command", ["axioms", "cs", "metric", "continuity"])
def test_generated_runs_pass(tmp_path, command):
    code, report = run(tmp_path, command, *SMALL)
    assert code == 0
    assert report["totals"]["failed_checks"] == 0
    assert report["source"] == "generated"


def test_structured_output_is_reproducible(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    a.mkdir()
    b.mkdir()
    run(a, "cs", *SMALL)
    run(b, "cs", *SMALL)
    assert (a / "report.json").read_bytes() == (b / "report.json").read_bytes()


def test_timing_is_opt_in(tmp_path):
    _, report = run(tmp_path, "metric", *SMALL, "--timing")
    assert "elapsed" in report["timing"]


def test_text_report_to_stdout(capsys, fixtures):
    code = main(["metric", str(fixtures / "metric_triples.txt"), "--quiet"])
    assert code == 0
    assert capsys.readouterr().out.startswith("metric: PASS (exit 0)")


@pytest.mark.parametrize("argv", [
    ["cs", "--dims", "3..1"],
    ["cs", "--cases", "0"],
    ["continuity", "--orders", "0"],
])
def test_bad_config_exits_two(tmp_path, argv):
    code, _ = run(tmp_path, *argv)
    assert code == 2


def test_missing_file_exits_two(tmp_path):
    code, _ = run(tmp_path, "cs", str(tmp_path / "missing.txt"))
    assert code == 2


def test_bad_expression_exits_two(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("arity 1\nexpr x1 +\n")
    code, _ = run(tmp_path, "continuity", str(path))
    assert code == 2


def test_argparse_errors_exit():
    with pytest.raises(SystemExit):
        main(["cs", "--dims", "a..b"])
    with pytest.raises(SystemExit):
        main(["nonsense"])


@pytest.mark.parametrize("arity", ['"three"', "2.5", "true"])
def test_non_integer_arity_exits_two(tmp_path, arity):
    path = tmp_path / "c.json"
    path.write_text('{"arity": %s, "expr": "x1"}' % arity)
    code, _ = run(tmp_path, "continuity", str(path))
    assert code == 2
