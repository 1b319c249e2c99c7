"""
Tests for the command-line surface
Exit codes and emitted documents
"""
import json
import os

import pytest

from config import Config
from main import EXIT_FAILED, EXIT_OK, EXIT_USAGE, cli_dispatch

FIXTURES = os.path.join(os.path.dirname(os.path.abspath(__file__)), "fixtures")


@pytest.fixture(autouse=True)
def restore_config(monkeypatch):
    for name in ("BUDGET", "JOBS", "SEED", "LOG_LEVEL", "CATALOG"):
        monkeypatch.setattr(Config, name, getattr(Config, name))


def run(capsys, *argv):
    code = cli_dispatch(list(argv))
    return code, capsys.readouterr().out


def fixture(*parts):
    return os.path.join(FIXTURES, *parts)


def test_catalog_list(capsys):
    code, out = run(capsys, "catalog", "list")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["schema"] == 1
    assert data["entries"][0]["name"] == "C1"
    assert len(data["entries"]) >= 30


def test_false_check_still_succeeds(capsys, tmp_path):
    sentence = tmp_path / "abelian.sexp"
    sentence.write_text("(forall v0 (forall v1 (= (* v0 v1) (* v1 v0))))\n", encoding="utf-8")
    code, out = run(capsys, "check", str(sentence), "S3")
    assert code == EXIT_OK
    assert json.loads(out)["value"] is False


def test_check_with_group_file(capsys, tmp_path):
    sentence = tmp_path / "cube.sexp"
    sentence.write_text("(forall v0 (= (* v0 (* v0 v0)) e))", encoding="utf-8")
    code, out = run(capsys, "check", str(sentence), fixture("groups", "c3_table.json"))
    assert code == EXIT_OK
    assert json.loads(out)["value"] is True


@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate"],
    ["synth-delta", "3"],
    ["--format", "yaml", "catalog", "list"],
    ["catalog", "export"],
    ["synth-delta", "0", "0"],
    ["three-cycles", "2"],
    ["row-reduce", "4", "2"],
    ["row-reduce", "2", "6"],
])
def test_usage_errors(capsys, argv):
    code, _ = run(capsys, *argv)
    assert code == EXIT_USAGE


def test_syntax_error_is_input_error(capsys, tmp_path):
    sentence = tmp_path / "broken.sexp"
    sentence.write_text("(forall v0", encoding="utf-8")
    code, _ = run(capsys, "check", str(sentence), "C2")
    assert code == EXIT_USAGE


def test_unknown_group_is_input_error(capsys, tmp_path):
    sentence = tmp_path / "true.sexp"
    sentence.write_text("(forall v0 (= v0 v0))", encoding="utf-8")
    code, _ = run(capsys, "check", str(sentence), "M24")
    assert code == EXIT_USAGE


def test_synth_delta(capsys, tmp_path):
    output = tmp_path / "delta.sexp"
    code, out = run(capsys, "synth-delta", "3", "2", "-o", str(output))
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["symbol_count"] == 72 == data["bound"]
    assert output.read_text(encoding="utf-8").startswith(";")


def test_synth_describe_writes_report(capsys, tmp_path):
    output, report = tmp_path / "c2.sexp", tmp_path / "c2.json"
    code, out = run(capsys, "synth-describe", fixture("jobs", "c2.json"), "-o", str(output), "--report", str(report))
    assert code == EXIT_OK
    assert json.loads(out)["length"]["symbol_count"] == 23
    assert json.loads(report.read_text(encoding="utf-8"))["constants"]["D"] == 17


def test_wrong_v_fails_verification(capsys):
    code, out = run(capsys, "verify-pres", fixture("jobs", "a5_wrong_v.json"))
    assert code == EXIT_FAILED
    assert json.loads(out)["v_ok"] is False
    code, _ = run(capsys, "synth-describe", fixture("jobs", "a5_wrong_v.json"))
    assert code == EXIT_FAILED


def test_sweep_of_synthesized_sentence(capsys, tmp_path):
    output = tmp_path / "c3.sexp"
    run(capsys, "synth-describe", fixture("jobs", "c3.json"), "-o", str(output))
    code, out = run(capsys, "sweep", str(output), "default", "--target", "C3", "--max-order", "6")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["unique"] is True
    assert sorted(data["models"]) == ["A3", "C3"]


def test_sweep_over_directory(capsys, tmp_path):
    run(capsys, "catalog", "export", str(tmp_path / "groups"))
    sentence = tmp_path / "true.sexp"
    sentence.write_text("(forall v0 (= v0 v0))", encoding="utf-8")
    code, out = run(capsys, "sweep", str(sentence), str(tmp_path / "groups"), "--max-order", "4")
    assert code == EXIT_FAILED
    assert json.loads(out)["unique"] is False


def test_diameter_layers(capsys):
    code, out = run(capsys, "diameter", fixture("groups", "a4.json"))
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["diameter"] == 3
    assert data["layers"] == [1, 3, 4, 4]


def test_three_cycles(capsys):
    code, out = run(capsys, "three-cycles", "5")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["three_cycles"] == 20
    assert data["max_word_length"] % 2 == 1


def test_out_order(capsys):
    code, out = run(capsys, "out", "C2xC2")
    assert code == EXIT_OK
    assert json.loads(out)["out_order"] == 6


def test_normalizer_brute(capsys):
    code, out = run(capsys, "normalizer", "S3", "--brute")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["agree"] is True
    assert data["holomorph_order"] == 36


def test_centre_bound(capsys):
    code, out = run(capsys, "centre-bound", "C4")
    assert code == EXIT_OK
    assert json.loads(out)["bound"] == 4


def test_row_reduce_csv(capsys):
    code, out = run(capsys, "--format", "csv", "row-reduce", "2", "5")
    assert code == EXIT_OK
    header = out.splitlines()[0].split(",")
    assert "max_factors" in header


def test_text_format(capsys):
    code, out = run(capsys, "--format", "text", "out", "C3")
    assert code == EXIT_OK
    assert "out_order: 2" in out


def test_bench_command(capsys, tmp_path):
    code, out = run(capsys, "--jobs", "1", "bench", fixture("jobs", "c2.json"),
                    fixture("jobs", "a5_wrong_v.json"), "--no-sweep", "-o", str(tmp_path))
    assert code == EXIT_FAILED
    records = json.loads(out)["records"]
    assert [r["status"] for r in records] == ["ok", "DiameterExceeded"]
    assert (tmp_path / "bench.csv").exists()


def test_budget_flag(capsys, tmp_path, monkeypatch):
    monkeypatch.delenv("SGD_BUDGET", raising=False)
    sentence = tmp_path / "abelian.sexp"
    sentence.write_text("(forall v0 (forall v1 (= (* v0 v1) (* v1 v0))))", encoding="utf-8")
    code, _ = run(capsys, "--budget", "3", "check", str(sentence), "S4")
    assert code == EXIT_FAILED


@pytest.mark.slow
def test_a5_sentence_is_false_on_s5(capsys, tmp_path):
    output = tmp_path / "a5.sexp"
    code, _ = run(capsys, "synth-describe", fixture("jobs", "a5.json"), "-o", str(output))
    assert code == EXIT_OK
    code, out = run(capsys, "check", str(output), "S5")
    assert code == EXIT_OK
    assert json.loads(out)["value"] is False


def test_mistyped_job_assignment_is_input_error(capsys, tmp_path):
    job = tmp_path / "c2.json"
    job.write_text(json.dumps({
        "presentation": {"generators": 1, "relators": [[[0, 1], [0, 1]]]},
        "group": {"kind": "table", "table": [[0, 1], [1, 0]]},
        "assignment": [[1]],
    }), encoding="utf-8")
    code, _ = run(capsys, "verify-pres", str(job))
    assert code == EXIT_USAGE
