"""
Tests for the command-line driver and the JSON-lines verification reports
"""

import json

import pytest

from run_verification import main

SMALL_CONFIG = """
defaults:
  samples: 5
  seed: 7
  field: rational
  box: 10
charts:
  triples: 3
grids:
  pairing_max: 3
  floor_max: 4
  partition_max: 3
  exhaustive_max: 3
  tuple_max: 2
  tuple_limit: 200
  subset_limit: 5000
"""


@pytest.fixture
def small_config(tmp_path):
    path = tmp_path / "verification.yaml"
    path.write_text(SMALL_CONFIG)
    return str(path)


@pytest.fixture(autouse=True)
def no_seed_override(monkeypatch):
    monkeypatch.delenv("SGK_SEED", raising=False)


def read_report(path):
    lines = [json.loads(line) for line in open(path) if line.strip()]
    return lines[:-1], lines[-1]


def run_verify(tmp_path, config, *extra, name="report.jsonl"):
    out = tmp_path / name
    code = main(["verify", "--config", config, "--report", str(out), *extra])
    return code, out


def test_gen_document(tmp_path):
    out = tmp_path / "datum.json"
    assert main(["gen", "--r", "3", "--q", "3", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["one_line"] == [4, 7, 10]
    assert doc["C"]["3"] == [1, 2, 3, 5, 6, 8, 9]
    assert doc["dimension"] == 15
    assert len(doc["betas"]) == 15
    beta = next(b for b in doc["betas"] if (b["i"], b["j"]) == (5, 2))
    assert beta["d"] == 2
    assert beta["peak_pairings"] == ["0", "1", "0"]


def test_gen_to_stdout(capsys):
    assert main(["gen", "--r", "1", "--q", "5"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["word"] == [5, 4, 3, 2, 1]
    assert doc["C"]["1"] == [1, 2, 3, 4, 5]


def test_gen_rejects_q_below_two():
    assert main(["gen", "--r", "2", "--q", "1"]) == 2


def write_point(tmp_path, doc):
    path = tmp_path / "point.json"
    path.write_text(json.dumps(doc))
    return str(path)


def test_semistable_point(tmp_path, capsys):
    doc = {"r": 3, "q": 3, "entries": [
        {"i": 1, "j": 1, "value": "1"}, {"i": 5, "j": 2, "value": "2/3"}, {"i": 8, "j": 3, "value": "-1"},
    ]}
    assert main(["semistable", "--point", write_point(tmp_path, doc)]) == 0
    result = json.loads(capsys.readouterr().out)
    assert result["semistable"] is True
    assert result["witnesses"] == [{"j": 1, "i": 1}, {"j": 2, "i": 5}, {"j": 3, "i": 8}]
    assert result["matrix"][6] == ["0", "1", "0"]


@pytest.mark.parametrize("entries,column", [
    ([], 1),
    ([{"i": 1, "j": 1, "value": "1"}, {"i": 2, "j": 2, "value": "1"}], 3),
])
def test_unstable_points(tmp_path, capsys, entries, column):
    path = write_point(tmp_path, {"r": 3, "q": 3, "entries": entries})
    assert main(["semistable", "--point", path]) == 1
    result = json.loads(capsys.readouterr().out)
    assert result["semistable"] is False
    assert result["failing_column"] == column


def test_semistable_input_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert main(["semistable", "--point", str(bad)]) == 2
    assert main(["semistable", "--point", str(tmp_path / "missing.json")]) == 2
    outside = write_point(tmp_path, {"r": 1, "q": 2, "entries": [{"i": 3, "j": 1, "value": "1"}]})
    assert main(["semistable", "--point", outside]) == 2
    inexact = write_point(tmp_path, {"r": 1, "q": 2, "entries": [{"i": 1, "j": 1, "value": 0.5}]})
    assert main(["semistable", "--point", inexact]) == 2


@pytest.mark.parametrize("doc", [
    {"r": "three", "q": 2, "entries": []},
    {"r": 1, "q": 2, "entries": [{"i": "x", "j": 1, "value": "1"}]},
    {"r": 1, "q": 2, "entries": "none"},
    [1, 2, 3],
])
def test_malformed_point_documents(tmp_path, doc):
    assert main(["semistable", "--point", write_point(tmp_path, doc)]) == 2


def test_undecodable_point_file(tmp_path):
    raw = tmp_path / "raw.json"
    raw.write_bytes(b"\xff\xfe{}")
    assert main(["semistable", "--point", str(raw)]) == 2


def test_lemma_suite_report(tmp_path, small_config):
    code, out = run_verify(tmp_path, small_config, "--r", "3", "--q", "3", "--suite", "lemmas")
    assert code == 0
    records, summary = read_report(out)
    by_check = {rec["check"]: rec for rec in records}
    assert by_check["peak_pairings"]["witness"] == ["-9", "-8", "-7"]
    assert by_check["minimal_representative"]["witness"] == {"one_line": [4, 7, 10]}
    assert all(rec["suite"] == "lemmas" and rec["status"] == "pass" for rec in records)
    assert summary["status"] == "pass"
    assert summary["failed"] == []
    assert summary["params"]["seed"] == 7


def test_all_suites_pass(tmp_path, small_config):
    code, out = run_verify(tmp_path, small_config, "--r", "2", "--q", "2")
    assert code == 0
    records, summary = read_report(out)
    assert {rec["suite"] for rec in records} == {"lemmas", "orbits", "sections", "charts", "tower"}
    assert summary["checks"] == len(records)
    keys = [(rec["suite"], rec["check"]) for rec in records]
    assert keys == sorted(keys)


def test_stage_one_charts(tmp_path, small_config):
    code, out = run_verify(tmp_path, small_config, "--r", "1", "--q", "3", "--suite", "charts")
    assert code == 0
    records, _ = read_report(out)
    assert [rec["check"] for rec in records] == ["stage_one_fiber"]


def test_prime_field_run(tmp_path, small_config):
    code, out = run_verify(
        tmp_path, small_config, "--r", "3", "--q", "2", "--suite", "sections", "--field", "fp:2147483647",
    )
    assert code == 0
    _, summary = read_report(out)
    assert summary["params"]["field"] == "fp:2147483647"


def test_reports_are_deterministic(tmp_path, small_config):
    args = ("--r", "2", "--q", "3", "--suite", "charts")
    _, first = run_verify(tmp_path, small_config, *args, name="first.jsonl")
    _, second = run_verify(tmp_path, small_config, *args, name="second.jsonl")
    records1, summary1 = read_report(first)
    records2, summary2 = read_report(second)
    assert records1 == records2
    summary1.pop("timestamp")
    summary2.pop("timestamp")
    assert summary1 == summary2


def test_seed_environment_override(tmp_path, small_config, monkeypatch):
    monkeypatch.setenv("SGK_SEED", "99")
    code, out = run_verify(tmp_path, small_config, "--r", "2", "--q", "2", "--suite", "orbits", "--seed", "3")
    assert code == 0
    _, summary = read_report(out)
    assert summary["params"]["seed"] == 99


@pytest.mark.parametrize("extra", [
    ("--r", "2", "--q", "1"),
    ("--r", "0", "--q", "3"),
    ("--r", "2", "--q", "2", "--field", "fp:4"),
    ("--r", "2", "--q", "2", "--field", "fp:13"),
    ("--r", "2", "--q", "2", "--samples", "0"),
])
def test_configuration_errors(tmp_path, small_config, extra):
    code, _ = run_verify(tmp_path, small_config, *extra)
    assert code == 2


def test_unknown_suite_is_a_usage_error(tmp_path, small_config):
    with pytest.raises(SystemExit) as err:
        run_verify(tmp_path, small_config, "--r", "2", "--q", "2", "--suite", "bogus")
    assert err.value.code == 2


def test_tower_command(capsys):
    assert main(["tower", "--r", "3", "--q", "3"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["dims"] == [0, 2, 6, 12]
    assert doc["word_length_dims"] == [0, 2, 6, 12]
    assert [stage["rank"] for stage in doc["stages"]] == [3, 5, 7]


@pytest.mark.parametrize("extra", [("--r", "0", "--q", "3"), ("--r", "2", "--q", "1")])
def test_tower_rejects_degenerate_parameters(capsys, extra):
    assert main(["tower", *extra]) == 2
    assert capsys.readouterr().out == ""
