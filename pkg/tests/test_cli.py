"""CLI: argument handling, output formats, exit codes."""

import json

import pytest

from effsim.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_queens_text(capsys):
    code, out = run(capsys, "queens", "--n", "4")
    assert code == 0
    assert out.splitlines() == ["[2, 4, 1, 3]", "[3, 1, 4, 2]", "2 solutions"]


def test_queens_json(capsys):
    code, out = run(capsys, "queens", "--n", "4", "--pipeline", "fusedTF",
                    "--output", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload == {"n": 4, "count": 2,
                       "solutions": [[2, 4, 1, 3], [3, 1, 4, 2]]}


def test_queens_rejects_bad_n(capsys):
    with pytest.raises(SystemExit) as e:
        main(["queens", "--n", "0"])
    assert e.value.code == 2


def test_queens_rejects_bad_pipeline(capsys):
    with pytest.raises(SystemExit) as e:
        main(["queens", "--n", "4", "--pipeline", "bogus"])
    assert e.value.code == 2


def test_difftest_passing_suite(capsys):
    code, out = run(capsys, "difftest", "--suite", "T-localglobal",
                    "--trials", "50", "--seed", "42", "--output", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["suite"] == "T-localglobal"
    assert payload["failures"] == []


def test_difftest_unknown_suite(capsys):
    with pytest.raises(SystemExit) as e:
        main(["difftest", "--suite", "T-nope"])
    assert e.value.code == 2


def test_laws_globalstate_reports_counterexample(capsys):
    code, out = run(capsys, "laws", "--suite", "globalstate",
                    "--trials", "60", "--seed", "42", "--output", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["counterexample"] is not None


def test_laws_text_mentions_counterexample(capsys):
    code, out = run(capsys, "laws", "--suite", "globalstate",
                    "--trials", "60", "--seed", "42")
    assert code == 0
    assert "put-or violated under local semantics" in out


def test_lemmas_suite(capsys):
    code, out = run(capsys, "lemmas", "--suite", "state-restored",
                    "--trials", "40", "--seed", "42")
    assert code == 0
    assert "0 failures" in out


def test_seed_env_fallback(capsys, monkeypatch):
    monkeypatch.setenv("EFFSIM_SEED", "123")
    code, out = run(capsys, "difftest", "--suite", "T-localglobal",
                    "--trials", "20", "--output", "json")
    assert code == 0
    assert json.loads(out)["seed"] == 123


def test_bench_agreement(capsys):
    code, out = run(capsys, "bench", "--n", "5", "--output", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["agreement"] is True
    assert len(payload["timings"]) == 10
    assert all(row["count"] == 10 for row in payload["timings"])


def test_trace_records_machine_steps(capsys):
    code, out = run(capsys, "trace", "--pipeline", "fusedF", "--n", "4",
                    "--output", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["solutions"] == [[2, 4, 1, 3], [3, 1, 4, 2]]
    assert payload["steps"] == len(payload["trace"]) > 0
    ops = {rec[0] for rec in payload["trace"]}
    assert {"or", "put", "get", "ret"} <= ops


def test_trace_fused_tf(capsys):
    code, out = run(capsys, "trace", "--pipeline", "fusedTF", "--n", "4",
                    "--output", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["solutions"] == [[2, 4, 1, 3], [3, 1, 4, 2]]
    ops = {rec[0] for rec in payload["trace"]}
    assert {"or", "update", "untrail", "ret"} <= ops
