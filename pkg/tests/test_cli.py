from __future__ import annotations

import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from rolle_lab.cli.main import main

FIXTURES = Path(__file__).resolve().parents[1] / "src" / "rolle_lab" / "cli" / "fixtures"


def run_cli(*args: str, env: dict | None = None) -> subprocess.CompletedProcess:
    return subprocess.run([sys.executable, "-m", "rolle_lab.cli.main", *args],
                          capture_output=True, text=True, env=env)


def test_oscillator_fixture(capsys):
    assert main(["dlvp", str(FIXTURES / "dlvp_oscillator.json"), "--verify"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["schema"] == "rolle-lab/report/v1" and rep["ok"] is True
    assert rep["certificates"]["dlvp"]["bound"] == 23
    assert rep["comparisons"] == [{"bound": 23, "name": "dlvp", "oracle": 11}]
    assert "timing_seconds" not in rep


def test_mult_fixture(capsys):
    assert main(["mult", str(FIXTURES / "mult_identity.json")]) == 0
    assert json.loads(capsys.readouterr().out)["results"]["mu"] == "1"


def test_malformed_fixture_exit_1():
    r = run_cli("dlvp", str(FIXTURES / "malformed_dlvp.json"))
    assert r.returncode == 1
    assert "problem.payload.length: missing field" in r.stderr
    assert r.stdout == ""


def test_contradiction_fixture_exit_3():
    r = run_cli("dlvp", str(FIXTURES / "contradiction_dlvp.json"), "--verify")
    assert r.returncode == 3 and "CONTRADICTION" in r.stderr
    rep = json.loads(r.stdout)
    assert rep["ok"] is False
    (cmp,) = rep["comparisons"]
    assert cmp["bound"] < cmp["oracle"]


def test_kind_mismatch_and_float_literal(tmp_path, capsys):
    assert main(["mult", str(FIXTURES / "dlvp_oscillator.json")]) == 1
    p = tmp_path / "float.json"
    p.write_text(json.dumps({"kind": "dlvp", "payload": {"order": 2, "bounds": [0, 1.5], "length": "1"}}))
    assert main(["dlvp", str(p)]) == 1
    assert "float" in capsys.readouterr().err.lower()


def test_empty_corpus(capsys):
    assert main(["corpus", str(FIXTURES / "corpus_empty.json")]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["ok"] is True


def test_reports_are_byte_identical(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for out in (a, b):
        assert main(["dlvp", str(FIXTURES / "dlvp_oscillator.json"), "--verify", "--out", str(out)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_corpus_deterministic_across_thread_counts(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"kind": "rolle", "count": 25, "seed": 42}))
    outs = []
    for threads in ("1", "3"):
        env = dict(os.environ, ROLLE_LAB_THREADS=threads)
        r = run_cli("corpus", str(cfg), env=env)
        assert r.returncode == 0, r.stderr
        outs.append(r.stdout)
    assert outs[0] == outs[1]


def test_seed_override(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"kind": "descartes", "count": 10, "seed": 42}))
    assert main(["corpus", str(cfg), "--seed", "5"]) == 0
    assert json.loads(capsys.readouterr().out)["seed"] == 5


def test_verify_round_trip(tmp_path, capsys):
    out = tmp_path / "rep.json"
    assert main(["dlvp", str(FIXTURES / "dlvp_oscillator.json"), "--out", str(out)]) == 0
    assert main(["verify", str(out)]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["results"]["revalidated"] == 2 and rep["results"]["mismatches"] == []
    tampered = json.loads(out.read_text())
    tampered["certificates"]["dlvp"]["hypotheses"][1]["lhs"] = "1"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(tampered))
    assert main(["verify", str(bad)]) == 2


def test_text_format(capsys):
    assert main(["dlvp", str(FIXTURES / "dlvp_oscillator.json"), "--verify", "--format", "text"]) == 0
    text = capsys.readouterr().out
    assert "dlvp" in text and "23" in text


def test_timing_flag(capsys):
    assert main(["mult", str(FIXTURES / "mult_identity.json"), "--timing"]) == 0
    assert "timing_seconds" in json.loads(capsys.readouterr().out)


@pytest.mark.parametrize("name", sorted(p.name for p in FIXTURES.glob("*.json") if not p.name.startswith("corpus_")))
def test_only_contradiction_fixture_exits_3(name):
    data = json.loads((FIXTURES / name).read_text())
    r = run_cli(data["kind"], str(FIXTURES / name), "--verify")
    assert (r.returncode == 3) == (name == "contradiction_dlvp.json")
