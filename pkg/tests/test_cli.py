from __future__ import annotations

import json
import subprocess
import sys

import pytest

from twisted_yangian import cli
from twisted_yangian.lie_core import LieAlgebraData
from twisted_yangian.report import Report


def run(*argv):
    return cli.run(list(argv) + ["--quiet"])


def strip_runtime(text):
    obj = json.loads(text)
    obj.pop("runtime_ms")
    return obj


def test_algebra_build_and_pair_from_files(tmp_path):
    alg = tmp_path / "alg.json"
    assert run("algebra", "build", "--family", "sl", "--n", "3", "--chevalley", "--form", "trace",
               "--out", str(alg)) == 0
    L = LieAlgebraData.from_json_obj(json.loads(alg.read_text()))
    assert L.casimir == 6
    inv = tmp_path / "so3.json"
    inv.write_text(json.dumps({"images": {
        "e1": {"e2": -1}, "e2": {"e1": -1}, "f1": {"f2": -1}, "f2": {"f1": -1},
        "h1": {"h2": 1}, "h2": {"h1": 1}, "e3": {"e3": -1}, "f3": {"f3": -1}}}))
    pair = tmp_path / "pair.json"
    rep = tmp_path / "rep.json"
    assert run("pair", "build", "--algebra", str(alg), "--involution", str(inv), "--out", str(pair),
               "--report", str(rep)) == 0
    obj = json.loads(rep.read_text())
    assert obj["status"] == "pass" and obj["values"]["dim_h"] == 3
    assert run("verify", "--suite", "classical", "--pair", str(pair), "--max-degree", "5") == 0


@pytest.mark.parametrize("argv", [
    ("verify", "--suite", "classical", "--pair", "sl3-so3", "--max-degree", "5"),
    ("verify", "--suite", "proof-identities", "--algebra", "sl4"),
    ("verify", "--suite", "proof-identities", "--pair", "sl3-gl2"),
    ("verify", "--suite", "lemmas", "--algebra", "sl3"),
    ("verify", "--suite", "coideal", "--pair", "sl3-gl2"),
    ("verify", "--suite", "coideal", "--algebra", "sl3"),
    ("verify", "--suite", "hopf", "--pair", "sl3-so3"),
])
def test_verify_suites_pass(argv):
    assert run(*argv) == 0


def test_coeffs_export(tmp_path):
    out = tmp_path / "b.json"
    assert run("coeffs", "--pair", "sl3-so3", "--out", str(out)) == 0
    obj = json.loads(out.read_text())
    assert {m["name"] for m in obj["manifest"]} == {"beta", "gamma", "lambda", "upsilon"}


@pytest.mark.parametrize("argv", [
    ("bogus",),
    ("verify", "--suite", "nope", "--pair", "sl3-so3"),
    ("verify", "--suite", "classical"),
    ("verify", "--suite", "classical", "--pair", "/nonexistent.json"),
    ("verify", "--suite", "classical", "--pair", "sl3-so3", "--max-degree", "0"),
    ("algebra", "build", "--family", "so", "--n", "4"),
    ("algebra", "build"),
    ("coeffs", "--even"),
])
def test_usage_errors(argv):
    assert cli.run(list(argv)) == 2


def test_check_failure_exit_code(monkeypatch, tmp_path):
    def failing(args):
        rep = Report("fake")
        rep.add("always", "0 = 1", False)
        return rep.finish(), None
    monkeypatch.setattr(cli, "cmd_golden", failing)
    out = tmp_path / "r.json"
    assert cli.run(["sl3-golden", "--report", str(out), "--quiet"]) == 1
    obj = json.loads(out.read_text())
    assert obj["status"] == "fail" and obj["checks"][0]["witness"]


def test_reports_deterministic(tmp_path, monkeypatch):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    args = ["verify", "--suite", "proof-identities", "--pair", "sl3-so3"]
    assert run(*args, "--report", str(a)) == 0
    monkeypatch.setenv("TY_THREADS", "2")
    assert run(*args, "--report", str(b)) == 0
    assert strip_runtime(a.read_text()) == strip_runtime(b.read_text())
    ids = [c["id"] for c in json.loads(a.read_text())["checks"]]
    assert len(ids) == len(set(ids))


def test_bad_thread_setting(monkeypatch):
    monkeypatch.setenv("TY_THREADS", "many")
    assert run("verify", "--suite", "lemmas", "--algebra", "sl3") == 2


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "twisted_yangian.cli", "verify", "--suite", "lemmas",
                        "--algebra", "sl3"], capture_output=True, text=True)
    assert r.returncode == 0
    assert "passed" in r.stdout.splitlines()[-1]
