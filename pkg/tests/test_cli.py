from __future__ import annotations

import json
import shutil
import subprocess
import sys

import pytest

from grlcodes.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_field_info(capsys):
    code, out, _ = run(capsys, "field-info", "--p", "3", "--m", "2", "--elements")
    data = json.loads(out)
    assert code == 0
    assert data["q"] == 9 and data["modulus"] == [1, 0, 1]
    assert len(data["elements"]) == 9


def test_usage_errors_exit_2(capsys):
    assert run(capsys, "construct", "--family", "5", "--q", "5", "--m", "2", "--k", "3")[0] == 2
    assert run(capsys, "construct", "--family", "1", "--q", "5", "--m", "9", "--k", "3")[0] == 2
    assert run(capsys, "field-info", "--p", "4")[0] == 2
    assert run(capsys, "--threads", "0", "examples", "--only", "1")[0] == 2
    assert run(capsys, "table2", "--all")[0] == 2
    assert run(capsys, "bogus")[0] == 2


def test_construct_verify_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "construct", "--family", "2", "--q", "5", "--m", "2", "--k", "3", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["code"]["label"] == "NMDS" and data["code"]["hermitian_self_orthogonal"]
    p = tmp_path / "c.json"
    p.write_text(out)
    code, out, _ = run(capsys, "verify", "--spec", str(p), "--nmds", "--hso", "--distance")
    rep = json.loads(out)
    assert code == 0
    assert rep["hermitian_self_orthogonal"] and rep["nmds_criterion"]["holds"]
    assert rep["classification"]["d"] == 7


def test_verify_tampered_spec(capsys, tmp_path):
    _, out, _ = run(capsys, "construct", "--family", "1", "--q", "4", "--m", "2", "--k", "3", "--json")
    data = json.loads(out)
    data["spec"]["v"][0] = 0
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(data))
    code, _, err = run(capsys, "verify", "--spec", str(p))
    assert code == 2 and "invariant" in err
    code, _, _ = run(capsys, "verify", "--spec", str(tmp_path / "missing.json"))
    assert code == 2


def test_verify_not_self_orthogonal_exits_1(capsys, tmp_path):
    _, out, _ = run(capsys, "construct", "--family", "2", "--q", "5", "--m", "2", "--k", "3", "--json")
    data = json.loads(out)
    data["spec"]["v"][0] = 2 if data["spec"]["v"][0] != 2 else 3
    p = tmp_path / "t.json"
    p.write_text(json.dumps(data))
    code, out, _ = run(capsys, "verify", "--spec", str(p), "--hso")
    assert code == 1 and json.loads(out)["hermitian_self_orthogonal"] is False


def test_budget_exit_3(capsys, tmp_path, monkeypatch):
    _, out, _ = run(capsys, "construct", "--family", "1", "--q", "5", "--m", "2", "--k", "3", "--json")
    p = tmp_path / "c.json"
    p.write_text(out)
    monkeypatch.setenv("GRL_BUDGET", "10")
    code, _, err = run(capsys, "verify", "--spec", str(p), "--distance")
    assert code == 3 and "infeasible" in err


def test_classify_gfmat(capsys, tmp_path):
    code, out, _ = run(capsys, "construct", "--family", "1", "--q", "4", "--m", "2", "--k", "3", "--gfmat")
    assert code == 0 and out.startswith("GFMAT v1")
    p = tmp_path / "g.gfmat"
    p.write_text(out)
    code, out, _ = run(capsys, "classify", str(p))
    rep = json.loads(out)
    assert code == 0
    assert (rep["n"], rep["k"], rep["d"], rep["label"]) == (12, 3, 9, "NMDS")
    p.write_text("GFMAT v1\nnonsense\n")
    assert run(capsys, "classify", str(p))[0] == 2


def test_examples_command(capsys):
    code, out, _ = run(capsys, "examples", "--only", "1,2,4")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 3
    assert lines[2] == "PASS example 4 [20,4,16]_25 hermitian_so=true nmds=true"


def test_table2_formats(capsys, tmp_path):
    code, out, _ = run(capsys, "table2", "--format", "csv")
    assert code == 0 and len(out.splitlines()) == 73
    code, out, _ = run(capsys, "table2", "--q", "9", "--families", "1", "--format", "json")
    assert code == 0 and all(r["family"] == 1 for r in json.loads(out))
    empty = tmp_path / "k.csv"
    empty.write_text("n,k,d,d_is_bound,q,source\n")
    code, out, _ = run(capsys, "table2", "--known", str(empty), "--format", "json")
    assert code == 0 and all(r["known"] is None for r in json.loads(out))
    code, out, _ = run(capsys, "table2", "--q", "5", "--all")
    assert code == 0 and "[[10,4,3]]_5" in out


def test_sweep_and_thread_determinism(capsys):
    code1, out1, _ = run(capsys, "sweep", "--families", "1,3", "--q", "5", "--distance")
    code2, out2, _ = run(capsys, "--threads", "3", "sweep", "--families", "1,3", "--q", "5", "--distance")
    assert code1 == code2 == 0
    assert out1 == out2
    assert all(line.startswith("PASS") for line in out1.splitlines())


def test_verify_distance_thread_determinism(capsys, tmp_path):
    _, out, _ = run(capsys, "construct", "--family", "3", "--q", "5", "--m", "2", "--k", "4", "--json")
    p = tmp_path / "c.json"
    p.write_text(out)
    _, a, _ = run(capsys, "verify", "--spec", str(p), "--distance")
    _, b, _ = run(capsys, "--threads", "4", "verify", "--spec", str(p), "--distance")
    assert a == b and json.loads(a)["classification"]["d"] == 10


@pytest.mark.skipif(shutil.which("grlcodes") is None, reason="console script not installed")
def test_console_script():
    res = subprocess.run(["grlcodes", "field-info", "--p", "5"], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["q"] == 5


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "grlcodes.cli", "construct", "--family", "9",
                          "--q", "5", "--m", "2", "--k", "3"], capture_output=True, text=True)
    assert res.returncode == 2
