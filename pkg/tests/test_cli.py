import json
import os
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from vermacat import cli
from vermacat.cli import CheckConfig, emit, main, parse_range, run_checks

SCHEMA = json.loads((Path(__file__).resolve().parents[1] / "docs" / "report_schema.json").read_text())


def test_emit_empty_and_header():
    assert emit([], "json") == b"[]\n"
    assert emit([], "csv") == b"suite,check,k,n,status\n"


def test_emit_single_record():
    rec = {"suite": "dg", "check": "qih", "k": 1, "n": 2, "status": "pass"}
    out = json.loads(emit([rec], "json"))
    assert out == [rec]
    jsonschema.validate(out, SCHEMA)
    assert emit([rec], "csv") == b"suite,check,k,n,status\ndg,qih,1,2,pass\n"


def test_emit_is_deterministic():
    a = {"status": "pass", "n": None, "k": 0, "check": "x", "suite": "bimod", "detail": "d"}
    b = {"suite": "bimod", "check": "x", "k": 0, "n": None, "status": "pass", "detail": "d"}
    for fmt in ("json", "csv", "text"):
        assert emit([a], fmt) == emit([b], fmt)
    with pytest.raises(ValueError):
        emit([a], "xml")


def test_parse_range():
    assert parse_range("0..3") == (0, 3)
    assert parse_range("-12..12") == (-12, 12)
    assert parse_range("4") == (4, 4)
    with pytest.raises(Exception):
        parse_range("3..1")


def test_config_validation():
    with pytest.raises(ValueError):
        CheckConfig(suite="nope")
    with pytest.raises(ValueError):
        CheckConfig(suite="dg", k_range=(2, 1))
    with pytest.raises(ValueError):
        CheckConfig(suite="dg", window=(4, -4, 0, 2))
    with pytest.raises(ValueError):
        CheckConfig(suite="dg", format="yaml")


def test_check_passes_and_validates(capsys):
    assert main(["check", "dg", "--k", "0..1", "--n", "1..2", "--N", "1", "--qwin", "-4..16", "--lwin", "0..4"]) == 0
    out = json.loads(capsys.readouterr().out)
    jsonschema.validate(out, SCHEMA)
    assert {r["check"] for r in out} >= {"qih", "ef_homology", "cyclotomic", "intertwine"}
    assert all(r["status"] == "pass" for r in out)


def test_partial_window_fails(capsys):
    assert main(["check", "dg", "--k", "1", "--n", "3", "--N", "1", "--qwin", "-4..2", "--format", "csv"]) == 1
    assert "dg,qih,1,3,partial" in capsys.readouterr().out


def test_failing_check_sets_exit_status(monkeypatch, capsys):
    monkeypatch.setattr(cli, "plan", lambda cfg: [(_bad_job, ())])
    assert main(["check", "uqsl2"]) == 1
    assert json.loads(capsys.readouterr().out)[0]["status"] == "fail"


def _bad_job():
    raise RuntimeError("boom")


def test_invalid_suite_and_unwritable_output(tmp_path, capsys):
    with pytest.raises(SystemExit) as e:
        main(["check", "nope"])
    assert e.value.code != 0
    target = tmp_path / "missing" / "out.json"
    assert main(["check", "uqsl2", "--k", "0", "--n", "0", "--output", str(target)]) == 2
    assert "vermacat:" in capsys.readouterr().err


def test_output_file_and_threads_are_order_stable(tmp_path, monkeypatch):
    cfg = dict(suite="uqsl2", k_range=(0, 1), n_range=(-1, 1))
    monkeypatch.setenv(cli.THREADS_ENV, "1")
    one = emit(run_checks(CheckConfig(**cfg)))
    monkeypatch.setenv(cli.THREADS_ENV, "3")
    many = emit(run_checks(CheckConfig(**cfg)))
    assert one == many
    path = tmp_path / "r.json"
    assert main(["check", "uqsl2", "--k", "0..1", "--n", "-1..1", "--output", str(path)]) == 0
    assert path.read_bytes() == one


def test_gdim_normalize_shapovalov(capsys):
    assert main(["gdim", "--ring", "omega", "--k", "1", "--qwin", "-2..4", "--lwin", "0..2", "--format", "text"]) == 0
    assert capsys.readouterr().out == \
        "gdim omega k=1: 1 + q^2 + q^4 + pi*l^2*q^-2 + pi*l^2 + pi*l^2*q^2 + pi*l^2*q^4\n"
    assert main(["normalize", "d1 x1", "--n", "2", "--m", "0"]) == 0
    assert capsys.readouterr().out == "x2 d1 + 1\n"
    assert main(["shapovalov", "--i", "1", "--j", "1", "--format", "json"]) == 0
    rec = json.loads(capsys.readouterr().out)[0]
    assert rec["closed_form"] == "l*q^-2*[l,-1]" and rec["status"] == "pass"


def test_gdim_omega2_matches_product_formula(capsys):
    assert main(["gdim", "--ring", "omega", "--k", "2", "--qwin", "-8..8", "--lwin", "0..4", "--format", "csv"]) == 0
    rows = capsys.readouterr().out.splitlines()
    assert rows[0] == "q,l,even,odd"
    # 1/((1-q^2)(1-q^4)) at lambda^0: partitions into parts 1 and 2
    assert rows[1:6] == ["0,0,1,0", "2,0,1,0", "4,0,2,0", "6,0,2,0", "8,0,3,0"]


def test_homology_subcommand(capsys):
    assert main(["homology", "--host", "omega", "--k", "1", "--n", "2", "--format", "csv"]) == 0
    assert capsys.readouterr().out == "q,l,parity,dim\n0,0,0,1\n2,0,0,1\n"
    assert main(["homology", "--host", "omega", "--k", "2", "--n", "4", "--qwin", "0..4"]) == 1


def test_module_entry_point():
    env = dict(os.environ)
    src = str(Path(__file__).resolve().parents[1] / "src")
    env["PYTHONPATH"] = src + os.pathsep + env.get("PYTHONPATH", "")
    r = subprocess.run([sys.executable, "-m", "vermacat", "normalize", "d1 d1", "--n", "2"],
                       capture_output=True, text=True, env=env)
    assert r.returncode == 0 and r.stdout == "0\n"
