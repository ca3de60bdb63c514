"""Command line behaviour: outputs, JSON stability and exit codes."""

import json
import os
import subprocess

import pytest

CLI = os.environ.get("ZETACOUNT_CLI", "zetacount")


def run(*args, stdin=None):
    return subprocess.run([CLI, *args], input=stdin, capture_output=True, text=True, timeout=120)


def run_json(*args, stdin=None):
    r = run("--json", *args, stdin=stdin)
    assert r.returncode == 0, r.stderr
    return json.loads(r.stdout)


def test_count_text():
    r = run("count", "-f", "y^2-x^3", "-p", "2", "--max-i", "2")
    assert r.returncode == 0
    rows = [line for line in r.stdout.splitlines() if line.startswith("M_")]
    assert [line.split("=")[1].strip() for line in rows] == ["1", "2", "6"]


def test_count_json():
    assert run_json("count", "-f", "x^3+y^5", "-p", "2", "--max-i", "3")["counts"][-1] == "20"
    assert run_json("count", "-f", "1", "-p", "5", "--max-i", "2")["counts"] == ["1", "0", "0"]


def test_count_compare_and_modes():
    out = run_json("count", "-f", "y^2-x^3", "-p", "3", "--max-i", "5", "--compare")
    assert out["agree"] is True
    for mode in ["none", "nonsingular", "graded", "taylor"]:
        r = run_json("count", "-f", "x^3+y^5", "-p", "2", "--max-i", "8", "--short-circuit", mode)
        assert r["counts"][-1] == "2176"


def test_count_poly_json(tmp_path):
    poly = tmp_path / "f.json"
    poly.write_text(json.dumps({"vars": 2, "terms": [{"coeff": "1", "exps": [0, 2]}, {"coeff": "-1", "exps": [3, 0]}]}))
    assert run_json("count", "--poly-json", str(poly), "-p", "2", "--max-i", "2")["counts"] == ["1", "2", "6"]


def test_fit():
    out = run_json("fit", "-f", "y^2-x^3", "-p", "2", "--factors", "5,6;1,1")
    assert out["numerator"] == ["1", "0", "1/8", "0", "0", "0", "-1/64"]
    assert out["denominator_factors"] == [{"nu": 5, "N": 6}, {"nu": 1, "N": 1}]


def test_classes():
    out = run_json("classes", "--factors", "2,3;4,6;1,2", "-n", "2")
    ratios = [(c["a"], c["b"], c["m"]) for c in out["classes"]]
    assert ratios == [(1, 2, 1), (4, 6, 2)]


def test_predict():
    assert run_json("predict", "--fixture", "example2", "-p", "2", "-i", "18")[0]["M"] == "84017152"
    r = run("predict", "--fixture", "example1", "-p", "2", "-i", "0,8")
    assert r.returncode == 0
    assert r.stdout.split() == ["M_0", "=", "1", "M_8", "=", "896"]


def test_predict_from_closed_form_file(tmp_path):
    cf = run_json("closed-form", "--fixture", "example1", "-p", "3")
    path = tmp_path / "cf.json"
    path.write_text(json.dumps(cf))
    assert run_json("predict", "--closed-form", str(path), "-i", "1")[0]["M"] == "3"


def test_convert_roundtrip(tmp_path):
    series = run_json("fit", "-f", "y^2-x^3", "-p", "2", "--factors", "5,6;1,1")
    z = run_json("convert", stdin=json.dumps(series))
    assert z["function"] == "Z"
    back = run_json("convert", "--to", "p", stdin=json.dumps(z))
    assert back["numerator"] == series["numerator"]
    constant = {"p": "3", "n": 1, "numerator": ["1"], "denominator": ["1"]}
    assert run_json("convert", stdin=json.dumps(constant))["numerator"] == ["1"]


def test_pipeline_fixture():
    r = run("pipeline", "--fixture", "example1", "-p", "2")
    assert r.returncode == 0, r.stderr
    assert "7/6" in r.stdout
    assert r.stdout.rstrip().endswith("PASS")
    assert run("pipeline", "--fixture", "example2", "-p", "3").returncode == 0


def test_verify():
    assert run("verify", "--fixture", "example1", "-p", "3", "--max-i", "10").returncode == 0


@pytest.mark.parametrize(
    "args,stdin,code",
    [
        (["convert"], "{bad", 2),
        (["count", "-f", "x^", "-p", "2", "--max-i", "2"], None, 2),
        (["count", "-p", "2"], None, 2),
        (["fit", "-f", "x", "-p", "2", "--factors", "0,1"], None, 2),
        (["count", "-f", "x*y", "-p", "3", "--max-i", "12", "--naive", "--budget-evals", "1000"], None, 3),
        (["count", "-f", "y^2-x^3", "-p", "2", "--max-i", "12", "--short-circuit", "none", "--budget-nodes", "50"], None, 3),
        (["count", "-f", "x", "-p", "4", "--max-i", "2"], None, 4),
        (["pipeline", "-f", "y^2-x^3", "-p", "2", "--factors", "1,1"], None, 4),
        (["predict", "--fixture", "example1", "-p", "2", "-i", "-1"], None, 4),
        (["convert", "--to", "p"], json.dumps({"function": "Z", "p": "2", "n": 1, "numerator": ["2"], "denominator": ["1"]}), 4),
    ],
)
def test_exit_codes(args, stdin, code):
    r = run(*args, stdin=stdin)
    assert r.returncode == code, r.stdout + r.stderr


def test_pipeline_failure_is_stage_labelled():
    r = run("pipeline", "-f", "y^2-x^3", "-p", "2", "--factors", "1,1")
    assert "[fit]" in r.stderr
    assert "consistency" in r.stderr


def test_json_is_byte_stable():
    args = ["--json", "pipeline", "--fixture", "example1", "-p", "3"]
    first, second = run(*args), run(*args)
    assert first.returncode == 0
    assert first.stdout == second.stdout
    a = run("--json", "closed-form", "--fixture", "example2", "-p", "2", "--threads", "1").stdout
    b = run("--json", "closed-form", "--fixture", "example2", "-p", "2", "--threads", "4").stdout
    assert a == b
