import csv
import io
import json
import math
import subprocess
import sys
from importlib import resources

import jsonschema
import numpy as np
import pytest

from superhyp import cli


def _run(*argv):
    text, code, _ = cli.run(list(argv))
    return text, code


def _csv(text):
    return list(csv.DictReader(io.StringIO(text)))


def _schema(name):
    return json.loads(resources.files("superhyp").joinpath("schemas", name).read_text())


def test_density_example():
    text, code = _run("density", "--rho", "0", "--smax", "10", "--nodes", "5")
    assert code == 0
    rows = _csv(text)
    assert len(rows) == 5
    assert all(abs(float(r["density"]) - 4 * math.pi) < 1e-14 for r in rows)


def test_jone_example():
    text, code = _run("jone", "--rho", "-1", "--t", "0.5,1,2")
    rows = _csv(text)
    assert code == 0 and len(rows) == 3
    assert all(abs(float(r["jone"]) + 16 * math.pi ** 1.5) < 1e-11 for r in rows)


def test_phi_example():
    text, code = _run("phi", "--rho", "-1/2", "--lambda", "0+1.3i", "--t", "0")
    rows = _csv(text)
    assert code == 0
    assert float(rows[0]["re"]) == 0 and float(rows[0]["im"]) == 0


def test_eval_alias_matches():
    a = _run("eval", "cfun", "--rho", "1/2", "--lambda", "1")
    b = _run("cfun", "--rho", "1/2", "--lambda", "1")
    assert a == b
    assert abs(float(_csv(a[0])[0]["re"]) - 0.45015815807855303478) < 1e-15


def test_residues_columns_agree():
    text, code = _run("residues", "--rho", "-3/2", "--t", "1")
    rows = _csv(text)
    assert code == 0 and len(rows) == 2
    for r in rows:
        assert abs(float(r["residue"]) - float(r["residue_jet"])) < 1e-12 * abs(float(r["residue"]))


def test_csv_round_trip_digits():
    text, _ = _run("density", "--rho", "1/2", "--smax", "3", "--nodes", "4")
    from superhyp.spherical import plancherel_density
    for r in _csv(text):
        assert float(r["density"]) == float(plancherel_density("1/2", float(r["s"])))


def test_table_json_schema():
    text, code = _run("jone", "--rho", "-1", "--t", "0.5,1", "--format", "json")
    doc = json.loads(text)
    jsonschema.validate(doc, _schema("table.json"))
    assert doc["columns"] == ["t", "jone"]


def test_transform_grid_even_real():
    text, code = _run("transform", "--rho", "1", "--profile", "bump:0.64:1", "--sgrid", "-40:40:401")
    rows = _csv(text)
    assert code == 0 and len(rows) == 401
    re_ = np.array([float(r["re"]) for r in rows])
    im_ = np.array([float(r["im"]) for r in rows])
    assert np.max(np.abs(im_)) <= 1e-14 * np.max(np.abs(re_))
    assert np.allclose(re_, re_[::-1], rtol=1e-12, atol=1e-15 * np.max(np.abs(re_)))


def test_invert_rho0_exit_zero():
    text, code = _run("invert", "--rho", "0", "--profile", "bump:0.64:1")
    doc = json.loads(text)
    jsonschema.validate(doc, _schema("inversion_report.json"))
    assert code == 0 and doc["passed"] and doc["rel_err"] <= 1e-5


def test_invert_halfint_reports_constant_branch():
    text, code = _run("invert", "--rho", "-1/2", "--h1", "bump:0.64:1", "--h2", "bump:0.64:1")
    doc = json.loads(text)
    jsonschema.validate(doc, _schema("inversion_report.json"))
    assert code == 0
    assert doc["diagnostics"]["constant_branch"]["rel_err"] <= 1e-12
    # f(0) = h2(0) / L(-1/2) = sqrt(2), so lhs = 8 pi sqrt(2)
    assert abs(doc["lhs"] - 8 * math.pi * math.sqrt(2)) < 1e-12


def test_invert_failure_exit_one():
    # an impossible tolerance turns a correct run into a verification failure
    text, code = _run("invert", "--rho", "0", "--profile", "bump:0.64:1", "--tol", "1e-30")
    assert code == 1 and json.loads(text)["passed"] is False


def test_verify_grassmann_suite():
    text, code = _run("verify", "--suite", "grassmann")
    doc = json.loads(text)
    jsonschema.validate(doc, _schema("verify_report.json"))
    assert code == 0 and doc["passed"]
    assert all("runtime" not in r for r in doc["results"])
    timed = json.loads(_run("verify", "--suite", "grassmann", "--timings")[0])
    assert all("runtime" in r for r in timed["results"])


@pytest.mark.parametrize("argv", [
    ("phi", "--rho", "1.5", "--lambda", "1", "--t", "0"),
    ("phi", "--lambda", "1", "--t", "0"),
    ("phi", "--rho", "1/2", "--p", "2", "--q", "1", "--lambda", "1", "--t", "0"),
    ("transform", "--rho", "0", "--profile", "bump:1.2:1", "--sgrid", "0:1:3"),
    ("transform", "--rho", "0", "--profile", "wedge:1", "--sgrid", "0:1:3"),
    ("density", "--rho", "0", "--sgrid", "0:1"),
    ("invert", "--rho", "-1/2", "--profile", "bump:0.5:1", "--h1", "bump:0.5:1"),
    ("invert", "--rho", "0", "--h1", "bump:0.5:1", "--h2", "bump:0.5:1"),
    ("verify", "--suite", "nonsense"),
])
def test_config_errors_exit_two(argv):
    text, code = _run(*argv)
    assert code == 2
    assert text.startswith("superhyp: error")


def test_pq_consistent_with_rho():
    a = _run("cfun", "--p", "2", "--q", "1", "--lambda", "0.7")
    b = _run("cfun", "--rho", "0", "--lambda", "0.7")
    assert a == b


def test_config_file_and_override(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"rho": "0", "lambda": "1,2", "t": "0.5"}))
    a, code = _run("phi", "--config", str(cfg))
    assert code == 0 and len(_csv(a)) == 2
    b, _ = _run("phi", "--config", str(cfg), "--rho", "1")
    c, _ = _run("phi", "--rho", "1", "--lambda", "1,2", "--t", "0.5")
    assert b == c and a != b


def test_config_unknown_key(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"rho": "0", "bogus": 1}))
    _, code = _run("phi", "--config", str(cfg))
    assert code == 2


def _main(tmp_path, name, *argv):
    out = tmp_path / name
    proc = subprocess.run([sys.executable, "-m", "superhyp", *argv, "--out", str(out)],
                          capture_output=True, text=True)
    return proc.returncode, out.read_bytes()


def test_byte_identical_reruns(tmp_path):
    argv = ("transform", "--rho", "-3/2", "--profile", "bump:0.64:1", "--sgrid", "0:20:21")
    c1, b1 = _main(tmp_path, "a.csv", *argv)
    c2, b2 = _main(tmp_path, "b.csv", *argv)
    assert c1 == c2 == 0 and b1 == b2
    argv = ("invert", "--rho", "-1", "--profile", "bump:0.64:1")
    c1, b1 = _main(tmp_path, "a.json", *argv)
    c2, b2 = _main(tmp_path, "b.json", *argv)
    assert c1 == c2 == 0 and b1 == b2


def test_main_reports_errors_on_stderr():
    proc = subprocess.run([sys.executable, "-m", "superhyp", "phi", "--rho", "0.5", "--t", "0"],
                          capture_output=True, text=True)
    assert proc.returncode == 2
    assert "error" in proc.stderr and proc.stdout == ""
