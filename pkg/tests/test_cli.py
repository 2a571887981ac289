import csv
import io
import json
import subprocess
import sys

import pytest

from reeb_spectra.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_close_example():
    code, out, _ = call("close", "--a", "sqrt(2)", "--L", "10")
    assert code == 0
    data = json.loads(out)
    assert data["value_exact"] == "(-7+5*sqrt(2))/1"
    assert abs(data["value_float"] - 0.0710678118654752) < 1e-15
    assert data["side"] == "minus"
    assert (data["approx"]["m_minus"], data["approx"]["n_minus"]) == (5, 7)
    assert (data["approx"]["m_plus"], data["approx"]["n_plus"]) == (7, 10)
    assert data["approx"]["det"] == 1


def test_spectrum_csv_example():
    code, out, _ = call("spectrum", "--a", "1", "--b", "1", "--L", "3", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 10
    assert [int(r["value_exact"]) for r in rows] == [0, 1, 1, 2, 2, 2, 3, 3, 3, 3]
    assert list(rows[0]) == ["k", "value_exact", "value_float", "m", "n"]
    for r in rows:
        assert int(r["m"]) + int(r["n"]) == int(r["value_exact"])


def test_gap_infinite_example():
    code, out, _ = call("gap", "--a", "1", "--b", "1", "--L", "0.5")
    assert code == 0
    data = json.loads(out)
    assert data["gap"] == "inf" and data["gap_float"] == "inf"
    assert data["k_star"] is None


def test_gap_finite():
    code, out, _ = call("gap", "--a", "sqrt(2)", "--L", "10")
    data = json.loads(out)
    assert code == 0 and data["gap"] == "(-7+5*sqrt(2))/1"
    assert data["c_k_star_minus_1"] == "7"


def test_approx_and_width():
    code, out, _ = call("approx", "--a", "(1+sqrt(5))/2", "--L", "10")
    data = json.loads(out)
    assert code == 0
    assert data["width_exact"] == "(-11+5*sqrt(5))/2"


@pytest.mark.parametrize("argv", [
    ("close", "--a", "sqrt(2)", "--L", "1"),
    ("approx", "--a", "3/2", "--L", "10"),
    ("close", "--a", "1/2", "--L", "10"),
    ("spectrum", "--a", "sqrt(2)", "--b", "sqrt(3)", "--L", "4"),
    ("spectrum", "--kind", "ball", "--a", "-1", "--k", "4"),
    ("sweep", "--a", "sqrt(2)", "--L-from", "5", "--L-to", "4"),
])
def test_contract_violations_exit_2(argv):
    code, out, err = call(*argv)
    assert code == 2
    assert out == ""
    assert "precondition" in err


@pytest.mark.parametrize("argv", [
    ("close", "--a", "sqrt(2", "--L", "10"),
    ("close", "--a", "sqrt(2)"),
    ("frobnicate",),
    ("spectrum", "--a", "1", "--b", "1"),
    ("numcheck", "--grid", "1,2"),
    ("spectrum", "--kind", "toric", "--polygon", "[[0,0],[1,", "--L", "3"),
])
def test_parse_errors_exit_3(argv):
    code, out, err = call(*argv)
    assert code == 3
    assert out == "" and err.startswith("error:")


def test_parse_error_reports_offset():
    code, _, err = call("close", "--a", "sqrt(2", "--L", "10")
    assert code == 3 and "byte offset 6" in err


@pytest.mark.parametrize("argv", [
    ("spectrum", "--a", "sqrt(2)", "--b", "1", "--k", "30"),
    ("spectrum", "--kind", "ball", "--a", "2", "--k", "12", "--format", "csv"),
    ("sweep", "--a", "sqrt(3)", "--L-from", "2", "--L-to", "25", "--format", "csv"),
    ("asympt", "--a", "1", "--b", "1", "--k", "1000"),
    ("gap", "--a", "(3+sqrt(5))/2", "--L", "17", "--format", "csv"),
])
def test_deterministic_output(argv):
    first = call(*argv)
    second = call(*argv)
    assert first == second and first[0] == 0


def test_sweep_columns_and_parallel_agreement(monkeypatch):
    base = ("sweep", "--a", "sqrt(2)", "--L-from", "2", "--L-to", "40", "--L-step", "1/2", "--format", "csv")
    code, serial, _ = call(*base)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(serial)))
    assert list(rows[0]) == ["L", "gap_exact", "gap_float", "close_exact", "close_float", "L_times_gap"]
    assert [r["L"] for r in rows][:3] == ["2", "5/2", "3"]
    for r in rows:
        assert r["gap_exact"] == r["close_exact"]
    monkeypatch.setenv("REEB_SPECTRA_THREADS", "2")
    code, parallel, _ = call(*base, "--jobs", "4")
    assert code == 0 and parallel == serial


def test_sweep_marks_small_L_rows():
    code, out, _ = call("sweep", "--a", "sqrt(2)", "--L-from", "1/2", "--L-to", "2", "--L-step", "1/2")
    rows = json.loads(out)
    assert code == 0
    assert rows[0]["gap_exact"] == "inf" and rows[0]["close_exact"] is None
    assert rows[-1]["close_exact"] == rows[-1]["gap_exact"]


def test_toric_spectrum():
    code, out, _ = call("spectrum", "--kind", "toric", "--polygon", "[[0,0],[2,0],[0,1]]", "--L", "5")
    rows = json.loads(out)
    assert code == 0
    edge = [r for r in rows if r["kind"] == "edge"]
    assert edge == [{"kind": "edge", "value_exact": "2", "value_float": 2.0, "m": 1, "n": 2,
                     "location": "(2,0);(0,1)"}]
    assert sorted(r["value_exact"] for r in rows if r["kind"] == "corner") == ["1", "2"]


def test_asympt_ball_bracket():
    code, out, _ = call("asympt", "--a", "1", "--b", "1", "--k", "10000")
    data = json.loads(out)
    lo, hi = data["ball_bracket"]
    assert code == 0 and lo <= data["ratio"] <= hi
    assert lo == 140 / 143 and hi == 140 / 141


def test_output_file(tmp_path):
    target = tmp_path / "out.json"
    code, out, _ = call("--output", str(target), "close", "--a", "sqrt(3)", "--L", "15")
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["side"] in ("minus", "plus")


def test_verify_passes():
    code, out, _ = call("verify")
    data = json.loads(out)
    assert code == 0 and data["passed"]
    assert len(data["checks"]) == 8 and all(c["ok"] for c in data["checks"])


def test_numcheck_report(tmp_path):
    profile = tmp_path / "prof.json"
    profile.write_text('{"standard": 0.1}')
    code, out, _ = call("numcheck", "--profile", str(profile), "--grid", "21,21,4")
    data = json.loads(out)
    assert code == 0
    assert data["box_condition"] and data["profile_violations"] == []
    assert max(data["reeb"]["max_abs"].values()) < 1e-6
    assert max(data["psi"]["max_abs"].values()) < 1e-8
    assert 3.5 <= data["convergence_ratio"] <= 4.5


def test_console_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "reeb_spectra", "close", "--a", "sqrt(2)", "--L", "10"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["value_exact"] == "(-7+5*sqrt(2))/1"
    proc = subprocess.run([sys.executable, "-m", "reeb_spectra", "close", "--a", "sqrt(2)", "--L", "1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 2
