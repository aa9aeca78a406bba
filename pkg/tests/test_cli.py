import csv
import io
import json
import math
import subprocess
import sys

import numpy as np
import pytest

from fermiamp import cli

QR = "0.7071067812"


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_curve_csv(capsys):
    code, out, _ = run(capsys, "curve", "--state", "phi-plus", "--alpha", "0.7853981634", "--qr", QR, "--grid", "2001")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["gamma", "negativity"]
    assert len(rows) == 2002
    assert float(rows[1][0]) == 0.0
    assert float(rows[1][1]) == pytest.approx(0.25, abs=1e-9)
    assert float(rows[-1][0]) == pytest.approx(math.pi / 4, rel=1e-12)


def test_curve_single_mode_starts_at_half(capsys):
    _, out, _ = run(capsys, "curve", "--alpha", "0.7853981634", "--qr", "1", "--grid", "5")
    first = out.splitlines()[1]
    assert first == "0,0.5"


def test_curve_json_and_output_file(capsys, tmp_path):
    path = tmp_path / "c.json"
    code, out, _ = run(capsys, "curve", "--state", "werner", "--fidelity", "0.5", "--qr", QR,
                       "--grid", "11", "--format", "json", "-o", str(path))
    assert code == 0 and out == ""
    rows = json.loads(path.read_text())
    assert len(rows) == 11 and set(rows[0]) == {"gamma", "negativity"}


def test_numbers_have_twelve_significant_digits(capsys):
    _, out, _ = run(capsys, "curve", "--alpha", "0.6", "--qr", "0.8", "--grid", "3")
    value = out.splitlines()[2].split(",")[1]
    digits = value.replace("0.", "", 1).lstrip("0").replace(".", "")
    assert len(digits) <= 12


def test_matrix_dump(capsys):
    code, out, _ = run(capsys, "matrix", "--state", "phi-star", "--alpha", "0.653", "--gamma", "0.5",
                       "--qr", QR, "--source", "closed-form")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("# basis |apm>")
    assert "# provenance: closed_form" in lines
    assert sum(l.startswith("# corrected:") for l in lines) == 2
    body = np.array([[float(x) for x in l.split()] for l in lines if not l.startswith("#")])
    _, out2, _ = run(capsys, "matrix", "--state", "phi-star", "--alpha", "0.653", "--gamma", "0.5", "--qr", QR)
    body2 = np.array([[float(x) for x in l.split()] for l in out2.splitlines() if not l.startswith("#")])
    assert np.max(np.abs(body - body2)) <= 1e-13


def test_matrix_json(capsys):
    _, out, _ = run(capsys, "matrix", "--state", "werner-like", "--fidelity", "0.6", "--gamma", "0.2",
                    "--qr", "0.9", "--format", "json")
    doc = json.loads(out)
    assert doc["provenance"] == "oracle" and len(doc["matrix"]) == 8


def test_matrix_closed_form_unavailable_for_phi_minus(capsys):
    code, _, err = run(capsys, "matrix", "--state", "phi-minus", "--alpha", "0.3", "--source", "closed-form")
    assert code == 2 and len(err.strip().splitlines()) == 1


def test_variation_werner(capsys):
    code, out, _ = run(capsys, "variation", "--state", "werner", "--fidelity", "0.50", "--qr", QR)
    assert code == 0
    pts = json.loads(out)
    assert len(pts) == 2
    assert set(pts[0]) == {"gamma_star", "kind", "value"}


def test_threshold(capsys):
    code, out, _ = run(capsys, "threshold", "--state", "phi-plus", "--qr", QR)
    doc = json.loads(out)
    assert code == 0 and doc["status"] == "threshold"
    assert set(doc) >= {"q_r", "alpha_star", "tol"}
    assert 0.5 < doc["alpha_star"] < math.pi / 4


def test_threshold_absent(capsys):
    _, out, _ = run(capsys, "threshold", "--qr", "1")
    assert json.loads(out)["alpha_star"] is None


def test_sweep(capsys):
    code, out, _ = run(capsys, "sweep", "--state", "werner", "--fidelity", "0.46,0.47,0.9", "--qr", "0.609")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["param", "count", "gamma_1", "kind_1", "gamma_2", "kind_2"]
    assert [r[1] for r in rows[1:3]] == ["2", "2"]
    assert all(len(r) == 6 for r in rows)


def test_sweep_requires_values(capsys):
    code, _, err = run(capsys, "sweep", "--state", "phi-plus", "--qr", QR)
    assert code == 2 and "--alpha" in err


@pytest.mark.parametrize("argv", [
    ["curve", "--state", "werner", "--qr", QR],
    ["curve", "--alpha", "2.0"],
    ["curve", "--alpha", "0.3", "--qr", "1.5"],
    ["curve", "--alpha", "0.3", "--grid", "2"],
    ["matrix", "--alpha", "0.3", "--gamma", "1.0"],
    ["threshold", "--tol", "0"],
])
def test_config_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == ""
    assert len(err.strip().splitlines()) == 1


def test_output_is_deterministic(capsys):
    argv = ["variation", "--state", "werner-like", "--fidelity", "0.62", "--qr", QR]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify")
    doc = json.loads(out)
    assert code == 0 and doc["passed"] and doc["n_failed"] == 0
    modules = {c["module"] for c in doc["checks"]}
    assert modules == {"fock_basis", "states", "reduction", "entanglement", "analysis"}


def test_verify_fails_loudly(capsys, monkeypatch):
    from fermiamp import verify
    monkeypatch.setattr(verify, "check_index_bijection", lambda: (False, "forced"))
    code, out, _ = run(capsys, "verify")
    assert code == 1 and not json.loads(out)["passed"]


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "fermiamp.cli", "curve", "--alpha", "0.5", "--grid", "3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("gamma,negativity")
