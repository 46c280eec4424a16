import csv
import io
import json
import os
import subprocess
import sys

import pytest

from rabigvm import cli, gvm


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out), err


def error_of(err):
    payload = json.loads(err)
    assert set(payload) == {"error", "message", "exit_code"}
    return payload


def test_gvm_polaron(capsys):
    code, out, _ = run_json(capsys, "gvm", "--omega", "1", "--atom", "0", "--g", "0.5")
    assert code == 0
    assert out["e0_total"] == 0.25
    assert out["lambda"] == -0.5
    assert out["mean_photon_full"] == 0.25
    for key in ("lambda", "e0_order0", "e0_order2", "e0_total", "mean_photon_full", "mean_photon_approx",
                "stationarity_residual", "mode"):
        assert key in out


def test_gvm_explicit(capsys):
    code, out, _ = run_json(capsys, "gvm", "--omega", "1", "--atom", "1", "--g", "0.2", "--mode", "explicit")
    assert code == 0
    assert out["mode"] == "explicit"
    assert out["e0_total"] == pytest.approx(-0.020099, abs=1e-6)
    assert out["lambda"] == pytest.approx(-0.1)
    assert out["e0_order2"] == 0.0
    assert out["e0_order2_neglected"] < 0


def test_gvm_decoupled(capsys):
    code, out, _ = run_json(capsys, "gvm", "--omega", "1", "--atom", "1", "--g", "0")
    assert code == 0
    assert out["e0_total"] == 0.0
    assert out["corrections"] == []


def test_gvm_units_of_omega(capsys):
    _, a, _ = run_json(capsys, "gvm", "--omega", "2", "--atom", "1", "--g", "0.3", "--units-of-omega")
    _, b, _ = run_json(capsys, "gvm", "--omega", "2", "--atom", "2", "--g", "0.6")
    assert a == b


@pytest.mark.parametrize(
    "argv",
    [
        ("gvm", "--omega", "0", "--atom", "1", "--g", "0.2"),
        ("gvm", "--omega", "1", "--atom", "-1", "--g", "0.2"),
        ("gvm", "--omega", "1", "--atom", "1", "--g", "nan"),
        ("gvm", "--atom", "1"),
        ("gvm", "--atom", "1", "--g", "0.2", "--mode", "exact"),
        ("ed", "--atom", "1", "--g", "0.2", "--nfock", "3"),
        ("sweep", "--swept", "g", "--start", "1", "--stop", "0", "--fixed", "1"),
        ("bogus",),
    ],
)
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert out == ""
    assert error_of(err)["exit_code"] == 2


def test_numerical_failure_exit_3(capsys, monkeypatch):
    from rabigvm.errors import DegenerateDenominatorError

    def fail(*a, **k):
        raise DegenerateDenominatorError("gap vanished at |+,1>")

    monkeypatch.setattr(gvm, "ground_state", fail)
    code, out, err = run(capsys, "gvm", "--atom", "1", "--g", "0.2")
    assert code == 3 and out == ""
    payload = error_of(err)
    assert payload["error"] == "DegenerateDenominatorError"
    assert "gap vanished" in payload["message"]


def test_grwa(capsys):
    code, out, _ = run_json(capsys, "grwa", "--atom", "0", "--g", "0.5")
    assert code == 0
    assert out == {"e0_grwa": 0.25, "mean_photon_grwa": 0.25}


def test_ed_polaron(capsys):
    code, out, _ = run_json(capsys, "ed", "--omega", "1", "--atom", "0", "--g", "0.5")
    assert code == 0
    assert out["energy"] == pytest.approx(0.25, abs=1e-10)
    assert out["mean_photon"] == pytest.approx(0.25, abs=1e-10)
    assert out["converged"] is True and out["n_fock"] == 200
    assert set(out) == {"energy", "mean_photon", "parity", "converged", "n_fock"}


def test_ed_decoupled_small_truncation(capsys):
    code, out, _ = run_json(capsys, "ed", "--omega", "1", "--atom", "1", "--g", "0", "--nfock", "8")
    assert code == 0
    assert out["energy"] == 0.0
    assert out["converged"] is True


def test_ed_inset_point_dense_agrees(capsys):
    _, chain, _ = run_json(capsys, "ed", "--atom", "1.5", "--g", "0.6")
    _, dense, _ = run_json(capsys, "ed", "--atom", "1.5", "--g", "0.6", "--nfock", "80", "--dense")
    assert chain["energy"] == pytest.approx(dense["energy"], abs=1e-11)
    assert chain["mean_photon"] == pytest.approx(dense["mean_photon"], abs=1e-9)
    assert chain["parity"] == dense["parity"] == "even"


def test_ed_unconverged_exit_4(capsys):
    code, out, _ = run_json(capsys, "ed", "--atom", "1", "--g", "1.5", "--nfock", "8")
    assert code == 4
    assert out["converged"] is False


def test_ed_env_truncation(capsys, monkeypatch):
    monkeypatch.setenv("RABI_NFOCK", "40")
    _, out, _ = run_json(capsys, "ed", "--atom", "1", "--g", "0.2")
    assert out["n_fock"] == 40
    monkeypatch.setenv("RABI_NFOCK", "many")
    code, out, err = run(capsys, "ed", "--atom", "1", "--g", "0.2")
    assert code == 2 and out == ""


def test_sweep_csv(capsys):
    code, out, _ = run(
        capsys, "sweep", "--swept", "g", "--start", "0", "--stop", "0.5", "--steps", "6", "--fixed", "1",
        "--methods", "gvm_explicit,ed", "--observables", "energy,mean_photon",
    )
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 6
    assert list(rows[0]) == [
        "x", "gvm_explicit_energy", "ed_energy", "gvm_explicit_mean_photon", "ed_mean_photon",
        "gvm_explicit_energy_err", "gvm_explicit_mean_photon_err",
    ]


def test_sweep_json_to_file(capsys, tmp_path):
    target = tmp_path / "s.json"
    code, out, _ = run(
        capsys, "sweep", "--swept", "atom", "--start", "0", "--stop", "1", "--steps", "3", "--fixed", "0.3",
        "--format", "json", "--out", str(target),
    )
    assert code == 0 and out == ""
    data = json.loads(target.read_text())
    assert [d["x"] for d in data] == [0.0, 0.5, 1.0]


def test_figure_1a(capsys, tmp_path):
    target = tmp_path / "fig1a.csv"
    code, out, _ = run(capsys, "figure", "--id", "1a", "--out", str(target))
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(target.read_text())))
    assert len(rows) == 101
    high = rows[-1]
    assert float(high["gvm_explicit_err"]) <= float(high["grwa_err"])
    assert out.startswith("figure 1a: 101 points;")
    assert "max|gvm_explicit-ed|" in out and "max|grwa-ed|" in out


def test_figure_4_schema(capsys):
    code, out, err = run(capsys, "figure", "--id", "4", "--steps", "11")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 11
    assert list(rows[0])[:5] == ["x", "gvm_explicit_mean_photon", "gvm_full_mean_photon", "grwa_mean_photon",
                                 "ed_mean_photon"]
    # summary stays off the data stream
    assert err.startswith("figure 4: 11 points;")


def test_figure_unknown_id(capsys):
    code, out, err = run(capsys, "figure", "--id", "9")
    assert code == 2 and out == ""
    assert "unknown figure id" in error_of(err)["message"]


def test_identical_bytes(capsys):
    argv = ("figure", "--id", "2b", "--steps", "9")
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second
    argv = ("gvm", "--atom", "1.3", "--g", "0.45")
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_check_quick(capsys):
    code, out, _ = run(capsys, "check", "--quick")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 3
    assert all(line.startswith("PASS") for line in lines[:2])
    assert lines[-1] == "2/2 checks passed"


def test_check_fails_when_explicit_energy_perturbed(capsys, monkeypatch):
    original = gvm.energy_explicit

    def skewed(params):
        # coupling coefficient off by 1%
        g = params.coupling
        return original(params) - 0.01 * g * g / params.omega

    monkeypatch.setattr(gvm, "energy_explicit", skewed)
    code, out, _ = run(capsys, "check", "--quick")
    assert code == 1
    assert "FAIL" in out


@pytest.mark.slow
def test_check_full(capsys):
    code, out, _ = run(capsys, "check")
    assert code == 0, out
    assert out.strip().splitlines()[-1] == "11/11 checks passed"


def test_console_entry_point():
    env = dict(os.environ)
    proc = subprocess.run(
        [sys.executable, "-m", "rabigvm", "grwa", "--atom", "1", "--g", "0"],
        capture_output=True, text=True, env=env, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["e0_grwa"] == 0.0
