"""Command-line interface: contracts, exit codes, determinism, and format parity."""
import csv
import json
import math

import numpy as np
import pytest

from swphase.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_spectrum_qubit(capsys):
    code, out, _ = run(capsys, "spectrum", "--n", "2")
    assert code == 0
    payload = json.loads(out)
    sq3 = math.sqrt(3.0)
    np.testing.assert_allclose(payload["spectrum"], [(1 + sq3) / 2, (1 - sq3) / 2], atol=1e-14)
    assert payload["multiplicities"] == [1, 1]
    assert payload["flag_dim"] == 2
    assert payload["nu"] is None


def test_spectrum_degenerate_decimal_nu(capsys):
    code, out, _ = run(capsys, "spectrum", "--n", "3", "--nu", "-0.3333333333")
    assert code == 0
    payload = json.loads(out)
    np.testing.assert_allclose(payload["spectrum"], [5 / 3, -1 / 3, -1 / 3], atol=1e-9)
    assert payload["multiplicities"] == [1, 2]
    assert payload["flag_dim"] == 4
    assert payload["degenerate"] is True
    assert payload["det_invariant"] == pytest.approx(-16 / 27, abs=1e-9)


def test_spectrum_rejects_bad_nu(capsys):
    code, _, err = run(capsys, "spectrum", "--n", "3", "--nu", "0.5")
    assert code == 2
    assert "nu outside [-1, -1/3]" in err


def test_spectrum_master_residuals(capsys):
    code, out, _ = run(capsys, "spectrum", "--n", "4", "--mu", "0.5,0.5,0.7071067811865476")
    assert code == 0
    payload = json.loads(out)
    assert payload["trace_residual"] < 1e-12
    assert payload["purity_residual"] < 1e-12
    assert len(payload["spectrum"]) == 4


def test_kernel_flag_conflicts(capsys):
    code, _, err = run(capsys, "spectrum", "--n", "3", "--nu", "-0.5", "--mu", "0.0,1.0")
    assert code == 2 and "not both" in err
    code, _, err = run(capsys, "spectrum", "--n", "2", "--nu", "-0.5")
    assert code == 2 and "--n 3" in err
    code, _, err = run(capsys, "spectrum", "--n", "4")
    assert code == 2 and "--mu" in err
    code, _, err = run(capsys, "spectrum", "--n", "3", "--mu", "0.9,0.9")
    assert code == 2


def test_moduli_sample_qubit_exact(capsys):
    code, out, _ = run(capsys, "moduli-sample", "--n", "2", "--samples", "5000")
    assert code == 0
    payload = json.loads(out)
    assert payload["check"] == "moduli_fraction"
    assert payload["mc"] == 0.5
    assert payload["z"] == 0.0
    assert payload["pass"] is True
    assert set(payload) == {
        "check", "n", "moduli", "samples", "seed", "mc", "target", "sigma", "z", "pass",
    }


def test_moduli_sample_n3(capsys):
    code, out, _ = run(capsys, "moduli-sample", "--n", "3", "--samples", "50000", "--seed", "3")
    assert code == 0
    payload = json.loads(out)
    assert payload["target"] == pytest.approx(1 / 6)
    assert abs(payload["mc"] - 1 / 6) < 5 * payload["sigma"]


def test_wigner_eval_qubit_grid_ends(capsys):
    code, out, _ = run(
        capsys,
        "wigner-eval", "--n", "2", "--state", "0,0,1",
        "--grid", f"beta=0:{math.pi}:21",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["columns"] == ["alpha", "beta", "w"]
    assert len(payload["rows"]) == 21
    sq3 = math.sqrt(3.0)
    assert payload["rows"][0][-1] == pytest.approx((1 + sq3) / 2, abs=1e-12)
    assert payload["rows"][-1][-1] == pytest.approx((1 - sq3) / 2, abs=1e-12)


def test_wigner_eval_reduced_chart_columns(capsys):
    code, out, _ = run(
        capsys,
        "wigner-eval", "--n", "3", "--nu", "-1", "--state", "0,0,0,0,0,0,0,-0.5",
        "--grid", "alpha=0:6.28:3", "--grid", "theta=0:1.57:3",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["chart"] == "reduced"
    assert payload["columns"] == ["alpha", "beta", "gamma", "theta", "w"]
    assert len(payload["columns"]) == 5
    assert len(payload["rows"]) == 9


def test_wigner_eval_flat_for_mixed_state(capsys):
    code, out, _ = run(
        capsys,
        "wigner-eval", "--n", "3", "--nu", "-0.5", "--state", "0,0,0,0,0,0,0,0",
        "--grid", "b=0:3.14:4",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["chart"] == "standard"
    assert all(row[-1] == pytest.approx(1 / 3, abs=1e-15) for row in payload["rows"])


def test_wigner_eval_adapted_chart(capsys):
    code, out, _ = run(
        capsys,
        "wigner-eval", "--n", "3", "--nu", "-0.3333333333", "--state", "0,0,0,0,0,0,0,-0.5",
        "--grid", "theta=0:1.5:4",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["chart"] == "adapted"
    assert payload["columns"] == ["alpha", "beta", "gamma", "theta", "w"]


def test_wigner_eval_rejects_bad_inputs(capsys):
    code, _, err = run(capsys, "wigner-eval", "--n", "2", "--state", "0,0,2")
    assert code == 2 and "non-positive" in err
    code, _, err = run(
        capsys, "wigner-eval", "--n", "2", "--state", "0,0,1", "--grid", "zeta=0:1:5"
    )
    assert code == 2 and "zeta" in err
    code, _, err = run(
        capsys, "wigner-eval", "--n", "2", "--state", "0,0,1", "--grid", "beta=0:1"
    )
    assert code == 2
    code, _, err = run(capsys, "wigner-eval", "--n", "4", "--mu", "0,0,1", "--state", "x")
    assert code == 2


def test_wigner_eval_state_file(tmp_path, capsys):
    path = tmp_path / "state.json"
    path.write_text(json.dumps({"n": 2, "bloch": [0.0, 0.0, 1.0]}))
    code, out, _ = run(capsys, "wigner-eval", "--n", "2", "--state-file", str(path))
    assert code == 0
    payload = json.loads(out)
    assert payload["rows"][0][-1] == pytest.approx((1 + math.sqrt(3)) / 2, abs=1e-12)
    code, _, err = run(capsys, "wigner-eval", "--n", "3", "--nu", "-0.5", "--state-file", str(path))
    assert code == 2 and "n=2" in err


def test_reconstruct_roundtrip(capsys):
    code, out, _ = run(
        capsys,
        "reconstruct", "--n", "3", "--nu", "-0.5", "--state", "0,0,0,0,0,0,0,0",
        "--samples", "10000", "--seed", "5",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["frobenius_error"] < 5e-2
    rho = np.array(payload["rho_hat_re"]) + 1j * np.array(payload["rho_hat_im"])
    assert np.linalg.norm(rho - np.eye(3) / 3) == pytest.approx(payload["frobenius_error"], abs=1e-15)
    assert payload["antihermitian_residue"] < 1e-15


def test_reconstruct_guards(capsys):
    code, _, err = run(
        capsys, "reconstruct", "--n", "2", "--state", "0,0,1", "--samples", "0"
    )
    assert code == 2 and "samples" in err
    code, _, err = run(capsys, "reconstruct", "--n", "2", "--samples", "5000")
    assert code == 2 and "--state" in err


def test_verify_all_pass(capsys):
    code, out, _ = run(capsys, "verify", "--n", "2", "--samples", "20000")
    assert code == 0
    payload = json.loads(out)
    assert payload["all_pass"] is True
    checks = [r["check"] for r in payload["checks"]]
    assert checks == [
        "covariance", "norm", "standardisation", "traciality",
        "weingarten2", "weingarten4", "moduli_fraction", "reconstruction",
    ]
    for record in payload["checks"]:
        assert set(record) == {
            "check", "n", "moduli", "samples", "seed", "mc", "target", "sigma", "z", "pass",
        }
        assert record["pass"] is True


def test_verify_csv_parity(tmp_path, capsys):
    json_path = tmp_path / "report.json"
    csv_path = tmp_path / "report.csv"
    args = ["verify", "--n", "3", "--nu", "-0.8", "--samples", "20000", "--seed", "12"]
    assert main(args + ["--output", str(json_path)]) == 0
    assert main(args + ["--output", str(csv_path), "--format", "csv"]) == 0
    capsys.readouterr()
    payload = json.loads(json_path.read_text())
    with open(csv_path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == len(payload["checks"])
    for record, row in zip(payload["checks"], rows):
        assert row["check"] == record["check"]
        for key in ("mc", "target", "sigma", "z"):
            assert float(row[key]) == record[key]  # identical parsed values
        assert row["pass"] == ("1" if record["pass"] else "0")
        assert [float(row["mu_1"]), float(row["mu_2"])] == record["moduli"]


def test_outputs_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    args = ["verify", "--n", "2", "--samples", "10000", "--seed", "9"]
    assert main(args + ["--output", str(a)]) == 0
    assert main(args + ["--output", str(b)]) == 0
    capsys.readouterr()
    assert a.read_bytes() == b.read_bytes()


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["spectrum"])  # missing required --n
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2
