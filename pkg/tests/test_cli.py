import json
import math

import pytest

from commspecial.cli import main


def run_cli(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:  # argparse usage errors
        code = exc.code
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_eval_nuttall_poly_example(capsys):
    code, out, _ = run_cli(capsys, "eval", "nuttall", "--m", "0.7", "--n", "0.3",
                           "--a", "0.6", "--b", "0.4",
                           "--method", "poly", "--p", "20")
    assert code == 0
    value = float(out.splitlines()[0].split("=")[1])
    assert value == pytest.approx(0.6956, abs=5e-5)


def test_eval_rice_ie_example_json(capsys):
    code, out, _ = run_cli(capsys, "eval", "rice-ie", "--k", "0", "--x", "1",
                           "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["value"] == pytest.approx(0.6321206, abs=1e-7)
    assert set(payload) == {"value", "method", "est_error", "terms"}


def test_bounds_ilhi_brackets_oracle(capsys):
    from commspecial.quadrature import oracle
    from commspecial.types import IlhiQuery

    code, out, _ = run_cli(capsys, "bounds", "ilhi", "--m", "1.1", "--n", "0.8",
                           "--a", "1.4", "--x", "1.7", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    ref = oracle("ilhi", IlhiQuery(1.1, 0.8, 1.4, 1.7))
    assert payload["lower"] <= ref <= payload["upper"]


@pytest.mark.parametrize("table_id", ["I", "II", "III", "IV", "V"])
def test_table_commands_pass(capsys, table_id):
    code, out, _ = run_cli(capsys, "table", table_id)
    assert code == 0
    assert "FAIL" not in out


def test_sweep_example_deterministic(capsys):
    argv = ("sweep", "nuttall", "--grid", "b=0:4:81",
            "--m", "1.2", "--n", "1.8", "--a", "2.0")
    code, out1, _ = run_cli(capsys, *argv)
    assert code == 0
    lines = out1.splitlines()
    assert lines[0] == "b,kdf,poly,bound,oracle"
    assert len(lines) == 82
    assert "\r" not in out1
    code, out2, _ = run_cli(capsys, *argv)
    assert out1 == out2  # byte-identical reruns


def test_sweep_refuses_oversized_grid(capsys):
    code, _, err = run_cli(capsys, "sweep", "nuttall",
                           "--grid", "a=0:4:2000", "--grid", "b=0:4:2000",
                           "--m", "1.2", "--n", "1.8")
    assert code == 2
    assert "refusing" in err


def test_outage_db_conversion(capsys):
    base = ("outage", "--model", "rician", "--n-rice", "1.2",
            "--gamma-th", "1", "--format", "json")
    code, out_lin, _ = run_cli(capsys, *base, "--gamma-bar", "10")
    assert code == 0
    code, out_db, _ = run_cli(capsys, *base, "--gamma-bar-db", "10")
    assert code == 0
    assert json.loads(out_lin)["outage"] == json.loads(out_db)["outage"]


def test_capacity_siso(capsys):
    code, out, _ = run_cli(capsys, "capacity", "--channel", "siso",
                           "--n-rice", "1", "--gamma-bar", "5",
                           "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert abs(payload["solver_residual"]) <= 1e-8
    assert payload["capacity_per_hz"] > 0


def test_capacity_mimo_coeffs_file(capsys, tmp_path):
    coeffs = {"m": 1, "n": 1, "t": 1, "omega": [1.3],
              "c": [[math.exp(-1.3)]], "k_norm": 1.0}
    path = tmp_path / "coeffs.json"
    path.write_text(json.dumps(coeffs))
    code, out, _ = run_cli(capsys, "capacity", "--channel", "mimo",
                           "--coeffs", str(path), "--gamma-bar", "5",
                           "--k-factor", "1.3", "--format", "json")
    assert code == 0
    assert json.loads(out)["capacity_per_hz"] > 0


def test_capacity_missing_channel_flags_usage_error(capsys):
    code, _, err = run_cli(capsys, "capacity", "--channel", "siso",
                           "--gamma-bar", "5")
    assert code == 2
    assert "n-rice" in err


def test_unknown_flag_rejected(capsys):
    code, _, _ = run_cli(capsys, "eval", "nuttall", "--m", "0.7", "--n", "0.3",
                         "--a", "0.6", "--b", "0.4", "--frobnicate", "1")
    assert code == 2


def test_verify_small_run_and_negative_control(capsys):
    code, out, _ = run_cli(capsys, "verify", "--draws", "5", "--seed", "3")
    assert code == 0
    report = json.loads(out)
    assert report["seed"] == 3
    assert report["all_passed"] is True

    code, out, _ = run_cli(capsys, "verify", "--draws", "5", "--seed", "3",
                           "--tol", "1e-15")
    assert code == 1
    assert json.loads(out)["all_passed"] is False


def test_verify_deterministic(capsys):
    code1, out1, _ = run_cli(capsys, "verify", "--draws", "5", "--seed", "0")
    code2, out2, _ = run_cli(capsys, "verify", "--draws", "5", "--seed", "0")
    assert (code1, out1) == (code2, out2)


def test_domain_error_exits_1(capsys):
    code, _, err = run_cli(capsys, "eval", "toronto", "--m", "0.5", "--n", "2.0",
                           "--r", "-1", "--B", "3")
    assert code == 1
    assert "error:" in err
