import csv
import io
import json
import subprocess
import sys

import pytest

from udw_harvest.cli import main

POINT = ["--a-sigma", "2", "--R-over-sigma", "1", "--Omega-sigma", "0.5", "--dz-over-sigma", "0.3"]


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_prob_both(capsys):
    code, out, _ = run(["prob", *POINT, "--traj", "both"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["circular"]["p_over_lambda2"] == pytest.approx(0.0143679172, rel=1e-8)
    assert set(data) == {"circular", "uniform"}


def test_config_file_and_budget(tmp_path, capsys):
    cfg = {"a_sigma": 1, "R_over_sigma": 1, "Omega_sigma": 0.1, "dz_over_sigma": 0.2,
           "dd_over_sigma": 0.2, "trajectory": "circular",
           "budget": {"abs_tol": 1e-11, "rel_tol": 1e-9, "max_subdivisions": 500,
                      "pv_window_delta": 1e-3}}
    path = tmp_path / "c.json"
    path.write_text(json.dumps(cfg))
    code, out, _ = run(["xterm", "--config", str(path)], capsys)
    assert code == 0
    x = json.loads(out)["circular"]
    assert complex(x["x_real"], x["x_imag"]) == pytest.approx(complex(-0.0084015724, -0.4833065614),
                                                              abs=1e-8)
    code, out, _ = run(["concurrence", "--config", str(path), "--pb-boundary", "dz"], capsys)
    res = json.loads(out)["circular"]
    assert res["p_a"] == res["p_b"]


def test_sync_pair_from_cli(capsys):
    code, out, _ = run(["xterm", "--a-sigma", "0.2", "--R-over-sigma", "1", "--R-B-over-sigma", "1.5",
                        "--Omega-sigma", "0.1", "--dz-over-sigma", "0.5", "--dd-over-sigma", "0.5"],
                       capsys)
    assert code == 0 and json.loads(out)["circular"]["pole_count_free"] == 1


def test_sweep_to_file(tmp_path, capsys):
    out = tmp_path / "s.csv"
    code, _, _ = run(["sweep", "--axis", "R_over_sigma", "--range", "0.01:10:5", "--log",
                      "--a-sigma", "2", "--Omega-sigma", "0.1", "--dz-over-sigma", "0.2",
                      "--out", str(out)], capsys)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out.read_text())))
    assert [float(r["R_sigma"]) for r in rows] == pytest.approx([0.01, 0.056234, 0.316228, 1.778279, 10],
                                                                rel=1e-5)


@pytest.mark.parametrize("argv", [
    ["prob", "--a-sigma", "1"],
    ["prob", *POINT, "--config", "/nonexistent.json"],
    ["sweep", *POINT, "--axis", "R_over_sigma", "--range", "1:2"],
    ["sweep", *POINT],
    ["critical", *POINT, "--kind", "accel_monotonicity"],
    ["prob", "--a-sigma", "-1", "--R-over-sigma", "1", "--Omega-sigma", "0.1", "--dz-over-sigma", "1"],
])
def test_config_errors_exit_2(argv, capsys):
    assert run(argv, capsys)[0] == 2


def test_bad_json_and_unknown_keys(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["prob", "--config", str(bad)], capsys)[0] == 2
    bad.write_text(json.dumps({"a_sigma": 1, "colour": "red"}))
    assert run(["prob", "--config", str(bad)], capsys)[0] == 2
    bad.write_text(json.dumps({"a_sigma": 1, "budget": {"abs_tol": -1}}))
    assert run(["prob", "--config", str(bad), *POINT[2:]], capsys)[0] == 2


def test_strict_sweep_exits_3_on_row_errors(capsys):
    argv = ["sweep", "--axis", "a_sigma", "--range=-1:1:3", "--R-over-sigma", "1",
            "--Omega-sigma", "0.1", "--dz-over-sigma", "0.2"]
    code, out, err = run(argv, capsys)
    assert code == 0 and "2 of 3 rows" in err
    assert run(argv + ["--strict"], capsys)[0] == 3


def test_numerical_failure_exits_3(capsys):
    argv = ["critical", "--kind", "circ_uniform_crossing", "--interval", "1:5", "--R-over-sigma", "2",
            "--Omega-sigma", "0.1", "--dz-over-sigma", "0.05"]
    assert run(argv, capsys)[0] == 3


def test_critical_crossing(capsys):
    code, out, _ = run(["critical", "--kind", "circ_uniform_crossing", "--interval", "10:30",
                        "--R-over-sigma", "2", "--Omega-sigma", "0.1", "--dz-over-sigma", "0.05",
                        "--tol", "0.01"], capsys)
    assert code == 0
    assert json.loads(out)["value"] == pytest.approx(21.135, abs=0.02)


def test_console_script_help():
    res = subprocess.run([sys.executable, "-m", "udw_harvest.cli", "--help"], capture_output=True,
                         text=True)
    assert res.returncode == 0
    for sub in ("prob", "xterm", "concurrence", "sweep", "critical", "oracle"):
        assert sub in res.stdout
