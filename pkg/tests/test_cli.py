"""Command-line contract: flags, exit codes, deterministic output."""

import json

import pytest

from dyonfw import cli


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_derive_json_contains_requested_orders(capsys):
    code, out = run_cli(capsys, "derive", "--model", "dirac", "--order", "2")
    assert code == 0
    data = json.loads(out)
    assert [o["order"] for o in data["orders"]] == [1, 2]
    assert data["orders"][0]["expression"]["terms"]


def test_derive_latex_second_order(capsys):
    code, out = run_cli(capsys, "derive", "--model", "dirac", "--order", "2",
                        "--format", "latex")
    assert code == 0
    data = json.loads(out)
    latex = data["orders"][1]["latex"]
    assert "E_g^{2}" in latex and "\\Sigma" in latex


def test_derive_rejects_out_of_range_order():
    with pytest.raises(SystemExit) as exc:
        cli.main(["derive", "--order", "7"])
    assert exc.value.code == 2


def test_unknown_command_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        cli.main(["frobnicate"])
    assert exc.value.code == 2


def test_series_check_passes(capsys):
    code, out = run_cli(capsys, "series-check")
    assert code == 0
    data = json.loads(out)
    assert data["passed"] and len(data["checks"]) == 3


def test_verify_appendix_b(capsys):
    code, out = run_cli(capsys, "verify", "--suite", "appendixB")
    assert code == 0
    data = json.loads(out)
    assert data["passed"]
    assert {c["name"] for c in data["checks"]} == {
        "sandwich_reduces_with_minus_sign", "symmetric_product_reduces"}


def test_verify_fw_six_zero_diffs(tmp_path, capsys):
    dump = tmp_path / "reports.json"
    code, out = run_cli(capsys, "verify", "--suite", "fw",
                        "--dump-reports", str(dump))
    assert code == 0
    data = json.loads(out)
    fw_checks = [c for c in data["checks"] if c["name"].startswith("fw_order_")]
    assert len(fw_checks) == 6
    assert all(c["passed"] for c in fw_checks)
    reports = json.loads(dump.read_text())["reports"]
    assert [r["order"] for r in reports] == [1, 2, 3, 4, 5, 6]
    assert all(r["pass"] and r["diff"] == {"terms": []} for r in reports)


def test_verify_pauli_suite(capsys):
    code, out = run_cli(capsys, "verify", "--suite", "pauli")
    assert code == 0
    data = json.loads(out)
    names = {c["name"] for c in data["checks"]}
    assert "anomalous_vanishes_at_g2" in names
    assert "classical_match_through_beta5" in names
    assert data["passed"]


def test_derive_output_is_deterministic(capsys):
    _, first = run_cli(capsys, "derive", "--order", "3")
    _, second = run_cli(capsys, "derive", "--order", "3")
    assert first == second


def test_simulate_writes_csv(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({
        "particle": {"m": 1, "e": 1, "etilde": 0, "ge": 2, "gte": 2},
        "fields": {"B": [0, 0, 1]},
        "init": {"u": [1.0, 0, 0], "s": [0.7071067811865476, 0,
                                         0.7071067811865476]},
        "run": {"dt": 0.04442882938158366, "steps": 400},
    }))
    out_csv = tmp_path / "traj.csv"
    code, out = run_cli(capsys, "simulate", "--config", str(cfg),
                        "--out", str(out_csv))
    assert code == 0
    summary = json.loads(out)
    assert summary["samples"] == 401
    assert summary["helicity_drift"] < 1e-11
    lines = out_csv.read_text().splitlines()
    assert lines[0].startswith("t,x,y,z,ux")
    assert len(lines) == 402


def test_verify_fails_against_perturbed_fixtures(tmp_path, monkeypatch, capsys,
                                                 catalog):
    import json as json_mod
    catalog.save(tmp_path)
    data = json_mod.loads((tmp_path / "catalog.json").read_text())
    first = data["entries"]["fw_order_1"]["terms"][0]
    first["coeff"] = "7/13"
    (tmp_path / "catalog.json").write_text(json_mod.dumps(data))
    monkeypatch.setenv("FW_FIXTURES", str(tmp_path))
    code, out = run_cli(capsys, "verify", "--suite", "fw")
    assert code == 1
    report = json.loads(out)
    assert not report["passed"]
    assert not report["checks"][0]["passed"]


def test_simulate_missing_config_reports_error(tmp_path, capsys):
    code, out = run_cli(capsys, "simulate", "--config",
                        str(tmp_path / "nope.json"), "--out",
                        str(tmp_path / "o.csv"))
    assert code == 1
    assert "error" in json.loads(out)


def test_boost_dipole_density(capsys):
    code, out = run_cli(capsys, "boost-dipole", "--beta", "0.6,0,0",
                        "--mu-p", "0,0.2,0")
    assert code == 0
    data = json.loads(out)
    assert abs(data["p"][1] - 0.25) < 1e-12
    assert abs(data["m"][2] + 1.25 * 0.6 * 0.2) < 1e-12


def test_boost_dipole_integrated_flag(capsys):
    code, out = run_cli(capsys, "boost-dipole", "--beta", "0,0.5,0",
                        "--mu-p", "0.4,0,0", "--integrated")
    assert code == 0
    data = json.loads(out)
    gamma_sq = 1 / 0.75
    assert abs(data["m"][2] - gamma_sq * 0.1) < 1e-12
