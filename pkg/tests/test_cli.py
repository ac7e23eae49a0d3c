import json
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

import qflip.cli as cli
from qflip.constructions import VerificationError
from qflip.report import CSV_HEADER

SRC_DIR = str(Path(__file__).resolve().parent.parent / "src")


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_verify_axes_json(capsys):
    code, out, _ = run_cli(capsys, "verify", "axes")
    assert code == 0
    record = json.loads(out)
    assert record["experiment_id"] == "verify-axes"
    assert record["verdict"] == "Incomparable"
    np.testing.assert_allclose(record["lambda_initial"], [2 / 3, 1 / 6, 1 / 6], atol=1e-12)
    assert record["degeneracyFlag"] is False
    assert abs(record["A"] - 0.25) < 1e-14


def test_verify_axes_phases_do_not_move_spectra(capsys):
    _, out_default, _ = run_cli(capsys, "verify", "axes")
    _, out_phased, _ = run_cli(capsys, "verify", "axes", "--chi", "1.3", "--eta", "2.1")
    base = json.loads(out_default)
    phased = json.loads(out_phased)
    np.testing.assert_allclose(phased["lambda_initial"], base["lambda_initial"], atol=1e-12)
    np.testing.assert_allclose(phased["lambda_final"], base["lambda_final"], atol=1e-12)


def test_verify_axes_csv(capsys):
    code, out, _ = run_cli(capsys, "verify", "axes", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == CSV_HEADER
    assert len(lines) == 2
    cells = lines[1].split(",")
    assert cells[-1] == "false"
    assert cells[-3] == "Incomparable"


def test_verify_axes_out_file(tmp_path, capsys):
    target = tmp_path / "axes.json"
    code, out, _ = run_cli(capsys, "verify", "axes", "--out", str(target))
    assert code == 0
    assert out == ""
    record = json.loads(target.read_text())
    assert record["verdict"] == "Incomparable"


def test_verify_flipper_seeds(capsys):
    _, out7, _ = run_cli(capsys, "verify", "flipper", "--seed", "7")
    _, out9, _ = run_cli(capsys, "verify", "flipper", "--seed", "9")
    rec7, rec9 = json.loads(out7), json.loads(out9)
    assert rec7["verdict"] == rec9["verdict"] == "Incomparable"
    assert rec7["params"]["direction"] != rec9["params"]["direction"]
    np.testing.assert_allclose(rec7["lambda_initial"], [0.51, 0.30, 0.19], atol=1e-12)


def test_verify_general_interior(capsys):
    code, out, _ = run_cli(
        capsys,
        "verify", "general",
        "--a", "0.70710678", "--c", "0.70710678", "--theta", "1.5707963",
    )
    assert code == 0
    record = json.loads(out)
    assert record["verdict"] == "Incomparable"
    assert abs(record["A"] - 0.25) < 1e-7
    assert abs(record["B"] - 0.25) < 1e-7
    assert abs(record["Bprime"]) < 1e-7


def test_verify_general_degenerate_flag(capsys):
    code, out, _ = run_cli(capsys, "verify", "general", "--a", "1.0", "--c", "0.5", "--theta", "1.0")
    assert code == 0
    record = json.loads(out)
    assert record["degeneracyFlag"] is True
    assert record["verdict"] == "Interconvertible"


def test_verify_general_boundary_theta_requires_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["verify", "general", "--a", "0.5", "--c", "0.5", "--theta", "0.0"])
    assert exc.value.code == 2
    capsys.readouterr()
    code, out, _ = run_cli(
        capsys,
        "verify", "general",
        "--a", "0.5", "--c", "0.5", "--theta", "0.0", "--degenerate-mode",
    )
    assert code == 0
    assert json.loads(out)["degeneracyFlag"] is True


def test_check_pair(capsys):
    code, out, _ = run_cli(capsys, "check-pair", "--lhs", ".51,.30,.19", "--rhs", ".49,.36,.15")
    assert code == 0
    record = json.loads(out)
    assert record["verdict"] == "Incomparable"
    assert record["params"]["closed_form_incomparable"] is True

    code, out, _ = run_cli(capsys, "check-pair", "--lhs", "1,0", "--rhs", ".5,.5")
    assert code == 0
    record = json.loads(out)
    assert record["verdict"] == "BackwardCertain"

    code, out, _ = run_cli(capsys, "check-pair", "--lhs", "1,0", "--rhs", ".5,.5", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines[1].split(",")) == len(CSV_HEADER.split(","))


def test_check_pair_rejects_bad_vector():
    with pytest.raises(SystemExit) as exc:
        cli.main(["check-pair", "--lhs", ".9,.3", "--rhs", ".5,.5"])
    assert exc.value.code == 2


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        cli.main(["verify", "general", "--a", "0.5"])
    assert exc.value.code == 2


def test_verification_failure_exit_code(monkeypatch, capsys):
    def boom(**kwargs):
        raise VerificationError("forced")

    monkeypatch.setattr(cli, "axes_experiment", boom)
    code, _, err = run_cli(capsys, "verify", "axes")
    assert code == 1
    assert "forced" in err


def test_sweep_records_and_summary(capsys):
    code, out, err = run_cli(capsys, "sweep", "--grid", "3")
    assert code == 0
    lines = out.strip().splitlines()
    records = [json.loads(line) for line in lines]
    summary = records[-1]
    assert summary["experiment_id"] == "sweep-summary"
    assert summary["points_total"] == 27
    assert summary["points_emitted"] == 27
    assert summary["non_incomparable_count"] == 0
    assert len(records) == 28
    # records are sorted by (ia, ic, itheta) and self-consistent
    keys = [(r["params"]["ia"], r["params"]["ic"], r["params"]["itheta"]) for r in records[:-1]]
    assert keys == sorted(keys)
    for r in records[:-1]:
        lam_i, lam_f = np.array(r["lambda_initial"]), np.array(r["lambda_final"])
        fwd = np.all(np.cumsum(lam_i) <= np.cumsum(lam_f) + 1e-12)
        bwd = np.all(np.cumsum(lam_f) <= np.cumsum(lam_i) + 1e-12)
        assert {
            (False, False): "Incomparable",
            (True, False): "ForwardCertain",
            (False, True): "BackwardCertain",
            (True, True): "Interconvertible",
        }[(bool(fwd), bool(bwd))] == r["verdict"]


def test_sweep_wide_margin_filters_everything(capsys):
    code, out, _ = run_cli(capsys, "sweep", "--grid", "2", "--margin", "0.5")
    assert code == 0
    records = [json.loads(line) for line in out.strip().splitlines()]
    summary = records[-1]
    assert summary["points_emitted"] == 0
    assert summary["points_degenerate_skipped"] == 8
    assert len(records) == 1


def test_sweep_deterministic_output(tmp_path, capsys):
    f1, f2 = tmp_path / "s1.ndjson", tmp_path / "s2.ndjson"
    run_cli(capsys, "sweep", "--grid", "3", "--out", str(f1))
    run_cli(capsys, "sweep", "--grid", "3", "--out", str(f2))
    assert f1.read_bytes() == f2.read_bytes()


def test_sweep_csv_format(tmp_path, capsys):
    target = tmp_path / "sweep.csv"
    code, _, _ = run_cli(capsys, "sweep", "--grid", "2", "--format", "csv", "--out", str(target))
    assert code == 0
    lines = target.read_text().strip().splitlines()
    assert lines[0] == CSV_HEADER
    assert lines[-1].startswith("# summary ")
    assert len(lines) == 2 + 8  # header, 8 records, summary


def test_sweep_jobs_parallel_matches_serial(tmp_path, capsys):
    f1, f2 = tmp_path / "serial.ndjson", tmp_path / "par.ndjson"
    run_cli(capsys, "sweep", "--grid", "3", "--out", str(f1), "--jobs", "1")
    run_cli(capsys, "sweep", "--grid", "3", "--out", str(f2), "--jobs", "2")
    assert f1.read_bytes() == f2.read_bytes()


def test_sweep_jobs_default_from_env(monkeypatch):
    monkeypatch.setenv("QFLIP_JOBS", "3")
    parser = cli.build_parser()
    args = parser.parse_args(["sweep", "--grid", "2"])
    assert args.jobs == 3


def test_module_entry_point_subprocess():
    out = subprocess.run(
        [sys.executable, "-m", "qflip", "verify", "axes"],
        capture_output=True,
        text=True,
        env={"PYTHONPATH": SRC_DIR, "PATH": "/usr/bin:/bin"},
    )
    assert out.returncode == 0, out.stderr
    assert json.loads(out.stdout)["verdict"] == "Incomparable"
