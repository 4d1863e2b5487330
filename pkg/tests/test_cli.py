import csv
import json

import pytest

from mildbank.cli import RunConfig, main, report_csv, report_json, rows_csv, run_verify, strip_timing
from mildbank.corpus import mild_battery
from mildbank.errors import BadParams
from mildbank.mild import MILD_GRID, wstar_gaps


@pytest.fixture(autouse=True)
def _in_tmp(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("MILDBANK_OUT", raising=False)


def test_verify_poisson_passes(tmp_path, capsys):
    assert main(["verify", "poisson"]) == 0
    out = capsys.readouterr().out
    assert out.count("PASS poisson.") == 3 and "FAIL" not in out
    report = json.loads((tmp_path / "mildbank_poisson.json").read_text())
    assert report["passed"] and report["suite"] == "poisson"
    assert {"grid", "seed", "version"} <= set(report["environment"])
    assert {"wall_seconds", "timestamp"} <= set(report["timing"])


def test_unknown_names_exit_two(capsys):
    assert main(["verify", "nosuch"]) == 2
    assert "nosuch" in capsys.readouterr().err
    assert main(["demo", "nosuch"]) == 2


def test_tolerance_failure_exits_one(tmp_path, capsys):
    assert main(["verify", "poisson", "--tol", "theta_identity=2.3e-16"]) == 1
    assert "FAIL poisson.theta_identity" in capsys.readouterr().out
    report = json.loads((tmp_path / "mildbank_poisson.json").read_text())
    assert not report["passed"]


def test_tolerance_below_epsilon_is_rejected(capsys):
    with pytest.raises(BadParams):
        RunConfig(tol={"*": 1e-17})
    assert main(["verify", "poisson", "--tol", "1e-17"]) == 2
    assert "machine epsilon" in capsys.readouterr().err


def test_csv_report(tmp_path):
    assert main(["verify", "poisson", "--format", "csv"]) == 0
    raw = (tmp_path / "mildbank_poisson.csv").read_bytes()
    assert raw.count(b"\r\n") == 4
    rows = list(csv.reader(raw.decode().splitlines()))
    assert rows[0] == ["suite", "name", "residual", "tolerance", "passed", "anchor"]
    assert all(r[4] == "true" for r in rows[1:])


def test_rows_csv_round_trips_floats():
    text = rows_csv(["x"], [(0.1,), (1 / 3,)])
    vals = [float(r[0]) for r in list(csv.reader(text.splitlines()))[1:]]
    assert vals == [0.1, 1 / 3]


@pytest.mark.parametrize(
    "name,header",
    [
        ("shannon", ["t", "recon_re", "recon_im", "ref_re", "ref_im", "abs_error"]),
        ("kernel_identity", ["t", "out_re", "out_im", "ref_re", "ref_im", "abs_error"]),
        ("dirac_approx", ["rho", "gap"]),
    ],
)
def test_demo_outputs(tmp_path, name, header):
    assert main(["demo", name]) == 0
    rows = list(csv.reader((tmp_path / f"{name}.csv").read_text().splitlines()))
    assert rows[0] == header
    summary = json.loads((tmp_path / f"{name}.json").read_text())
    assert summary["demo"] == name


def test_dirac_demo_matches_library(tmp_path):
    main(["demo", "dirac_approx"])
    summary = json.loads((tmp_path / "dirac_approx.json").read_text())["summary"]
    assert summary["gap"] == wstar_gaps("dilated_gaussian", mild_battery(MILD_GRID, 0), steps=4)
    assert summary["decreasing"]


def test_demo_summaries_meet_tolerances(tmp_path):
    main(["demo", "shannon"])
    main(["demo", "kernel_identity"])
    assert json.loads((tmp_path / "shannon.json").read_text())["summary"]["central_error"] <= 1e-8
    assert json.loads((tmp_path / "kernel_identity.json").read_text())["summary"]["max_error"] <= 1e-8


def test_chirp_on_coarse_grid_is_refused(tmp_path, capsys):
    assert main(["demo", "chirp", "--h", "1/16", "--n", "1024"]) == 2
    assert "alpha*h*R" in capsys.readouterr().err
    assert not (tmp_path / "chirp.csv").exists()


def test_chirp_demo_default_grid(tmp_path):
    assert main(["demo", "chirp"]) == 0
    assert json.loads((tmp_path / "chirp.json").read_text())["summary"]["path_residual"] <= 1e-6


def test_output_directory_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("MILDBANK_OUT", str(tmp_path / "reports"))
    assert main(["verify", "poisson", "--out", "p.json"]) == 0
    assert (tmp_path / "reports" / "p.json").exists()
    assert not (tmp_path / "p.json").exists()


def test_report_is_deterministic():
    cfg = RunConfig()
    a, b = run_verify("poisson", cfg), run_verify("poisson", cfg)
    assert report_json(strip_timing(a)) == report_json(strip_timing(b))
    assert report_csv(a) == report_csv(b)


def test_window_option_sets_sample_count():
    g = RunConfig(h=1 / 32, window=16).grid()
    assert g.count[0] == 1024 and g.spacing[0] == 1 / 32
