"""Tests for the command-line driver: parsing, reports, artifacts."""

import csv
import json

import numpy as np
import pytest

from starlab.cli import (
    PARAM_SWEEP_12,
    SUBORDINATION_SWEEP,
    build_parser,
    cmd_corollaries,
    cmd_dominant_curve,
    cmd_sequences,
    cmd_structural,
    cmd_theorem1,
    main,
)
from starlab.geometry import GridSpec
from starlab.report import VerificationReport

FAST_GRID = GridSpec(radii=(0.5, 0.9), theta_count=256)


class TestParser:
    def test_defaults(self):
        args = build_parser().parse_args(["structural"])
        assert args.seed == 42
        assert args.radii == "0.5,0.9,0.99"
        assert args.theta == 1024
        assert args.combos == 240

    def test_lambda_flag(self):
        args = build_parser().parse_args(["theorem1", "--lambda", "0.3"])
        assert args.lam == 0.3
        assert args.n_max == 2

    def test_dominant_curve_flags(self):
        args = build_parser().parse_args(
            ["dominant-curve", "--mu", "1", "--r", "0.8", "--csv", "x.csv"]
        )
        assert args.mu == 1.0 and args.r == 0.8 and args.csv == "x.csv"

    def test_command_required(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args([])


class TestSweeps:
    def test_membership_sweep_well_formed(self):
        assert len(PARAM_SWEEP_12) == 12
        for alpha, beta, gamma, m, family in PARAM_SWEEP_12:
            assert 0 < alpha <= beta
            assert 1 <= m <= 3 and family in (1, 2)

    def test_subordination_sweep_well_formed(self):
        assert len(SUBORDINATION_SWEEP) == 12
        for alpha, gamma, m, family, n in SUBORDINATION_SWEEP:
            assert 0 < alpha <= 1.0
            assert n in (0, 1) and 1 <= m <= 3


class TestCommands:
    def test_structural_report(self):
        r = cmd_structural(order=64, combos=20)
        assert r.passed
        assert r.payload["max_residual_recurrence"] < 1e-9
        assert r.payload["max_residual_ratio_transfer"] < 1e-9
        assert r.payload["family_collapse_residual"] < 1e-11
        assert r.payload["identity_residuals"] == [0.0, 0.0]
        assert r.settings["seed"] == 42

    def test_theorem1_report(self):
        r = cmd_theorem1(0.0, n_max=0, order=512, grid=FAST_GRID, draws=1)
        assert r.passed
        assert r.payload["min_margin"] >= -1e-2
        assert len(r.payload["margins"]) == len(PARAM_SWEEP_12)
        # the alpha > beta case is evaluated but never asserted
        assert len(r.payload["out_of_regime_margins"]) == 1

    def test_corollaries_report(self):
        r = cmd_corollaries(order=2048)
        assert r.passed
        assert r.payload["limit_mu0"] == pytest.approx(0.5, abs=1e-9)
        assert r.payload["improvement"] is True
        assert r.payload["sharpness_witness_residual"] < 1e-12

    def test_sequences_report(self):
        r = cmd_sequences(k_max=1, order=512, grid=FAST_GRID)
        assert r.passed
        assert {row["sequence"] for row in r.payload["rows"]} == {"first", "second"}
        with pytest.raises(ValueError):
            cmd_sequences(k_max=5)

    def test_dominant_curve_csv(self, tmp_path):
        csv_path = tmp_path / "curve.csv"
        r = cmd_dominant_curve(0.0, 0.0, 0.5, csv_path=str(csv_path), samples=64)
        assert r.passed
        with open(csv_path) as fh:
            rows = list(csv.DictReader(fh))
        assert len(rows) == 64
        assert set(rows[0]) == {"theta", "re_q", "im_q"}
        # mu = 0, lambda0 = 0: q = 1/(1-z)
        z = 0.5 * np.exp(1j * float(rows[10]["theta"]))
        expected = 1.0 / (1.0 - z)
        assert float(rows[10]["re_q"]) == pytest.approx(expected.real, abs=1e-9)
        assert float(rows[10]["im_q"]) == pytest.approx(expected.imag, abs=1e-9)


class TestReports:
    def test_json_is_deterministic(self):
        a = cmd_structural(order=64, combos=10).to_json()
        b = cmd_structural(order=64, combos=10).to_json()
        assert a == b  # byte identical: runtime is excluded from the JSON

    def test_json_round_trips(self):
        r = cmd_structural(order=64, combos=10)
        data = json.loads(r.to_json())
        assert data["claim"] == "structural"
        assert data["status"] == "pass"
        assert "runtime" not in json.dumps(data)

    def test_complex_payloads_serialize(self):
        r = VerificationReport("x", "pass", payload={"value": 1.0 + 2.0j,
                                                     "arr": np.arange(3)})
        data = json.loads(r.to_json())
        assert data["payload"]["value"] == {"re": 1.0, "im": 2.0}
        assert data["payload"]["arr"] == [0, 1, 2]

    def test_summary_line(self):
        r = VerificationReport("demo", "fail", runtime_s=1.25)
        assert "FAIL" in r.summary_line() and "demo" in r.summary_line()


class TestMain:
    def test_pass_run_writes_artifacts(self, tmp_path):
        json_path = tmp_path / "report.json"
        png_path = tmp_path / "residuals.png"
        code = main([
            "structural", "--order", "64", "--combos", "10",
            "--json", str(json_path), "--png", str(png_path),
        ])
        assert code == 0
        assert json.loads(json_path.read_text())["status"] == "pass"
        assert png_path.stat().st_size > 0

    def test_failing_tolerance_yields_exit_one(self, tmp_path):
        code = main(["structural", "--order", "64", "--combos", "10",
                     "--tol", "1e-18"])
        assert code == 1

    def test_dominant_curve_main(self, tmp_path):
        csv_path = tmp_path / "c.csv"
        png_path = tmp_path / "c.png"
        code = main([
            "dominant-curve", "--mu", "1", "--lambda", "0.0", "--r", "0.8",
            "--csv", str(csv_path), "--png", str(png_path),
        ])
        assert code == 0
        assert csv_path.read_text().startswith("theta,re_q,im_q")
        assert png_path.stat().st_size > 0
