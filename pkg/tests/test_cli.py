"""Command-line interface: outputs, exit codes, golden files and determinism."""

import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from afc_capacity import cli

GOLDEN = Path(__file__).parent / "golden"


def invoke(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


class TestCapacity:
    def test_praseodymium(self):
        code, out, _ = invoke("capacity", "--gamma-hz", "4e6", "--delay-s", "25e-6")
        data = json.loads(out)
        assert code == 0
        assert data["n_continuous"] == 40.0
        assert data["n_floor"] == 40

    def test_at_efficiency(self):
        code, out, _ = invoke("capacity", "--gamma-hz", "5e6", "--t2-s", "250e-6",
                              "--eta", "0.8")
        data = json.loads(out)
        assert code == 0
        assert data["n_reported"] == 28
        assert data["near_integer_flag"] is True

    def test_six_significant_digits(self):
        _, out, _ = invoke("capacity", "--gamma-hz", "5e6", "--t2-s", "250e-6", "--eta", "0.9")
        assert json.loads(out)["n_continuous"] == 13.1701

    def test_negative_bandwidth(self):
        code, out, err = invoke("capacity", "--gamma-hz", "-1")
        assert code == 1
        assert out == ""
        error = json.loads(err)
        assert error["error"] == "InvalidParameter"
        names = {v["name"] for v in error["violations"]}
        assert names == {"gamma_hz", "delay_s"}

    def test_single_violation(self):
        code, _, err = invoke("capacity", "--gamma-hz", "-1", "--delay-s", "25e-6")
        assert code == 1
        assert json.loads(err)["name"] == "gamma_hz"

    def test_config_file_and_override(self, tmp_path):
        config = tmp_path / "afc.json"
        config.write_text(json.dumps({"afc": {"bandwidth_gamma_hz": 4e6, "delay_s": 50e-6}}))
        _, out, _ = invoke("capacity", "--config", str(config))
        assert json.loads(out)["n_continuous"] == 80.0
        _, out, _ = invoke("capacity", "--config", str(config), "--set", "delay_s=25e-6")
        assert json.loads(out)["n_continuous"] == 40.0
        _, out, _ = invoke("capacity", "--config", str(config), "--delay-s", "12.5e-6")
        assert json.loads(out)["n_continuous"] == 20.0


class TestSpinWave:
    def test_europium(self):
        code, out, _ = invoke("sw-capacity", "--gamma-hz", "1.5e6", "--delay-s", "25e-6",
                              "--omega-hz", "230e3", "--chi", "1.36")
        data = json.loads(out)
        assert code == 0
        assert data["n_continuous"] == pytest.approx(5.62, abs=0.01)
        assert data["transfer_efficiency"] == pytest.approx(0.981684)

    def test_explicit(self):
        _, out, _ = invoke("sw-capacity", "--delay-s", "41e-6", "--tc-s", "14e-6",
                           "--tm-s", "0.5e-6")
        assert json.loads(out)["n_continuous"] == 54.0

    def test_control_pulse_dominates(self):
        code, _, err = invoke("sw-capacity", "--delay-s", "10e-6", "--tc-s", "14e-6",
                              "--tm-s", "0.5e-6")
        assert code == 1
        assert json.loads(err)["error"] == "ControlPulseDominates"


class TestTables:
    def test_sweep_golden(self, tmp_path):
        spec = tmp_path / "spec.json"
        spec.write_text(json.dumps({
            "target": "mode_bin_from_bandwidth",
            "axes": [{"name": "gamma", "min": 1e6, "max": 3e6, "points": 3}]}))
        out_path = tmp_path / "sweep.csv"
        code, _, _ = invoke("sweep", "--spec", str(spec), "--out", str(out_path))
        assert code == 0
        assert out_path.read_bytes() == (GOLDEN / "sweep_mode_bin.csv").read_bytes()

    def test_multiplex_golden(self, tmp_path):
        out_path = tmp_path / "budget.csv"
        code, out, _ = invoke("multiplex", "--profile-shape", "gaussian", "--width-hz", "10e9",
                              "--peak-od", "10", "--dg-hz", "36.9e6", "--df-hz", "18e6",
                              "--n-modes", "3", "--out", str(out_path))
        assert code == 0
        assert out_path.read_bytes() == (GOLDEN / "multiplex_pr_3.csv").read_bytes()
        summary = json.loads(out)
        assert summary["n_modes"] == 3
        assert summary["average_efficiency"] == pytest.approx(0.682979)

    def test_multiplex_from_material(self):
        code, out, _ = invoke("multiplex", "--material", "Pr_YSO", "--n-modes", "2")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "mode_index,center_hz,od,finesse,efficiency,within_fwhm"
        assert len(lines) == 3
        assert lines[1].startswith("0,-4.59e+07,")

    def test_multiplex_needs_profile(self):
        code, _, err = invoke("multiplex", "--dg-hz", "1e6", "--df-hz", "1e6", "--n-modes", "2")
        assert code == 1
        assert json.loads(err)["name"] == "profile"

    def test_spectrum(self, tmp_path):
        out_path = tmp_path / "spectrum.csv"
        code, _, _ = invoke("spectrum", "--amplitudes", "1,1,1,1,1", "--fwhm-s", "410e-9",
                            "--mode-bin-s", "1e-6", "--out", str(out_path))
        assert code == 0
        raw = out_path.read_bytes()
        assert b"\r" not in raw
        lines = raw.decode().splitlines()
        assert lines[0] == "frequency_hz,power_density"
        freqs = [float(line.split(",")[0]) for line in lines[1:]]
        assert freqs == sorted(freqs)
        assert len(freqs) == 5 * 200 * 8

    def test_spectrum_undersampled(self):
        code, _, err = invoke("spectrum", "--amplitudes", "1", "--fwhm-s", "410e-9",
                              "--mode-bin-s", "1e-6", "--sample-rate-hz", "1e6")
        assert code == 1
        assert json.loads(err)["error"] == "UndersampledTrain"

    def test_unknown_sweep_target(self, tmp_path):
        spec = tmp_path / "spec.json"
        spec.write_text(json.dumps({"target": "nope",
                                    "axes": [{"name": "x", "min": 1, "max": 2, "points": 2}]}))
        code, _, err = invoke("sweep", "--spec", str(spec))
        assert code == 1
        assert json.loads(err)["error"] == "UnknownTarget"


class TestMaterials:
    def test_list(self):
        _, out, _ = invoke("materials", "list")
        assert json.loads(out) == ["Eu151_YSO", "Eu153_YSO", "Pr_YSO", "Yb171_YSO"]

    def test_show(self):
        _, out, _ = invoke("materials", "show", "Eu153_YSO")
        assert json.loads(out)["max_afc_bandwidth_hz"] == 15e6

    def test_unknown(self):
        code, _, err = invoke("materials", "show", "Nd_YVO")
        assert code == 1
        assert json.loads(err)["error"] == "UnknownMaterial"

    def test_env_file(self, tmp_path, monkeypatch):
        path = tmp_path / "user.json"
        path.write_text(json.dumps([{"name": "Er_YSO", "max_afc_bandwidth_hz": 1e9}]))
        monkeypatch.setenv(cli.MATERIALS_ENV, str(path))
        _, out, _ = invoke("materials", "list")
        assert "Er_YSO" in json.loads(out)

    def test_file_flag(self, tmp_path):
        path = tmp_path / "user.json"
        path.write_text(json.dumps([{"name": "Pr_YSO", "max_afc_bandwidth_hz": 6e6}]))
        _, out, _ = invoke("materials", "show", "Pr_YSO", "--file", str(path))
        assert json.loads(out)["max_afc_bandwidth_hz"] == 6e6


class TestRateAndReproduce:
    def test_rate(self):
        _, out, _ = invoke("rate", "--link-length-m", "100e3", "--refractive-index", "1.5")
        assert json.loads(out)["rate_hz"] == pytest.approx(2e3, rel=0.01)

    def test_reproduce_case(self):
        code, out, _ = invoke("reproduce", "--case", "eu-spinwave")
        data = json.loads(out)
        assert code == 0
        assert data["n_sw"] == 5.62252
        assert data["pass"] is True

    def test_reproduce_praseodymium_efficiency(self):
        _, out, _ = invoke("reproduce", "--case", "pr-eta-t2")
        data = json.loads(out)
        assert data["computed"] == pytest.approx(0.337, abs=5e-4)
        assert data["paper_value"] == 0.34
        assert data["tolerance"] == 0.01
        assert data["pass"] is True

    def test_reproduce_spatial(self):
        _, out, _ = invoke("reproduce", "--case", "spatial-62")
        data = json.loads(out)
        assert data["computed"] == pytest.approx(62.0, abs=0.01)
        assert data["pass"] is True

    def test_unknown_case(self):
        code, _, err = invoke("reproduce", "--case", "nope")
        assert code == 1
        assert json.loads(err)["error"] == "UnknownCase"

    def test_all_exit_code_reflects_failures(self):
        code, out, _ = invoke("reproduce")
        data = json.loads(out)
        assert code == (1 if data["failed"] else 0)
        assert data["passed"] + len(data["failed"]) == len(data["cases"])


class TestDeterminism:
    @pytest.mark.parametrize("argv", [
        ("reproduce",),
        ("multiplex", "--material", "Pr_YSO", "--n-modes", "9"),
        ("spectrum", "--amplitudes", "1,0.5,1", "--fwhm-s", "410e-9", "--mode-bin-s", "1e-6"),
    ])
    def test_byte_identical(self, argv):
        first = invoke(*argv)
        second = invoke(*argv)
        assert first == second


class TestUsage:
    def test_unknown_subcommand(self):
        with pytest.raises(SystemExit) as exc:
            cli.run(["bogus"])
        assert exc.value.code == 2

    def test_missing_required_flag(self):
        with pytest.raises(SystemExit) as exc:
            cli.run(["rate", "--link-length-m", "1e3"])
        assert exc.value.code == 2

    def test_console_script(self):
        proc = subprocess.run([sys.executable, "-m", "afc_capacity.cli", "capacity",
                               "--gamma-hz", "4e6", "--delay-s", "25e-6"],
                              capture_output=True, text=True, check=False)
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["n_floor"] == 40

    def test_console_script_usage_error(self):
        proc = subprocess.run([sys.executable, "-m", "afc_capacity.cli"],
                              capture_output=True, text=True, check=False)
        assert proc.returncode == 2
