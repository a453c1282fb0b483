"""Scenario parsing, dispatch, output files and the command line."""

import io
import json
from pathlib import Path

import numpy as np
import pandas as pd
import pytest
from rich.console import Console

from main import main
from src.cli import (
    EXIT_ERROR,
    EXIT_FLAG_FAILED,
    EXIT_PASS,
    Experiment,
    dispatch,
    parse_config,
    print_summary,
    read_assignments,
)
from src.exceptions import ConfigError
from src.observables import SERIES_COLUMNS

SMALL_SIMULATION = [
    "half_length=50",
    "n_points=512",
    "dt=5e-4",
    "t_final=0.5",
    "snapshot_stride=100",
]

IDENTITY_GRID = ["half_length=40", "n_points=2048"]

SCENARIOS = Path(__file__).resolve().parent.parent / "scenarios"


# ─────────────────────────────────────────────────────────────────────────────
# Parsing
# ─────────────────────────────────────────────────────────────────────────────


class TestParseConfig:
    def test_defaults(self):
        config = parse_config("")
        assert config.experiment == Experiment.SIMULATE
        assert config.n_points == 2048
        assert config.exponents == [6.0, float("inf")]

    def test_values_and_comments(self):
        text = "# header\nhalf_length = 40  # box\nn_points = 512\nnonlinearity = quintic_focusing\n"
        config = parse_config(text)
        assert config.half_length == 40.0
        assert config.grid.n_points == 512
        assert config.nonlinearity_spec.sign == -1

    def test_experiment_argument_wins(self):
        config = parse_config("experiment = simulate\n", experiment="identities")
        assert config.experiment == Experiment.IDENTITIES

    def test_odd_point_count(self):
        with pytest.raises(ConfigError, match="n_points must be even") as info:
            parse_config("half_length = 10\nn_points = 255\n")
        assert info.value.line == 2
        assert info.value.field == "n_points"

    def test_s_out_of_range(self):
        with pytest.raises(ConfigError) as info:
            parse_config("s = 0.95\n")
        assert info.value.field == "s"
        assert info.value.line == 1

    def test_unknown_key(self):
        with pytest.raises(ConfigError, match="unknown key") as info:
            parse_config("dt = 0.1\nfrobnicate = 3\n")
        assert info.value.line == 2
        assert info.value.field == "frobnicate"

    def test_syntax_error_line(self):
        with pytest.raises(ConfigError) as info:
            parse_config("dt = 0.1\nthis line has no assignment\n")
        assert info.value.line == 2

    def test_missing_value(self):
        with pytest.raises(ConfigError, match="missing value"):
            read_assignments("dt =\n")

    def test_duplicate_key(self):
        with pytest.raises(ConfigError, match="duplicate key") as info:
            parse_config("dt = 0.1\ndt = 0.2\n")
        assert info.value.line == 2

    def test_overrides_and_lists(self):
        config = parse_config("dt = 0.1\n", overrides=["dt=0.2", "amplitudes = 0.5, 1, inf"])
        assert config.dt == 0.2
        assert config.amplitudes == [0.5, 1.0, float("inf")]

    def test_override_errors_have_no_line(self):
        with pytest.raises(ConfigError) as info:
            parse_config("n_points = 256\n", overrides=["n_points=7"])
        assert info.value.line is None
        assert info.value.field == "n_points"

    def test_empty_list_entry(self):
        with pytest.raises(ConfigError):
            parse_config("amplitudes = 1,,2\n")

    def test_derived_objects(self):
        config = parse_config("order = 4\ndealias = none\nprofile = ground_state\namplitude = 0.5\n")
        assert config.evolution.order == 4
        assert config.evolution.dealias.value == "none"
        assert config.profile_spec.amplitude == 0.5


# ─────────────────────────────────────────────────────────────────────────────
# Dispatch
# ─────────────────────────────────────────────────────────────────────────────


def _config(experiment: str, overrides=()):
    return parse_config("", overrides=list(overrides), experiment=experiment)


class TestDispatch:
    def test_identities(self, tmp_path):
        result = dispatch(_config("identities", IDENTITY_GRID), out_dir=str(tmp_path))
        assert result.exit_code == EXIT_PASS, result.report.failed_flags
        summary = json.loads((tmp_path / "identities_summary.json").read_text())
        assert set(summary) == {
            "experiment",
            "scenario",
            "inputs",
            "results",
            "flags",
            "tolerances",
            "passed",
            "versions",
        }
        assert summary["passed"] is True
        assert summary["tolerances"]["cos5_identity"] == 1e-15
        assert "numpy" in summary["versions"]
        assert not (tmp_path / "identities_series.csv").exists()

    def test_simulation_outputs(self, tmp_path):
        result = dispatch(_config("simulate", SMALL_SIMULATION), out_dir=str(tmp_path))
        assert result.exit_code == EXIT_PASS, result.report.failed_flags
        frame = pd.read_csv(tmp_path / "simulate_series.csv")
        assert list(frame.columns) == SERIES_COLUMNS
        assert len(frame) == 11
        assert np.allclose(frame["t"], np.linspace(0.0, 0.5, 11))
        assert (tmp_path / "simulate_series.csv").read_bytes().endswith(b"\n")

    def test_outputs_are_byte_stable(self, tmp_path):
        first, second = tmp_path / "a", tmp_path / "b"
        dispatch(_config("simulate", SMALL_SIMULATION), out_dir=str(first))
        dispatch(_config("simulate", SMALL_SIMULATION), out_dir=str(second))
        for name in ("simulate_series.csv", "simulate_summary.json"):
            assert (first / name).read_bytes() == (second / name).read_bytes()

    def test_blowup_is_not_an_error(self, tmp_path):
        overrides = [
            "half_length=40",
            "n_points=2048",
            "dt=1e-4",
            "t_final=5",
            "snapshot_stride=100",
            "nonlinearity=quintic_focusing",
            "profile=ground_state",
            "amplitude=3.0",
            "s=0.5",
        ]
        result = dispatch(_config("simulate", overrides), out_dir=str(tmp_path))
        assert result.exit_code == EXIT_PASS
        summary = json.loads((tmp_path / "simulate_summary.json").read_text())
        assert summary["results"]["blowup"] is True
        assert (tmp_path / "simulate_series.csv").exists()

    def test_failed_flag(self, tmp_path):
        overrides = SMALL_SIMULATION + ["energy_drift_tol=1e-30"]
        result = dispatch(_config("simulate", overrides), out_dir=str(tmp_path))
        assert result.exit_code == EXIT_FLAG_FAILED
        assert [f.name for f in result.report.failed_flags] == ["energy_drift"]

    def test_unwritable_output(self, tmp_path):
        blocker = tmp_path / "file"
        blocker.write_text("not a directory")
        result = dispatch(_config("identities", IDENTITY_GRID), out_dir=str(blocker / "sub"))
        assert result.exit_code == EXIT_ERROR
        assert result.error

    def test_invalid_radius(self, tmp_path):
        overrides = SMALL_SIMULATION + ["radii=10, 40"]
        result = dispatch(_config("soliton-death", overrides), out_dir=str(tmp_path))
        assert result.exit_code == EXIT_ERROR
        assert "R=40" in result.error

    def test_output_dir_from_scenario(self, tmp_path):
        target = tmp_path / "from_scenario"
        config = _config("identities", IDENTITY_GRID + [f"output_dir={target}"])
        assert dispatch(config).exit_code == EXIT_PASS
        assert (target / "identities_summary.json").exists()

    def test_print_summary(self, tmp_path):
        result = dispatch(_config("simulate", SMALL_SIMULATION), out_dir=str(tmp_path))
        buffer = io.StringIO()
        print_summary(result, Console(file=buffer, width=120))
        text = buffer.getvalue()
        assert "energy_drift" in text
        assert "exit 0" in text

    def test_sweep_summary_in_results(self, tmp_path):
        overrides = [
            "half_length=50",
            "n_points=512",
            "dt=1e-3",
            "t_final=0.2",
            "snapshot_stride=2",
            "dealias=none",
            "radii=10, 20",
        ]
        result = dispatch(_config("soliton-death", overrides), out_dir=str(tmp_path))
        assert result.exit_code != EXIT_ERROR
        sweep = json.loads((tmp_path / "soliton_death_summary.json").read_text())["results"]["sweep"]
        assert sweep["total"] == sweep["completed"] == 2
        assert sweep["failed"] == 0
        assert sweep["points"] == ["soliton_death[0]:completed", "soliton_death[1]:completed"]

    def test_plain_run_has_no_sweep(self, tmp_path):
        result = dispatch(_config("simulate", SMALL_SIMULATION), out_dir=str(tmp_path))
        assert "sweep" not in result.report.results

    @pytest.mark.slow
    def test_scattering_scenario(self, tmp_path):
        text = (SCENARIOS / "scattering.cfg").read_text()
        result = dispatch(parse_config(text, experiment="scattering"), out_dir=str(tmp_path))
        assert result.exit_code == EXIT_PASS, result.report.failed_flags
        assert (tmp_path / "scattering_series.csv").exists()
        summary = json.loads((tmp_path / "scattering_summary.json").read_text())
        assert summary["results"]["sweep"]["completed"] == 2
        for tag in ("[a=0.5]", "[a=1]"):
            assert summary["results"][f"amplitude{tag}"]["s6_tail_fraction"] < 1e-3


# ─────────────────────────────────────────────────────────────────────────────
# Command line
# ─────────────────────────────────────────────────────────────────────────────


class TestMain:
    def test_identities(self, tmp_path):
        argv = ["identities", "--quiet", "--out", str(tmp_path)]
        for item in IDENTITY_GRID:
            argv += ["--override", item]
        assert main(argv) == EXIT_PASS
        assert (tmp_path / "identities_summary.json").exists()

    def test_scenario_file(self, tmp_path):
        cfg = tmp_path / "small.cfg"
        cfg.write_text("\n".join(item.replace("=", " = ") for item in SMALL_SIMULATION) + "\n")
        assert main(["simulate", "--config", str(cfg), "--out", str(tmp_path / "out"), "--quiet"]) == EXIT_PASS

    def test_missing_config(self, tmp_path, capsys):
        code = main(["simulate", "--config", str(tmp_path / "missing.cfg")])
        assert code == EXIT_ERROR
        assert "config error" in capsys.readouterr().err

    def test_invalid_config(self, tmp_path, capsys):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("n_points = 255\n")
        assert main(["simulate", "--config", str(cfg)]) == EXIT_ERROR
        assert "line 1" in capsys.readouterr().err

    def test_unknown_subcommand(self):
        with pytest.raises(SystemExit):
            main(["teleport"])
