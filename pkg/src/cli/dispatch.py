"""
Experiment dispatch and output files.

Responsibilities:
- Build grid, evolution, nonlinearity and initial data from a ScenarioConfig
- Run the named experiment through a SweepPool
- Write the series CSV and the summary JSON byte-stably
- Map the outcome to an exit status (0 pass, 1 failed flag, 2 error)
"""

import json
from pathlib import Path
from typing import Callable, Dict, List, Optional

import numpy as np
import pandas as pd
import pydantic
import scipy
import structlog

import src
from src.config import get_settings
from src.exceptions import BlowupDetected, KGScatterError
from src.experiments import (
    ExperimentReport,
    Flag,
    SweepPool,
    build_initial_data,
    run_decay_battery,
    run_identity_battery,
    run_nls_limit,
    run_scattering,
    run_simulation,
    run_soliton_death_monitors,
    run_symmetry_battery,
    run_threshold,
    run_twin_stability,
    to_builtin,
)
from src.observables import SERIES_COLUMNS
from src.spectral_core import SpectralField

from .models import DispatchResult, Experiment, ScenarioConfig

logger = structlog.get_logger(__name__)

EXIT_PASS = 0
EXIT_FLAG_FAILED = 1
EXIT_ERROR = 2


# ─────────────────────────────────────────────────────────────────────────────
# Experiment runners
# ─────────────────────────────────────────────────────────────────────────────


def _profile_field(config: ScenarioConfig) -> SpectralField:
    state = build_initial_data(config.grid, config.profile_spec)
    return SpectralField(grid=state.grid, values=state.u)


def _simulate(config: ScenarioConfig, pool: SweepPool) -> ExperimentReport:
    state = build_initial_data(config.grid, config.profile_spec)
    return run_simulation(state, config.nonlinearity_spec, config.evolution, config.s, config.energy_drift_tol)


def _scattering(config: ScenarioConfig, pool: SweepPool) -> ExperimentReport:
    return run_scattering(
        config.grid,
        config.profile_spec,
        config.amplitudes,
        config.nonlinearity_spec,
        config.evolution,
        s=config.s,
        checkpoints=config.checkpoints,
        energy_drift_tol=config.energy_drift_tol,
        pool=pool,
    )


def _nls_limit(config: ScenarioConfig, pool: SweepPool) -> ExperimentReport:
    return run_nls_limit(
        _profile_field(config),
        config.nonlinearity_spec,
        lambdas=config.lambdas,
        s=config.s,
        dt_nls=config.dt_nls,
        snapshot_stride=config.snapshot_stride,
        check_dt_halving=config.check_dt_halving,
        pool=pool,
    )


def _threshold(config: ScenarioConfig, pool: SweepPool) -> ExperimentReport:
    return run_threshold(
        config.grid,
        config.amplitudes,
        config.evolution,
        static_horizon=config.static_horizon,
        checkpoints=config.checkpoints,
        pool=pool,
    )


def _stability(config: ScenarioConfig, pool: SweepPool) -> ExperimentReport:
    state = build_initial_data(config.grid, config.profile_spec)
    return run_twin_stability(
        state, config.nonlinearity_spec, config.evolution, deltas=config.deltas, s=config.s, pool=pool
    )


def _soliton_death(config: ScenarioConfig, pool: SweepPool) -> ExperimentReport:
    state = build_initial_data(config.grid, config.profile_spec)
    return run_soliton_death_monitors(state, config.evolution, config.radii, pool=pool)


def _symmetry_check(config: ScenarioConfig, pool: SweepPool) -> ExperimentReport:
    return run_symmetry_battery(
        _profile_field(config),
        nu=config.nu,
        mu=config.mu,
        tau=config.tau,
        y=config.shift,
        t=config.t_final,
        s=config.s,
    )


def _decay_fit(config: ScenarioConfig, pool: SweepPool) -> ExperimentReport:
    return run_decay_battery(
        _profile_field(config),
        exponents=config.exponents,
        t_range=(config.decay_t_min, config.decay_t_max),
        samples=config.decay_samples,
    )


def _identities(config: ScenarioConfig, pool: SweepPool) -> ExperimentReport:
    return run_identity_battery(config.grid, seed=config.seed)


RUNNERS: Dict[Experiment, Callable[[ScenarioConfig, SweepPool], ExperimentReport]] = {
    Experiment.SIMULATE: _simulate,
    Experiment.SCATTERING: _scattering,
    Experiment.NLS_LIMIT: _nls_limit,
    Experiment.THRESHOLD: _threshold,
    Experiment.STABILITY: _stability,
    Experiment.SOLITON_DEATH: _soliton_death,
    Experiment.SYMMETRY_CHECK: _symmetry_check,
    Experiment.DECAY_FIT: _decay_fit,
    Experiment.IDENTITIES: _identities,
}


# ─────────────────────────────────────────────────────────────────────────────
# Output files
# ─────────────────────────────────────────────────────────────────────────────


def versions() -> Dict[str, str]:
    return {
        "kgscatter": src.__version__,
        "numpy": np.__version__,
        "scipy": scipy.__version__,
        "pandas": pd.__version__,
        "pydantic": pydantic.VERSION,
    }


def summary_payload(config: ScenarioConfig, report: ExperimentReport) -> dict:
    """Summary JSON content: inputs, results, flags, tolerances and versions."""
    return to_builtin(
        {
            "experiment": config.experiment.value,
            "scenario": config.model_dump(mode="json"),
            "inputs": report.inputs,
            "results": report.results,
            "flags": [f.model_dump(mode="json") for f in report.flags],
            "tolerances": report.tolerances(),
            "passed": report.all_passed,
            "versions": versions(),
        }
    )


def write_series(report: ExperimentReport, path: Path) -> None:
    frame = pd.DataFrame(report.series.columns(), columns=SERIES_COLUMNS)
    frame.to_csv(path, index=False, float_format="%.17g", lineterminator="\n")


def write_summary(payload: dict, path: Path) -> None:
    path.write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n", encoding="utf-8")


def write_outputs(config: ScenarioConfig, report: ExperimentReport, out_dir: Path) -> List[str]:
    """Create out_dir if needed and write <name>_series.csv and <name>_summary.json."""
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = config.experiment.value.replace("-", "_")
    files: List[str] = []
    if report.series is not None:
        series_path = out_dir / f"{stem}_series.csv"
        write_series(report, series_path)
        files.append(str(series_path))
    report.series_files = list(files)

    summary_path = out_dir / f"{stem}_summary.json"
    write_summary(summary_payload(config, report), summary_path)
    files.append(str(summary_path))
    logger.info("outputs_written", files=files)
    return files


# ─────────────────────────────────────────────────────────────────────────────
# Dispatch
# ─────────────────────────────────────────────────────────────────────────────


def _escaped_blowup_report(config: ScenarioConfig, exc: BlowupDetected) -> ExperimentReport:
    report = ExperimentReport(
        name=config.experiment.value,
        inputs={"half_length": config.half_length, "n_points": config.n_points},
        results={"blowup": True, "blowup_time": exc.time, "blowup_max_abs": exc.max_abs},
    )
    report.flag(Flag.holds("no_blowup", False))
    return report


def dispatch(
    config: ScenarioConfig,
    out_dir: Optional[str] = None,
    pool: Optional[SweepPool] = None,
) -> DispatchResult:
    """
    Run config.experiment and write its outputs.

    Blowup never produces exit 2: experiments that expect it record it as
    a result, and a blowup escaping any other experiment is written as a
    failed no_blowup flag.
    """
    target = Path(out_dir or config.output_dir or get_settings().output_dir)
    pool = pool or SweepPool()
    logger.info("dispatch_start", experiment=config.experiment.value, out_dir=str(target))

    try:
        report = RUNNERS[config.experiment](config, pool)
    except BlowupDetected as exc:
        logger.warning("blowup_escaped", experiment=config.experiment.value, time=exc.time)
        report = _escaped_blowup_report(config, exc)
    except KGScatterError as exc:
        logger.error("experiment_failed", experiment=config.experiment.value, error=str(exc))
        return DispatchResult(exit_code=EXIT_ERROR, error=str(exc))

    summary = pool.get_summary()
    if summary.total:
        report.results["sweep"] = {
            **summary.model_dump(),
            "points": [f"{t.label}:{t.status.value}" for t in pool.tasks()],
        }

    try:
        files = write_outputs(config, report, target)
    except OSError as exc:
        logger.error("output_failed", out_dir=str(target), error=str(exc))
        return DispatchResult(exit_code=EXIT_ERROR, report=report, error=str(exc))

    code = EXIT_PASS if report.all_passed else EXIT_FLAG_FAILED
    logger.info("dispatch_complete", experiment=config.experiment.value, exit_code=code)
    return DispatchResult(exit_code=code, report=report, files=files)
