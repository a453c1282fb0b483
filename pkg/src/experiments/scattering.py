"""Two-sided scattering study over an amplitude sweep."""

from typing import List, Optional, Sequence

import numpy as np
import structlog

from src.dynamics import EvolutionConfig, NonlinearitySpec, Trajectory, evolve_two_sided
from src.observables import (
    DEFAULT_CHECKPOINTS,
    energy,
    momentum,
    observable_series,
    refinement_change,
    scattering_data,
    scattering_state,
    strichartz_s6,
)
from src.spectral_core import GridSpec, SpectralField, lebesgue_norm, sobolev_norm

from .models import ExperimentReport, Flag
from .profiles import ProfileSpec, build_initial_data
from .sweep import SweepPool

logger = structlog.get_logger(__name__)

ENERGY_IDENTITY_TOL = 2e-2
ENERGY_DRIFT_TOL = 1e-6
MOMENTUM_DRIFT_TOL = 1e-8
S6_TAIL_TOL = 1e-3
S6_REFINEMENT_TOL = 1e-2


def relative_gap(value: float, reference: float) -> float:
    """|value - reference| / |reference|, absolute when reference is zero."""
    gap = abs(value - reference)
    return gap / abs(reference) if reference != 0.0 else gap


def conservation_drift(traj: Trajectory) -> tuple:
    """(max relative energy drift, max absolute momentum drift) against the t = 0 snapshot."""
    spec = traj.nonlinearity
    base = traj.nearest(0.0)
    e0, p0 = energy(base, spec), momentum(base)
    e_drift = max(relative_gap(energy(s, spec), e0) for s in traj.snapshots)
    p_drift = max(abs(momentum(s) - p0) for s in traj.snapshots)
    return e_drift, p_drift


def s6_tail_fraction(traj: Trajectory, s: float, start: float) -> float:
    """S^6 gained after t = start as a share of the S^6 total over the whole trajectory."""
    whole = strichartz_s6(traj, s)
    total = whole.cumulative[-1]
    if total == 0.0:
        return 0.0
    before = float(np.interp(start, whole.times, whole.cumulative))
    return (total - before) / total


def s6_refinement(traj: Trajectory, s: float) -> float:
    """Relative change of the S^6 norm when every other snapshot is dropped."""
    return refinement_change(traj, lambda tr: strichartz_s6(tr, s).value)


class _ScatteringPoint:
    """Evolution and scattering extraction for one amplitude."""

    def __init__(self, grid, profile, spec, config, s, checkpoints):
        self.grid = grid
        self.profile = profile
        self.spec = spec
        self.config = config
        self.s = s
        self.checkpoints = list(checkpoints)

    def __call__(self, amplitude: float) -> dict:
        state = build_initial_data(self.grid, self.profile.model_copy(update={"amplitude": amplitude}))
        t_end = max(self.config.t_final, max(abs(p) for p in self.checkpoints))
        config = self.config.model_copy(update={"t_final": t_end})
        traj = evolve_two_sided(state, config, self.spec, -t_end)

        v_plus, forward = scattering_state(traj, self.checkpoints)
        v_minus, backward = scattering_state(traj, [-p for p in self.checkpoints])
        e0 = energy(state, self.spec)
        e_drift, p_drift = conservation_drift(traj)
        half_norm = 0.5 * sobolev_norm(v_plus, 1.0) ** 2

        return {
            "amplitude": amplitude,
            "series": observable_series(traj, s=self.s),
            "t_end": t_end,
            "energy": e0,
            "momentum": momentum(state),
            "energy_drift": e_drift,
            "momentum_drift": p_drift,
            "half_v_plus_h1_sq": half_norm,
            "energy_identity_gap": relative_gap(half_norm, e0),
            "forward": forward,
            "backward": backward,
            "s6_total": strichartz_s6(traj, self.s).value,
            "s6_refinement_change": s6_refinement(traj, self.s),
            "s6_tail_fraction": s6_tail_fraction(traj, self.s, max(self.checkpoints)),
            "scattering_data_plus": _data_norms(v_plus),
            "scattering_data_minus": _data_norms(v_minus),
        }


def _data_norms(v: SpectralField) -> dict:
    data = scattering_data(v)
    u0 = SpectralField(grid=v.grid, values=data.u)
    u1 = SpectralField(grid=v.grid, values=data.ut)
    return {"u0_h1": sobolev_norm(u0, 1.0), "u1_l2": lebesgue_norm(u1, 2.0)}


def run_scattering(
    grid: GridSpec,
    profile: ProfileSpec,
    amplitudes: Sequence[float],
    spec: NonlinearitySpec,
    config: EvolutionConfig,
    s: float = 0.6,
    checkpoints: Sequence[float] = DEFAULT_CHECKPOINTS,
    energy_drift_tol: float = ENERGY_DRIFT_TOL,
    pool: Optional[SweepPool] = None,
) -> ExperimentReport:
    """
    Evolve forward and backward for each amplitude and extract v_+ and v_-.

    Flags monotone Cauchy increments in both directions, conservation of
    E and P, snapshot resolution of S^6, the forward S^6 tail beyond the
    last checkpoint against the two-sided total and, for exponential and linear
    runs, the energy identity E = ||v_+||_{H^1}^2 / 2.
    """
    pool = pool or SweepPool()
    points: List[dict] = pool.map("scattering", _ScatteringPoint(grid, profile, spec, config, s, checkpoints), list(amplitudes))

    report = ExperimentReport(
        name="scattering",
        inputs={
            "half_length": grid.half_length,
            "n_points": grid.n_points,
            "nonlinearity": spec.kind.value,
            "profile": profile.model_dump(mode="json"),
            "amplitudes": list(amplitudes),
            "checkpoints": list(checkpoints),
            "s": s,
            "evolution": config.model_dump(mode="json"),
        },
    )
    for p in points:
        tag = f"[a={p['amplitude']:g}]"
        report.results[f"amplitude{tag}"] = {
            k: v for k, v in p.items() if k not in ("series", "forward", "backward")
        }
        report.results[f"amplitude{tag}"]["forward"] = p["forward"].model_dump()
        report.results[f"amplitude{tag}"]["backward"] = p["backward"].model_dump()

        report.flag(Flag.holds(f"forward_increments_monotone{tag}", p["forward"].monotone))
        report.flag(Flag.holds(f"backward_increments_monotone{tag}", p["backward"].monotone))
        report.flag(Flag.at_most(f"energy_drift{tag}", p["energy_drift"], energy_drift_tol))
        report.flag(Flag.at_most(f"momentum_drift{tag}", p["momentum_drift"], MOMENTUM_DRIFT_TOL))
        report.flag(Flag.at_most(f"s6_refinement{tag}", p["s6_refinement_change"], S6_REFINEMENT_TOL))
        if p["t_end"] > max(checkpoints):
            report.flag(Flag.at_most(f"s6_tail_fraction{tag}", p["s6_tail_fraction"], S6_TAIL_TOL))
        if spec.is_exponential or spec.is_linear:
            report.flag(Flag.at_most(f"energy_identity{tag}", p["energy_identity_gap"], ENERGY_IDENTITY_TOL))

    if points:
        report.series = points[-1]["series"]
    logger.info("scattering_report", amplitudes=len(points), passed=report.all_passed)
    return report
