"""Virial and energy-center monitors for zero-momentum defocusing runs."""

from typing import List, Optional, Sequence

import numpy as np
import structlog

from src.dynamics import (
    EvolutionConfig,
    NonlinearityKind,
    NonlinearitySpec,
    PairState,
    Trajectory,
    eval_nonlinearity,
    eval_potential_density,
    evolve,
)
from src.exceptions import InvalidInputError
from src.observables import (
    VirialConfig,
    center_series,
    equipartition_series,
    momentum,
    observable_series,
    potential_ratio_check,
    space_derivative,
    virial_series,
)

from .models import ExperimentReport, Flag
from .sweep import SweepPool

logger = structlog.get_logger(__name__)

DEFOCUSING_EXP = NonlinearitySpec(kind=NonlinearityKind.DEFOCUSING_EXP)

VIRIAL_IDENTITY_TOL = 1e-4
EQUIPARTITION_TOL = 1e-4
CENTER_SLACK = 1e-10
MOMENTUM_TOL = 1e-10
CENTER_SYMMETRY_TOL = 1e-10
EVEN_DATA_RTOL = 1e-12


def is_even(state: PairState, rtol: float = EVEN_DATA_RTOL) -> bool:
    """u and u_t invariant under x -> -x on the lattice (node j maps to node n - j)."""
    scale = max(float(np.abs(state.u).max()), float(np.abs(state.ut).max()))
    if scale == 0.0:
        return True
    gap = max(
        float(np.abs(state.u - np.roll(state.u[::-1], 1)).max()),
        float(np.abs(state.ut - np.roll(state.ut[::-1], 1)).max()),
    )
    return gap <= rtol * scale


def relative_fd_residual(times: Sequence[float], values: Sequence[float], rates: Sequence[float]) -> float:
    """max |d/dt values - rates| / max |rates| over interior points, by centered differences."""
    times = np.asarray(times)
    if times.shape[0] < 3:
        return 0.0
    measured = np.gradient(np.asarray(values), times)
    rates = np.asarray(rates)
    scale = np.abs(rates).max()
    gap = np.abs(measured[1:-1] - rates[1:-1]).max()
    return float(gap / scale) if scale > 0 else float(gap)


def virial_tail(state: PairState, cfg: VirialConfig, spec: NonlinearitySpec) -> float:
    """
    Size of the cutoff remainder eta in
    V_R' <= -2 ||u_x||^2 - (2/3) int N(u) u + eta, given 3 N~ <= N(u) u.
    """
    grid = state.grid
    y = grid.x / cfg.R
    phi, dphi, ddphi = cfg.phi_derivatives(grid.x)
    u, ut = state.u, state.ut
    ux = space_derivative(state)
    nu = eval_nonlinearity(u, spec) * u
    pot = eval_potential_density(u, spec)
    density = (
        2.0 * (1.0 - phi) * ux**2
        + (2.0 / 3.0) * (1.0 - phi) * np.abs(nu)
        + np.abs(ddphi) * u**2 / (2.0 * cfg.R**2)
        + np.abs(y * dphi) * (ux**2 + u**2 + np.abs(pot) + ut**2)
    )
    return float(grid.dx * np.sum(density))


def virial_bound_slack(traj: Trajectory, cfg: VirialConfig, dv_r: Sequence[float]) -> float:
    """min over snapshots of (-2||u_x||^2 - (2/3) int N u + eta) - V_R'; non-negative when the bound holds."""
    spec = traj.nonlinearity
    slack = np.inf
    for snap, rate in zip(traj.snapshots, dv_r):
        ux = space_derivative(snap)
        nu = eval_nonlinearity(snap.u, spec) * snap.u
        bound = snap.grid.dx * np.sum(-2.0 * ux**2 - (2.0 / 3.0) * nu) + virial_tail(snap, cfg, spec)
        slack = min(slack, bound - rate)
    return float(slack)


def run_soliton_death_monitors(
    state: PairState,
    config: EvolutionConfig,
    radii: Sequence[float],
    pool: Optional[SweepPool] = None,
) -> ExperimentReport:
    """
    V_R and X_R series for each R on one defocusing exponential run.

    Flags the virial derivative identity against centered differences,
    the virial upper bound with its measured remainder, the energy-center
    rate bound |X_R' - P| <= c * (energy beyond R), the equipartition
    identity and 3 N~ <= N(u) u along the run. Even data also flags
    X_R = 0 at every snapshot.
    """
    p0 = momentum(state)
    if abs(p0) > MOMENTUM_TOL:
        raise InvalidInputError(f"soliton-death monitors need zero momentum, got P={p0:.3g}")
    for r in radii:
        if 2.0 * r > state.grid.half_length:
            raise InvalidInputError(f"R={r} needs 2R <= half_length {state.grid.half_length}")

    traj = evolve(state, config, DEFOCUSING_EXP)
    pool = pool or SweepPool()

    def monitors(r: float) -> dict:
        cfg = VirialConfig(R=r)
        virial = virial_series(traj, cfg)
        center = center_series(traj, cfg)
        p = np.array([momentum(s) for s in traj.snapshots])
        bound = center.rate_constant * np.asarray(center.exterior_energy)
        center_excess = float(np.max(np.abs(np.asarray(center.dx_r) - p) - bound))
        return {
            "R": r,
            "virial_identity_residual": relative_fd_residual(virial.times, virial.v_r, virial.dv_r),
            "virial_bound_slack": virial_bound_slack(traj, cfg, virial.dv_r),
            "center_rate_residual": relative_fd_residual(center.times, center.x_r, center.dx_r),
            "center_rate_excess": center_excess,
            "center_rate_constant": center.rate_constant,
            "max_exterior_energy": float(np.max(center.exterior_energy)),
            "max_abs_x_r": float(np.max(np.abs(center.x_r))),
            "max_abs_v_r": float(np.max(np.abs(virial.v_r))),
        }

    points: List[dict] = pool.map("soliton_death", monitors, list(radii))

    report = ExperimentReport(
        name="soliton_death",
        inputs={
            "half_length": state.grid.half_length,
            "n_points": state.grid.n_points,
            "radii": list(radii),
            "evolution": config.model_dump(mode="json"),
        },
    )
    even = is_even(state)
    report.results["even_data"] = even
    for p in points:
        tag = f"[R={p['R']:g}]"
        report.results[f"R{tag}"] = p
        report.flag(Flag.at_most(f"virial_identity{tag}", p["virial_identity_residual"], VIRIAL_IDENTITY_TOL))
        report.flag(Flag.at_least(f"virial_bound{tag}", p["virial_bound_slack"], -CENTER_SLACK))
        report.flag(Flag.at_most(f"center_rate_bound{tag}", p["center_rate_excess"], CENTER_SLACK))
        if even:
            report.flag(Flag.at_most(f"center_symmetry{tag}", p["max_abs_x_r"], CENTER_SYMMETRY_TOL))

    if len(traj.snapshots) >= 3:
        equipartition = equipartition_series(traj)
        report.results["equipartition_residual"] = equipartition.max_relative_residual
        report.flag(Flag.at_most("equipartition", equipartition.max_relative_residual, EQUIPARTITION_TOL))
    report.flag(Flag.holds("potential_ratio", all(potential_ratio_check(s.u) for s in traj.snapshots)))

    report.series = observable_series(traj, VirialConfig(R=radii[0]) if radii else None)
    logger.info("soliton_death_report", radii=len(points), passed=report.all_passed)
    return report
