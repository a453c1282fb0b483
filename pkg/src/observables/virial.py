"""Localized virial functional V_R and energy center X_R."""

import numpy as np

from src.dynamics import PairState, Trajectory, eval_nonlinearity, eval_potential_density
from src.exceptions import InvalidInputError
from src.spectral_core import smooth_cutoff_derivatives

from .functionals import energy_density, space_derivative
from .models import CenterSeries, VirialConfig, VirialSeries


def _check_radius(traj: Trajectory, cfg: VirialConfig) -> None:
    if 2.0 * cfg.R > traj.grid.half_length:
        raise InvalidInputError(
            f"cutoff support 2R = {2.0 * cfg.R} exceeds the half-length {traj.grid.half_length}"
        )


def virial_value(state: PairState, cfg: VirialConfig) -> float:
    """V_R = int phi(x/R) u_t (u + 2 x u_x)."""
    x = state.grid.x
    ux = space_derivative(state)
    return float(state.grid.dx * np.sum(cfg.phi(x) * state.ut * (state.u + 2.0 * x * ux)))


def virial_rate(state: PairState, cfg: VirialConfig, spec) -> float:
    """
    Right-hand side of the localized virial identity.

    V_R' = -2 int phi u_x^2 - int phi N(u) u + int phi N~(u)
           + (1/2R^2) int phi'' u^2
           - int (x/R) phi' (u_x^2 - u^2 - N~(u) + u_t^2)

    with phi and its derivatives evaluated at x/R.
    """
    grid = state.grid
    y = grid.x / cfg.R
    phi, dphi, ddphi = cfg.phi_derivatives(grid.x)
    u, ut = state.u, state.ut
    ux = space_derivative(state)
    nu = eval_nonlinearity(u, spec) * u
    pot = eval_potential_density(u, spec)

    density = (
        -2.0 * phi * ux**2
        - phi * nu
        + phi * pot
        + ddphi * u**2 / (2.0 * cfg.R**2)
        - y * dphi * (ux**2 - u**2 - pot + ut**2)
    )
    return float(grid.dx * np.sum(density))


def virial_series(traj: Trajectory, cfg: VirialConfig) -> VirialSeries:
    """V_R(t) per snapshot with the analytic V_R'(t)."""
    _check_radius(traj, cfg)
    spec = traj.nonlinearity
    return VirialSeries(
        R=cfg.R,
        times=traj.times.tolist(),
        v_r=[virial_value(s, cfg) for s in traj.snapshots],
        dv_r=[virial_rate(s, cfg, spec) for s in traj.snapshots],
    )


def center_value(state: PairState, cfg: VirialConfig, spec) -> float:
    """X_R = int x phi(x/R) e_u."""
    x = state.grid.x
    return float(state.grid.dx * np.sum(x * cfg.phi(x) * energy_density(state, spec)))


def center_rate(state: PairState, cfg: VirialConfig) -> float:
    """X_R' = -int (phi + (x/R) phi') u_x u_t."""
    x = state.grid.x
    phi, dphi, _ = cfg.phi_derivatives(x)
    flux = space_derivative(state) * state.ut
    return float(-state.grid.dx * np.sum((phi + (x / cfg.R) * dphi) * flux))


def center_rate_constant() -> float:
    """c in |X_R' - P| <= c * (energy outside |x| >= R), for N~ >= 0."""
    y = np.linspace(1.0, 2.0, 4001)
    _, dphi, _ = smooth_cutoff_derivatives(y)
    return float(1.0 + np.abs(y * dphi).max())


def center_series(traj: Trajectory, cfg: VirialConfig) -> CenterSeries:
    """X_R(t) per snapshot, its analytic rate and the exterior energy beyond R."""
    _check_radius(traj, cfg)
    spec = traj.nonlinearity
    exterior = []
    for s in traj.snapshots:
        outside = np.abs(s.grid.x) >= cfg.R
        exterior.append(float(s.grid.dx * np.sum(energy_density(s, spec)[outside])))
    return CenterSeries(
        R=cfg.R,
        times=traj.times.tolist(),
        x_r=[center_value(s, cfg, spec) for s in traj.snapshots],
        dx_r=[center_rate(s, cfg) for s in traj.snapshots],
        exterior_energy=exterior,
        rate_constant=center_rate_constant(),
    )
