"""Conserved functionals and local energy quantities."""

from typing import Union

import numpy as np

from src.dynamics import (
    NonlinearityKind,
    NonlinearitySpec,
    PairState,
    Trajectory,
    eval_nonlinearity,
    eval_potential_density,
    from_first_order,
)
from src.exceptions import InvalidInputError
from src.spectral_core import SpectralField, derivative

from .models import EquipartitionSeries


def space_derivative(state: PairState) -> np.ndarray:
    """u_x computed spectrally."""
    return derivative(SpectralField(grid=state.grid, values=state.u)).values.real


def energy_density(state: PairState, spec: NonlinearitySpec) -> np.ndarray:
    """e_u = (u^2 + u_x^2 + u_t^2 + N~(u)) / 2."""
    ux = space_derivative(state)
    return 0.5 * (state.u**2 + ux**2 + state.ut**2 + eval_potential_density(state.u, spec))


def energy(state: PairState, spec: NonlinearitySpec) -> float:
    """E(u, u_t) by the rectangle rule."""
    return float(state.grid.dx * np.sum(energy_density(state, spec)))


def mass(f: Union[SpectralField, PairState]) -> float:
    """M = ||f||_{L^2}^2; for a PairState, the mass of u."""
    values = f.u if isinstance(f, PairState) else f.values
    return float(f.grid.dx * np.sum(np.abs(values) ** 2))


def momentum(state: PairState) -> float:
    """P = -int u_t u_x."""
    return float(-state.grid.dx * np.sum(state.ut * space_derivative(state)))


def energy_centroid(state: PairState, spec: NonlinearitySpec) -> float:
    """Energy-weighted mean position; 0 for the zero state."""
    density = energy_density(state, spec)
    total = density.sum()
    if total == 0.0:
        return 0.0
    return float(np.sum(state.grid.x * density) / total)


def exterior_energy(state: PairState, spec: NonlinearitySpec, center: float, radius: float) -> float:
    """Energy outside |x - center| > radius."""
    outside = np.abs(state.grid.x - center) > radius
    return float(state.grid.dx * np.sum(energy_density(state, spec)[outside]))


def scattering_data(v_plus: SpectralField) -> PairState:
    """(u_0, u_1) = (Re v, <d/dx> Im v) of an asymptotic state."""
    return from_first_order(v_plus)


def potential_ratio_check(u: np.ndarray) -> bool:
    """3 N~(u) <= N(u) u pointwise for the defocusing exponential nonlinearity."""
    spec = NonlinearitySpec(kind=NonlinearityKind.DEFOCUSING_EXP)
    u = np.asarray(u, dtype=float)
    lhs = 3.0 * eval_potential_density(u, spec)
    rhs = eval_nonlinearity(u, spec) * u
    return bool(np.all(lhs <= rhs * (1 + 1e-12)))


def equipartition_series(traj: Trajectory) -> EquipartitionSeries:
    """
    d/dt int u u_t against ||u_t||^2 - ||u_x||^2 - ||u||^2 - int N(u) u.

    The measured side is a second-order finite difference over snapshots.
    """
    if len(traj.snapshots) < 3:
        raise InvalidInputError("equipartition check needs at least three snapshots")
    dx = traj.grid.dx
    spec = traj.nonlinearity
    times = traj.times
    pairing = np.array([dx * np.sum(s.u * s.ut) for s in traj.snapshots])
    predicted = []
    for s in traj.snapshots:
        ux = space_derivative(s)
        nu = eval_nonlinearity(s.u, spec) * s.u
        predicted.append(dx * np.sum(s.ut**2 - ux**2 - s.u**2 - nu))
    predicted = np.array(predicted)
    measured = np.gradient(pairing, times)

    scale = np.abs(predicted).max()
    inner = slice(1, -1)
    residual = (
        float(np.abs(measured[inner] - predicted[inner]).max() / scale) if scale > 0 else 0.0
    )
    return EquipartitionSeries(
        times=times.tolist(),
        measured=measured.tolist(),
        predicted=predicted.tolist(),
        max_relative_residual=residual,
    )
