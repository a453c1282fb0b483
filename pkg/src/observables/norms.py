"""Spacetime norms over trajectories and dispersive decay fits."""

from typing import Callable, Sequence, Tuple

import numpy as np
from scipy.integrate import cumulative_trapezoid, trapezoid

from src.dynamics import Trajectory
from src.exceptions import DegenerateFitError, InvalidInputError
from src.spectral_core import MultiplierSymbol, SpectralField, apply_multiplier, lebesgue_norm, low_pass
from src.symmetry_ops import free_kg_propagate

from .models import DecayFit, StrichartzResult, is_admissible

# Norms below this level carry no decay information
DEGENERATE_LEVEL = 1e-14


def weighted_field(u: np.ndarray, grid, s: float) -> np.ndarray:
    """<d/dx>^{s - 1/2} u (identity at s = 1/2)."""
    if s == 0.5:
        return np.asarray(u, dtype=float)
    field = SpectralField(grid=grid, values=u)
    return apply_multiplier(field, MultiplierSymbol.bessel(s - 0.5)).values.real


def strichartz_s6(traj: Trajectory, s: float = 0.5) -> StrichartzResult:
    """
    ||<d/dx>^{s-1/2} u||_{L^6_{t,x}} over the trajectory span.

    Composite trapezoid in time over the stored snapshots; the cumulative
    sixth power is returned alongside and is nondecreasing.
    """
    grid = traj.grid
    times = traj.times
    integrand = np.array(
        [grid.dx * np.sum(np.abs(weighted_field(snap.u, grid, s)) ** 6) for snap in traj.snapshots]
    )
    if times.shape[0] < 2:
        cumulative = np.zeros(times.shape[0])
    else:
        cumulative = cumulative_trapezoid(integrand, times, initial=0.0)
    return StrichartzResult(
        value=float(cumulative[-1] ** (1.0 / 6.0)),
        times=times.tolist(),
        cumulative=cumulative.tolist(),
    )


def mixed_norm(traj: Trajectory, q: float, r: float) -> float:
    """L^q_t L^r_x norm of u for a Strichartz-admissible pair."""
    if not is_admissible(q, r):
        raise InvalidInputError(f"(q, r) = ({q}, {r}) is not admissible")
    grid = traj.grid
    norms = np.array(
        [lebesgue_norm(SpectralField(grid=grid, values=snap.u), r) for snap in traj.snapshots]
    )
    if q == np.inf:
        return float(norms.max())
    if norms.shape[0] < 2:
        return 0.0
    return float(trapezoid(norms**q, traj.times) ** (1.0 / q))


def refinement_change(traj: Trajectory, functional: Callable[[Trajectory], float]) -> float:
    """Relative change of a trajectory functional when every other snapshot is dropped."""
    fine = functional(traj)
    coarse = functional(traj.subsample(2))
    if fine == 0.0:
        return abs(coarse)
    return abs(fine - coarse) / abs(fine)


def dispersive_decay_fit(
    f: SpectralField,
    p: float,
    t_range: Tuple[float, float] = (10.0, 100.0),
    samples: int = 12,
) -> DecayFit:
    """
    Slope of log ||e^{-it<d>} f||_{L^p} against log t over t_range.

    The expected slope is 1/p - 1/2; the endpoint p = inf is an extrapolation.
    """
    if not p > 2:
        raise InvalidInputError(f"decay fit needs p > 2, got {p}")
    t_lo, t_hi = t_range
    if not 0 < t_lo < t_hi:
        raise InvalidInputError("t_range must satisfy 0 < t_lo < t_hi")
    times = np.geomspace(t_lo, t_hi, samples)
    norms = np.array([lebesgue_norm(free_kg_propagate(f, t), p) for t in times])
    if np.all(norms < DEGENERATE_LEVEL) or np.any(norms <= 0):
        raise DegenerateFitError("all sampled norms vanish; nothing to fit")
    slope = float(np.polyfit(np.log(times), np.log(norms), 1)[0])
    expected = -0.5 if p == np.inf else 1.0 / p - 0.5
    return DecayFit(p=p, slope=slope, expected=expected, times=times.tolist(), norms=norms.tolist())


def dyadic_increments(result: StrichartzResult, starts: Sequence[float]) -> list:
    """Cumulative S^6 gained over [T, 2T] for each T in starts."""
    times = np.asarray(result.times)
    cumulative = np.asarray(result.cumulative)
    return [
        float(np.interp(2.0 * t, times, cumulative) - np.interp(t, times, cumulative)) for t in starts
    ]


def scaling_profile_bounds(
    phi: SpectralField, lambdas: Sequence[float], theta: float, s: float
) -> list:
    """
    ||d|^s P_{<=lam^theta} phi||_{L^2} / ((2 lam^theta)^s ||phi||_{L^2}) per lam.

    The low-pass symbol is supported in |xi| <= 2 lam^theta, so every ratio is
    at most one.
    """
    if s < 0:
        raise InvalidInputError(f"s must be non-negative, got {s}")
    base = lebesgue_norm(phi, 2.0)
    if base == 0.0:
        return [0.0 for _ in lambdas]
    ratios = []
    for lam in lambdas:
        cutoff = lam**theta
        truncated = low_pass(phi, cutoff)
        lifted = apply_multiplier(truncated, lambda xi: np.abs(xi) ** s)
        ratios.append(lebesgue_norm(lifted, 2.0) / ((2.0 * cutoff) ** s * base))
    return ratios
