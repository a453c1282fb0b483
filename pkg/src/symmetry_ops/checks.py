"""Numerical checks of the boost algebra on band-limited fields."""

import numpy as np
from pydantic import BaseModel

from src.spectral_core import GridSpec, SnapshotInterpolator, SpectralField, bracket

from .operators import boost, free_kg_propagate, freq_map, lorentz_map, translate

# Time spacing of the snapshots behind spacetime interpolation
SNAPSHOT_SPACING = 0.02


class BoostWeightBound(BaseModel):
    """Lattice maxima of m_s and 1/m_s against 2<nu>^{|2s-1|}."""

    nu: float
    s: float
    max_weight: float
    max_inverse_weight: float
    bound: float
    ratio_lower: float
    ratio_upper: float
    within_bound: bool


def boost_weight_bound(grid: GridSpec, nu: float, s: float) -> BoostWeightBound:
    """m_s(xi) = (<l_nu xi>/<xi>)^(2s-1) over the frequency lattice."""
    xi = grid.frequencies
    ratio = bracket(freq_map(xi, nu)) / bracket(xi)
    weight = ratio ** (2.0 * s - 1.0)
    g = float(bracket(nu))
    bound = 2.0 * g ** abs(2.0 * s - 1.0)
    lower, upper = g - abs(nu), g + abs(nu)
    # Small slack for rounding in the ratio
    slack = 1e-12
    within = bool(
        weight.max() <= bound * (1 + slack)
        and (1.0 / weight).max() <= bound * (1 + slack)
        and ratio.min() >= lower * (1 - slack)
        and ratio.max() <= upper * (1 + slack)
    )
    return BoostWeightBound(
        nu=nu,
        s=s,
        max_weight=float(weight.max()),
        max_inverse_weight=float((1.0 / weight).max()),
        bound=bound,
        ratio_lower=float(ratio.min()),
        ratio_upper=float(ratio.max()),
        within_bound=within,
    )


def _relative_max(a: np.ndarray, b: np.ndarray) -> float:
    scale = np.abs(a).max(initial=0.0)
    diff = np.abs(a - b).max(initial=0.0)
    return float(diff / scale) if scale > 0 else float(diff)


def commutation_defect(f: SpectralField, nu: float, tau: float, y: float) -> float:
    """
    Relative max-norm gap between the two sides of

        boost_{-nu} T_y e^{i tau <d>} f  =  T_y' e^{i tau' <d>} boost_{-nu} f

    with (tau', y') = L_nu(tau, y).
    """
    lhs = boost(translate(free_kg_propagate(f, -tau), y), -nu)
    tau_b, y_b = lorentz_map(tau, y, nu)
    rhs = translate(free_kg_propagate(boost(f, -nu), -float(tau_b)), float(y_b))
    return _relative_max(lhs.values, rhs.values)


def intertwining_defect(f: SpectralField, nu: float, t: float, spacing: float = SNAPSHOT_SPACING) -> float:
    """
    Relative max-norm gap between e^{-it<d>} boost_{-nu} f on the grid and the
    free solution e^{-i s<d>} f sampled at L_{-nu}(t, x_j).

    The free solution is reconstructed from snapshots by spacetime interpolation.
    """
    grid = f.grid
    lhs = free_kg_propagate(boost(f, -nu), t).values

    tau, pos = lorentz_map(t, grid.x, -nu)
    t_lo = float(tau.min()) - 2 * spacing
    t_hi = float(tau.max()) + 2 * spacing
    count = int(np.ceil((t_hi - t_lo) / spacing)) + 1
    times = np.linspace(t_lo, t_hi, max(count, 4))
    samples = np.stack([free_kg_propagate(f, s).values for s in times])
    interp = SnapshotInterpolator(grid, times, samples)
    rhs = interp(tau, pos)
    return _relative_max(lhs, rhs)
