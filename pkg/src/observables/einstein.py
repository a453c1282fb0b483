"""Einstein relation for Lorentz-boosted solutions."""

from typing import Optional

import numpy as np
import structlog

from src.dynamics import PairState, Trajectory
from src.exceptions import SlabEscapeError
from src.spectral_core import SnapshotInterpolator, SpectralField, bracket, derivative

from .functionals import energy, momentum
from .models import EinsteinResult

logger = structlog.get_logger(__name__)


def boosted_slice(traj: Trajectory, nu: float, x_window: Optional[float] = None) -> PairState:
    """
    Data of u o L_nu on its t = 0 slice.

    u_nu(0, x) = u(-nu x, <nu> x) and d_t u_nu(0, x) = <nu> u_t - nu u_x
    there. Points with |x| > x_window are set to zero; the default window
    keeps <nu> x inside the box.
    """
    grid = traj.grid
    if nu == 0.0:
        snap = traj.nearest(0.0)
        if snap.t != 0.0:
            raise SlabEscapeError("trajectory has no snapshot at t = 0")
        return PairState(grid=grid, u=snap.u, ut=snap.ut)

    g = float(bracket(nu))
    window = grid.half_length / g if x_window is None else x_window
    inside = np.abs(grid.x) <= window
    x = grid.x[inside]
    t_needed = -nu * x
    t_lo, t_hi = traj.t_span
    if t_needed.min() < t_lo or t_needed.max() > t_hi:
        raise SlabEscapeError(
            f"boost nu={nu} needs t in [{t_needed.min():.4g}, {t_needed.max():.4g}], "
            f"trajectory covers [{t_lo:.4g}, {t_hi:.4g}]"
        )

    times = traj.times
    ux_samples = np.stack(
        [derivative(SpectralField(grid=grid, values=s.u)).values.real for s in traj.snapshots]
    )
    pos = g * x
    u_val = SnapshotInterpolator(grid, times, traj.u_array())(t_needed, pos).real
    ut_val = SnapshotInterpolator(grid, times, traj.ut_array())(t_needed, pos).real
    ux_val = SnapshotInterpolator(grid, times, ux_samples)(t_needed, pos).real

    u = np.zeros(grid.n_points)
    ut = np.zeros(grid.n_points)
    u[inside] = u_val
    ut[inside] = g * ut_val - nu * ux_val
    return PairState(grid=grid, u=u, ut=ut)


def einstein_check(traj: Trajectory, nu: float, x_window: Optional[float] = None) -> EinsteinResult:
    """
    Compare (E, P) of the boosted slice with L_{-nu}(E, P).

    The defect is the larger relative gap of the two components, measured
    against the size of the predicted pair.
    """
    spec = traj.nonlinearity
    base = traj.nearest(0.0)
    e0, p0 = energy(base, spec), momentum(base)

    sliced = boosted_slice(traj, nu, x_window)
    e_nu, p_nu = energy(sliced, spec), momentum(sliced)

    g = float(bracket(nu))
    e_pred = g * e0 + nu * p0
    p_pred = g * p0 + nu * e0
    scale = max(abs(e_pred), abs(p_pred))
    gap = max(abs(e_nu - e_pred), abs(p_nu - p_pred))
    defect = gap / scale if scale > 0 else gap

    logger.info("einstein_check", nu=nu, defect=defect)
    return EinsteinResult(
        nu=nu,
        energy=e0,
        momentum=p0,
        energy_boosted=e_nu,
        momentum_boosted=p_nu,
        energy_predicted=e_pred,
        momentum_predicted=p_pred,
        defect=defect,
        invariant=e0**2 - p0**2,
        invariant_boosted=e_nu**2 - p_nu**2,
    )
