"""Per-snapshot monitor series of a trajectory."""

from typing import Optional

from src.dynamics import Trajectory
from src.spectral_core import SpectralField, lebesgue_norm, sobolev_norm

from .functionals import energy, mass, momentum
from .models import ObservableSeries, VirialConfig
from .norms import strichartz_s6
from .virial import center_value, virial_value


def observable_series(
    traj: Trajectory, virial_cfg: Optional[VirialConfig] = None, s: float = 0.5
) -> ObservableSeries:
    """
    E, M, P, max|u|, ||u||_{H^1}, cumulative S^6, V_R and X_R per snapshot.

    R defaults to a quarter of the half-length so the cutoff stays inside the box.
    """
    grid = traj.grid
    spec = traj.nonlinearity
    cfg = virial_cfg or VirialConfig(R=grid.half_length / 4.0)
    strichartz = strichartz_s6(traj, s)

    fields = [SpectralField(grid=grid, values=snap.u) for snap in traj.snapshots]
    return ObservableSeries(
        times=traj.times.tolist(),
        energy=[energy(snap, spec) for snap in traj.snapshots],
        mass=[mass(snap) for snap in traj.snapshots],
        momentum=[momentum(snap) for snap in traj.snapshots],
        linf=[lebesgue_norm(f, float("inf")) for f in fields],
        h1=[sobolev_norm(f, 1.0) for f in fields],
        s6_cumulative=strichartz.cumulative,
        v_r=[virial_value(snap, cfg) for snap in traj.snapshots],
        x_r=[center_value(snap, cfg, spec) for snap in traj.snapshots],
    )
