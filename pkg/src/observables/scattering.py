"""Extraction of the asymptotic free state v_+ from a trajectory."""

from typing import Sequence, Tuple

import numpy as np
import structlog

from src.dynamics import Trajectory, to_first_order
from src.exceptions import InvalidInputError
from src.spectral_core import SpectralField, sobolev_norm
from src.symmetry_ops import free_kg_propagate

from .models import ScatteringReport

logger = structlog.get_logger(__name__)

DEFAULT_CHECKPOINTS = (20.0, 30.0, 40.0, 50.0)

# Increments within this absolute level count as equal when testing monotonicity
MONOTONE_SLACK = 1e-12


def pulled_back(traj: Trajectory, t: float) -> Tuple[float, SpectralField]:
    """e^{it<d>} v(t) at the snapshot nearest t; returns the snapshot time too."""
    snap = traj.nearest(t)
    return snap.t, free_kg_propagate(to_first_order(snap), -snap.t)


def scattering_state(
    traj: Trajectory, checkpoints: Sequence[float] = DEFAULT_CHECKPOINTS
) -> Tuple[SpectralField, ScatteringReport]:
    """
    Candidate v_+ and the H^1 Cauchy increments between consecutive checkpoints.

    Checkpoints are matched to the nearest stored snapshot and sorted by |t|, so
    negative checkpoints extract v_- from a backward run. Non-convergence is
    reported, not raised.
    """
    if len(checkpoints) == 0:
        raise InvalidInputError("at least one checkpoint time is required")
    t_lo, t_hi = traj.t_span
    for t in checkpoints:
        if not t_lo <= t <= t_hi:
            raise InvalidInputError(f"checkpoint t={t} outside trajectory span [{t_lo}, {t_hi}]")

    ordered = sorted(checkpoints, key=abs)
    pulled = [pulled_back(traj, t) for t in ordered]
    snapshot_times = [t for t, _ in pulled]
    increments = [
        sobolev_norm(b.with_values(b.values - a.values), 1.0)
        for (_, a), (_, b) in zip(pulled, pulled[1:])
    ]
    monotone = all(
        later <= earlier + MONOTONE_SLACK for earlier, later in zip(increments, increments[1:])
    )
    v_plus = pulled[-1][1]
    report = ScatteringReport(
        checkpoint_times=[float(t) for t in ordered],
        snapshot_times=snapshot_times,
        increments=increments,
        monotone=monotone,
        v_plus_h1=sobolev_norm(v_plus, 1.0),
    )
    logger.info(
        "scattering_state_extracted",
        checkpoints=len(ordered),
        last_increment=increments[-1] if increments else None,
        monotone=monotone,
    )
    return v_plus, report


def free_tracking_error(traj: Trajectory, v_plus: SpectralField, t: float) -> float:
    """||v(t) - e^{-it<d>} v_+||_{H^1} at the snapshot nearest t."""
    snap = traj.nearest(t)
    gap = to_first_order(snap).values - free_kg_propagate(v_plus, snap.t).values
    return sobolev_norm(v_plus.with_values(gap), 1.0)
