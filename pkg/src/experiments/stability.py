"""Twin runs: response of the flow to small perturbations of the data."""

from typing import List, Optional, Sequence

import numpy as np
import structlog
from scipy.integrate import trapezoid

from src.dynamics import EvolutionConfig, NonlinearitySpec, PairState, Trajectory, evolve, to_first_order
from src.exceptions import InvalidInputError
from src.observables.norms import weighted_field
from src.spectral_core import SpectralField, sobolev_norm

from .models import ExperimentReport, Flag
from .profiles import unit_perturbation
from .sweep import SweepPool

logger = structlog.get_logger(__name__)

DEFAULT_DELTAS = (1e-3, 1e-2)
# Response ratio must lie within this factor of the data ratio
RESPONSE_FACTOR = 3.0


def sup_distance(a: Trajectory, b: Trajectory, s: float) -> float:
    """sup_t ||v_a(t) - v_b(t)||_{H^s} of the first-order fields."""
    out = 0.0
    for sa, sb in zip(a.snapshots, b.snapshots):
        gap = to_first_order(sa).values - to_first_order(sb).values
        out = max(out, sobolev_norm(SpectralField(grid=sa.grid, values=gap), s))
    return out


def weighted_l6_distance(a: Trajectory, b: Trajectory, s: float) -> float:
    """||<d>^{s-1/2}(u_a - u_b)||_{L^6_{t,x}} by the trapezoid rule in t."""
    grid = a.grid
    integrand = np.array(
        [grid.dx * np.sum(np.abs(weighted_field(sa.u - sb.u, grid, s)) ** 6) for sa, sb in zip(a.snapshots, b.snapshots)]
    )
    if integrand.shape[0] < 2:
        return 0.0
    return float(trapezoid(integrand, a.times) ** (1.0 / 6.0))


def run_twin_stability(
    base: PairState,
    spec: NonlinearitySpec,
    config: EvolutionConfig,
    deltas: Sequence[float] = DEFAULT_DELTAS,
    s: float = 0.6,
    pool: Optional[SweepPool] = None,
) -> ExperimentReport:
    """
    Evolve base and base + delta g with g a fixed unit H^s bump.

    Reports sup_t H^s and weighted L^6 distances per delta and flags
    at-most-linear growth: consecutive response ratios lie within a factor
    of three of the delta ratios.
    """
    base_norm = sobolev_norm(SpectralField(grid=base.grid, values=base.u), s)
    for d in deltas:
        if d < 0:
            raise InvalidInputError(f"perturbation size must be non-negative, got {d}")
        if base_norm > 0 and d > 0.1 * base_norm:
            raise InvalidInputError(f"delta={d} exceeds 0.1 of the base H^s norm {base_norm:.6g}")

    direction = unit_perturbation(base.grid, s)
    pool = pool or SweepPool()
    reference = evolve(base, config, spec)

    def twin(delta: float) -> dict:
        perturbed = PairState(grid=base.grid, u=base.u + delta * direction.u, ut=base.ut, t=base.t)
        traj = evolve(perturbed, config, spec)
        return {
            "delta": delta,
            "sup_hs_distance": sup_distance(reference, traj, s),
            "l6_distance": weighted_l6_distance(reference, traj, s),
        }

    points: List[dict] = pool.map("stability", twin, list(deltas))
    report = ExperimentReport(
        name="stability",
        inputs={
            "half_length": base.grid.half_length,
            "n_points": base.grid.n_points,
            "nonlinearity": spec.kind.value,
            "deltas": list(deltas),
            "s": s,
            "base_hs_norm": base_norm,
            "evolution": config.model_dump(mode="json"),
        },
    )
    for p in points:
        report.results[f"delta[{p['delta']:g}]"] = p

    positive = [p for p in points if p["delta"] > 0]
    for lo, hi in zip(positive, positive[1:]):
        tag = f"[{lo['delta']:g}->{hi['delta']:g}]"
        data_ratio = hi["delta"] / lo["delta"]
        if lo["sup_hs_distance"] == 0.0:
            continue
        response_ratio = hi["sup_hs_distance"] / lo["sup_hs_distance"]
        report.results[f"response_ratio{tag}"] = response_ratio
        report.flag(Flag.at_least(f"response_ratio_lower{tag}", response_ratio, data_ratio / RESPONSE_FACTOR))
        report.flag(Flag.at_most(f"response_ratio_upper{tag}", response_ratio, data_ratio * RESPONSE_FACTOR))

    logger.info("stability_report", deltas=len(points), passed=report.all_passed)
    return report
