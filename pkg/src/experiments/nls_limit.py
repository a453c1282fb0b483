"""Nonrelativistic limit: Klein-Gordon bubbles against the mass-critical NLS."""

from typing import List, Optional, Sequence

import numpy as np
import structlog
from scipy.integrate import trapezoid

from src.dynamics import (
    EvolutionConfig,
    NLSSolution,
    NonlinearitySpec,
    PairState,
    Trajectory,
    evolve,
    from_first_order,
    nls_evolve,
)
from src.exceptions import InvalidInputError
from src.observables import scaling_profile_bounds
from src.observables.norms import weighted_field
from src.spectral_core import GridSpec, SpectralField, low_pass
from src.symmetry_ops import boost, free_kg_propagate, scale, translate

from .models import ExperimentReport, Flag, NLSLimitParams
from .sweep import SweepPool

logger = structlog.get_logger(__name__)

DEFAULT_LAMBDAS = (4.0, 8.0, 16.0)

# Rescaled comparison window t / lam^2 in [0, WINDOW]
WINDOW = 2.0
RESOLUTION_TOL = 5e-2
DT_HALVING_TOL = 1e-2


def bubble_field(p: NLSLimitParams, grid: Optional[GridSpec] = None) -> SpectralField:
    """
    T_{x_n} e^{i t_n <d>} L_nu D_lam P_{<=lam^theta} phi, applied right to left.

    The target grid defaults to the profile grid stretched by lam, on which
    D_lam samples phi exactly at its own nodes.
    """
    grid = grid or p.profile.grid.scaled(p.lam)
    field = low_pass(p.profile, p.frequency_cut)
    field = scale(field, p.lam, target=grid)
    if p.nu != 0.0:
        field = boost(field, p.nu)
    if p.t_shift != 0.0:
        field = free_kg_propagate(field, -p.t_shift)
    if p.x_shift != 0.0:
        field = translate(field, p.x_shift)
    return field


def build_bubble(p: NLSLimitParams, grid: Optional[GridSpec] = None) -> PairState:
    """Second-order data (Re v, <d> Im v) of the bubble v."""
    return from_first_order(bubble_field(p, grid))


def _nls_sign(spec: NonlinearitySpec) -> int:
    if spec.is_linear:
        raise InvalidInputError("the NLS limit needs a nonlinear equation")
    return spec.sign


def limit_discrepancy(traj: Trajectory, sol: NLSSolution, lam: float, s: float, step: int = 1) -> float:
    """
    ||<d>^{s-1/2} Re(u - e^{-it} lam^{-1/2} w(t/lam^2, x/lam))||_{L^6_{t,x}}.

    Snapshot i of the Klein-Gordon run sits at lam^2 times the NLS snapshot
    time and the NLS grid is the Klein-Gordon grid shrunk by lam, so samples
    align index by index. step > 1 thins both series.
    """
    grid = traj.grid
    times = traj.times
    if len(sol.times) != times.shape[0]:
        raise InvalidInputError("Klein-Gordon and NLS snapshots do not align")
    picked = list(range(0, times.shape[0], step))
    if picked[-1] != times.shape[0] - 1:
        picked.append(times.shape[0] - 1)

    integrand = []
    for i in picked:
        t = times[i]
        comparison = (np.exp(-1j * t) * sol.fields[i] / np.sqrt(lam)).real
        gap = weighted_field(traj.snapshots[i].u - comparison, grid, s)
        integrand.append(grid.dx * np.sum(np.abs(gap) ** 6))
    if len(picked) < 2:
        return 0.0
    return float(trapezoid(np.array(integrand), times[picked]) ** (1.0 / 6.0))


class _LimitPoint:
    """One lam of the sweep: Klein-Gordon bubble and its NLS comparison."""

    def __init__(self, profile, spec, dt_nls, stride, s, check_dt_halving):
        self.profile = profile
        self.spec = spec
        self.dt_nls = dt_nls
        self.stride = stride
        self.s = s
        self.check_dt_halving = check_dt_halving

    def _discrepancy(self, lam: float, dt_nls: float, stride: int) -> dict:
        params = NLSLimitParams(lam=lam, profile=self.profile, s=self.s)
        state = build_bubble(params)
        w0 = low_pass(self.profile, params.frequency_cut)

        sol = nls_evolve(w0, dt_nls, WINDOW, _nls_sign(self.spec), snapshot_stride=stride)
        config = EvolutionConfig(dt=dt_nls * lam**2, t_final=WINDOW * lam**2, snapshot_stride=stride)
        traj = evolve(state, config, self.spec)

        initial = (sol.fields[0] / np.sqrt(lam)).real
        return {
            "discrepancy": limit_discrepancy(traj, sol, lam, self.s),
            "discrepancy_half_snapshots": limit_discrepancy(traj, sol, lam, self.s, step=2),
            "initial_mismatch": float(np.abs(traj.snapshots[0].u - initial).max()),
        }

    def __call__(self, lam: float) -> dict:
        out = {"lambda": lam, **self._discrepancy(lam, self.dt_nls, self.stride)}
        fine, coarse = out["discrepancy"], out["discrepancy_half_snapshots"]
        out["resolution_change"] = abs(fine - coarse) / fine if fine > 0 else abs(coarse)
        if self.check_dt_halving:
            halved = self._discrepancy(lam, 0.5 * self.dt_nls, 2 * self.stride)["discrepancy"]
            out["discrepancy_dt_halved"] = halved
            out["dt_halving_change"] = abs(fine - halved) / fine if fine > 0 else abs(halved)
        return out


def run_nls_limit(
    profile: SpectralField,
    spec: NonlinearitySpec,
    lambdas: Sequence[float] = DEFAULT_LAMBDAS,
    s: float = 0.6,
    dt_nls: float = 1e-4,
    snapshot_stride: int = 100,
    check_dt_halving: bool = False,
    pool: Optional[SweepPool] = None,
) -> ExperimentReport:
    """
    Discrepancy between Klein-Gordon bubbles and rescaled NLS solutions over
    t / lam^2 in [0, 2] for each lam; flags a strictly decreasing trend.
    """
    _nls_sign(spec)
    lambdas = sorted(lambdas)
    pool = pool or SweepPool()
    point = _LimitPoint(profile, spec, dt_nls, snapshot_stride, s, check_dt_halving)
    points: List[dict] = pool.map("nls_limit", point, lambdas)

    report = ExperimentReport(
        name="nls_limit",
        inputs={
            "half_length": profile.grid.half_length,
            "n_points": profile.grid.n_points,
            "nonlinearity": spec.kind.value,
            "lambdas": lambdas,
            "theta": NLSLimitParams.model_fields["theta"].default,
            "window": WINDOW,
            "s": s,
            "dt_nls": dt_nls,
            "snapshot_stride": snapshot_stride,
        },
    )
    for p in points:
        tag = f"[lambda={p['lambda']:g}]"
        report.results[f"lambda{tag}"] = p
        report.flag(Flag.at_most(f"snapshot_resolution{tag}", p["resolution_change"], RESOLUTION_TOL))
        if check_dt_halving:
            report.flag(Flag.at_most(f"dt_halving{tag}", p["dt_halving_change"], DT_HALVING_TOL))

    values = [p["discrepancy"] for p in points]
    report.results["discrepancies"] = values
    report.flag(Flag.holds("discrepancy_decreasing", all(b < a for a, b in zip(values, values[1:]))))

    ratios = scaling_profile_bounds(profile, lambdas, NLSLimitParams.model_fields["theta"].default, 1.0)
    report.results["truncation_ratios"] = ratios
    report.flag(Flag.at_most("truncation_ratio_max", max(ratios) if ratios else 0.0, 1.0 + 1e-12))

    logger.info("nls_limit_report", discrepancies=values, passed=report.all_passed)
    return report
