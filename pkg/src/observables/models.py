"""Value types for functionals, diagnostics and monitor series."""

from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.spectral_core import smooth_cutoff, smooth_cutoff_derivatives

# Sobolev weight exponent range for spacetime norms
S_MIN = 0.5
S_MAX = 11.0 / 12.0


# ─────────────────────────────────────────────────────────────────────────────
# Configuration
# ─────────────────────────────────────────────────────────────────────────────


class VirialConfig(BaseModel):
    """Localization radius R; phi is the canonical bump evaluated at x/R."""

    model_config = ConfigDict(frozen=True)

    R: float = Field(gt=0)

    def phi(self, x: np.ndarray) -> np.ndarray:
        return smooth_cutoff(np.asarray(x, dtype=float) / self.R)

    def phi_derivatives(self, x: np.ndarray):
        """phi(y), phi'(y), phi''(y) at y = x/R (derivatives in y)."""
        return smooth_cutoff_derivatives(np.asarray(x, dtype=float) / self.R)


class DiagnosticsConfig(BaseModel):
    """Sobolev weight s and Strichartz-admissible pairs."""

    model_config = ConfigDict(frozen=True)

    s: float = 0.6
    admissible_pairs: List[Tuple[float, float]] = Field(default_factory=lambda: [(6.0, 6.0), (5.0, 10.0)])

    @field_validator("s")
    @classmethod
    def _s_in_range(cls, v: float) -> float:
        if not (S_MIN <= v < S_MAX):
            raise ValueError("s must lie in [1/2, 11/12)")
        return v

    @field_validator("admissible_pairs")
    @classmethod
    def _pairs_admissible(cls, v):
        for q, r in v:
            if not is_admissible(q, r):
                raise ValueError(f"(q, r) = ({q}, {r}) is not admissible: need 4 < q, 2 <= r < inf, 2/q + 1/r = 1/2")
        return v


def is_admissible(q: float, r: float) -> bool:
    """4 < q <= inf, 2 <= r < inf, 2/q + 1/r = 1/2."""
    if not (q > 4 and 2 <= r < np.inf):
        return False
    inv_q = 0.0 if q == np.inf else 1.0 / q
    return abs(2.0 * inv_q + 1.0 / r - 0.5) <= 1e-12


# ─────────────────────────────────────────────────────────────────────────────
# Series
# ─────────────────────────────────────────────────────────────────────────────


SERIES_COLUMNS = ["t", "energy", "mass", "momentum", "linf", "h1", "s6_cum", "v_r", "x_r"]


class ObservableSeries(BaseModel):
    """Per-snapshot functionals of a trajectory, aligned with times."""

    times: List[float]
    energy: List[float]
    mass: List[float]
    momentum: List[float]
    linf: List[float]
    h1: List[float]
    s6_cumulative: List[float]
    v_r: List[float]
    x_r: List[float]

    @model_validator(mode="after")
    def _aligned(self) -> "ObservableSeries":
        n = len(self.times)
        for name in ("energy", "mass", "momentum", "linf", "h1", "s6_cumulative", "v_r", "x_r"):
            if len(getattr(self, name)) != n:
                raise ValueError(f"series column {name} has {len(getattr(self, name))} entries, expected {n}")
        if any(b <= a for a, b in zip(self.times, self.times[1:])):
            raise ValueError("series times must be strictly increasing")
        return self

    def columns(self) -> dict:
        """Column name -> values, in CSV order."""
        return {
            "t": self.times,
            "energy": self.energy,
            "mass": self.mass,
            "momentum": self.momentum,
            "linf": self.linf,
            "h1": self.h1,
            "s6_cum": self.s6_cumulative,
            "v_r": self.v_r,
            "x_r": self.x_r,
        }


class StrichartzResult(BaseModel):
    """Weighted L^6_{t,x} norm with its cumulative sixth power."""

    value: float
    times: List[float]
    cumulative: List[float]


class VirialSeries(BaseModel):
    """V_R(t) and the analytic right-hand side of its derivative identity."""

    R: float
    times: List[float]
    v_r: List[float]
    dv_r: List[float]


class CenterSeries(BaseModel):
    """X_R(t), its analytic derivative and the exterior energy outside |x| > R."""

    R: float
    times: List[float]
    x_r: List[float]
    dx_r: List[float]
    exterior_energy: List[float]
    rate_constant: float


# ─────────────────────────────────────────────────────────────────────────────
# Reports
# ─────────────────────────────────────────────────────────────────────────────


class ScatteringReport(BaseModel):
    """Cauchy increments of back-propagated states at consecutive checkpoints."""

    checkpoint_times: List[float]
    snapshot_times: List[float]
    increments: List[float]
    monotone: bool
    v_plus_h1: float


class EinsteinResult(BaseModel):
    """(E, P) of a boosted slice against the Lorentz-transformed prediction."""

    nu: float
    energy: float
    momentum: float
    energy_boosted: float
    momentum_boosted: float
    energy_predicted: float
    momentum_predicted: float
    defect: float
    invariant: float
    invariant_boosted: float


class DecayFit(BaseModel):
    """Least-squares slope of log ||e^{-it<d>} f||_{L^p} against log t."""

    p: float
    slope: float
    expected: float
    times: List[float]
    norms: List[float]


class ThresholdValues(BaseModel):
    """Mass and energy thresholds built from Q."""

    mass_q: float
    kg_mass_threshold: float
    nls_mass_threshold: float
    nls_mass_threshold_direct: float
    static_energy: float
    static_mass: float


class EquipartitionSeries(BaseModel):
    """d/dt int u u_t measured by differences against its identity."""

    times: List[float]
    measured: List[float]
    predicted: List[float]
    max_relative_residual: Optional[float] = None
