"""Value types for Klein-Gordon and NLS evolution."""

from enum import Enum
from typing import List

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.spectral_core import GridSpec, SpectralField


# ─────────────────────────────────────────────────────────────────────────────
# Nonlinearity
# ─────────────────────────────────────────────────────────────────────────────


class NonlinearityKind(str, Enum):
    """Nonlinear term of u_tt - u_xx + u + N(u) = 0."""
    DEFOCUSING_EXP = "defocusing_exp"        # (exp(u^2) - 1 - u^2) u
    FOCUSING_EXP = "focusing_exp"            # -(exp(u^2) - 1 - u^2) u
    QUINTIC_DEFOCUSING = "quintic_defocusing"  # +u^5/2
    QUINTIC_FOCUSING = "quintic_focusing"      # -u^5/2
    LINEAR = "linear"


class NonlinearitySpec(BaseModel):
    """Selected nonlinearity."""

    model_config = ConfigDict(frozen=True)

    kind: NonlinearityKind = NonlinearityKind.DEFOCUSING_EXP

    @property
    def is_exponential(self) -> bool:
        return self.kind in (NonlinearityKind.DEFOCUSING_EXP, NonlinearityKind.FOCUSING_EXP)

    @property
    def is_linear(self) -> bool:
        return self.kind == NonlinearityKind.LINEAR

    @property
    def sign(self) -> int:
        """+1 defocusing, -1 focusing, 0 linear."""
        if self.kind in (NonlinearityKind.DEFOCUSING_EXP, NonlinearityKind.QUINTIC_DEFOCUSING):
            return 1
        if self.kind in (NonlinearityKind.FOCUSING_EXP, NonlinearityKind.QUINTIC_FOCUSING):
            return -1
        return 0


# ─────────────────────────────────────────────────────────────────────────────
# Evolution settings
# ─────────────────────────────────────────────────────────────────────────────


class DealiasMode(str, Enum):
    """Spectral filtering applied once per step."""
    TWO_THIRDS = "two_thirds"
    EXP_FILTER = "exp_filter"
    NONE = "none"


class EvolutionConfig(BaseModel):
    """
    Time-stepping parameters.

    t_final is absolute; when it lies before the initial time the evolution
    runs backward. dt <= 0.5/<xi_max> is the recommended accuracy bound; it
    is not enforced.
    """

    model_config = ConfigDict(frozen=True)

    dt: float = Field(default=1e-3, gt=0)
    t_final: float = 10.0
    snapshot_stride: int = Field(default=10, ge=1)
    dealias: DealiasMode = DealiasMode.EXP_FILTER
    blowup_linf_threshold: float = Field(default=10.0, gt=0)
    order: int = 2                    # 2: Strang, 4: triple-jump composition of Strang steps

    @field_validator("order")
    @classmethod
    def _supported_order(cls, v: int) -> int:
        if v not in (2, 4):
            raise ValueError("order must be 2 or 4")
        return v

    def recommended_dt(self, grid: GridSpec) -> float:
        return 0.5 / float(np.hypot(1.0, grid.xi_max))


# ─────────────────────────────────────────────────────────────────────────────
# States and trajectories
# ─────────────────────────────────────────────────────────────────────────────


def _real_array(v, name: str) -> np.ndarray:
    arr = np.asarray(v)
    if np.iscomplexobj(arr):
        if np.any(arr.imag != 0):
            raise ValueError(f"{name} must be real-valued")
        arr = arr.real
    arr = np.array(arr, dtype=np.float64, copy=True)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must be finite")
    arr.setflags(write=False)
    return arr


class PairState(BaseModel):
    """Second-order state (u, u_t) at time t."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    grid: GridSpec
    u: np.ndarray
    ut: np.ndarray
    t: float = 0.0

    @field_validator("u", mode="before")
    @classmethod
    def _u_real(cls, v) -> np.ndarray:
        return _real_array(v, "u")

    @field_validator("ut", mode="before")
    @classmethod
    def _ut_real(cls, v) -> np.ndarray:
        return _real_array(v, "ut")

    @model_validator(mode="after")
    def _lengths_match(self) -> "PairState":
        n = self.grid.n_points
        if self.u.shape[0] != n or self.ut.shape[0] != n:
            raise ValueError(f"u and ut must have {n} samples")
        return self

    @classmethod
    def zeros(cls, grid: GridSpec, t: float = 0.0) -> "PairState":
        return cls(grid=grid, u=np.zeros(grid.n_points), ut=np.zeros(grid.n_points), t=t)

    def scaled(self, amplitude: float) -> "PairState":
        return PairState(grid=self.grid, u=amplitude * self.u, ut=amplitude * self.ut, t=self.t)

    def time_reversed(self) -> "PairState":
        """(u, -u_t), the data of t -> -t."""
        return PairState(grid=self.grid, u=self.u, ut=-self.ut, t=-self.t)


class Trajectory(BaseModel):
    """Snapshots of one evolution, ordered by increasing time."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    snapshots: List[PairState]
    config: EvolutionConfig
    nonlinearity: NonlinearitySpec

    @model_validator(mode="after")
    def _times_increasing(self) -> "Trajectory":
        times = [s.t for s in self.snapshots]
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ValueError("snapshot times must be strictly increasing")
        return self

    @property
    def grid(self) -> GridSpec:
        return self.snapshots[0].grid

    @property
    def times(self) -> np.ndarray:
        return np.array([s.t for s in self.snapshots])

    @property
    def t_span(self) -> tuple:
        return self.snapshots[0].t, self.snapshots[-1].t

    def u_array(self) -> np.ndarray:
        return np.stack([s.u for s in self.snapshots])

    def ut_array(self) -> np.ndarray:
        return np.stack([s.ut for s in self.snapshots])

    def nearest(self, t: float) -> PairState:
        idx = int(np.argmin(np.abs(self.times - t)))
        return self.snapshots[idx]

    def subsample(self, step: int) -> "Trajectory":
        """Every step-th snapshot, always keeping the last one."""
        picked = self.snapshots[::step]
        if picked[-1] is not self.snapshots[-1]:
            picked = picked + [self.snapshots[-1]]
        return Trajectory(snapshots=picked, config=self.config, nonlinearity=self.nonlinearity)

    def window(self, t_lo: float, t_hi: float) -> "Trajectory":
        picked = [s for s in self.snapshots if t_lo <= s.t <= t_hi]
        return Trajectory(snapshots=picked, config=self.config, nonlinearity=self.nonlinearity)

    def joined(self, later: "Trajectory") -> "Trajectory":
        """Concatenate with a trajectory starting where this one ends."""
        tail = [s for s in later.snapshots if s.t > self.snapshots[-1].t]
        return Trajectory(
            snapshots=self.snapshots + tail, config=later.config, nonlinearity=self.nonlinearity
        )


class NLSSolution(BaseModel):
    """Snapshots (t, w) of a mass-critical NLS evolution."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    grid: GridSpec
    mu: int
    times: List[float]
    fields: List[np.ndarray]

    def field_at(self, index: int) -> SpectralField:
        return SpectralField(grid=self.grid, values=self.fields[index])
