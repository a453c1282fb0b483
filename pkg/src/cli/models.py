"""Scenario configuration and dispatch outcome."""

from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

from src.dynamics import DealiasMode, EvolutionConfig, NonlinearityKind, NonlinearitySpec
from src.experiments import ExperimentReport, ProfileKind, ProfileSpec
from src.observables import S_MAX, S_MIN
from src.spectral_core import GridSpec


class Experiment(str, Enum):
    """Subcommands; each names one experiment driver."""
    SIMULATE = "simulate"
    SCATTERING = "scattering"
    NLS_LIMIT = "nls-limit"
    THRESHOLD = "threshold"
    STABILITY = "stability"
    SOLITON_DEATH = "soliton-death"
    SYMMETRY_CHECK = "symmetry-check"
    DECAY_FIT = "decay-fit"
    IDENTITIES = "identities"


# Keys holding comma-separated number lists in scenario files
LIST_FIELDS = ("amplitudes", "lambdas", "deltas", "radii", "checkpoints", "exponents")


class ScenarioConfig(BaseModel):
    """
    One scenario file, fully defaulted.

    Unknown keys are rejected; list fields accept "1, 2.5, inf".
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    experiment: Experiment = Experiment.SIMULATE

    # Grid
    half_length: float = Field(default=100.0, gt=0)
    n_points: int = 2048

    # Time stepping
    dt: float = Field(default=1e-3, gt=0)
    t_final: float = 10.0
    snapshot_stride: int = Field(default=10, ge=1)
    dealias: DealiasMode = DealiasMode.EXP_FILTER
    order: int = 2
    blowup_linf_threshold: float = Field(default=10.0, gt=0)

    nonlinearity: NonlinearityKind = NonlinearityKind.DEFOCUSING_EXP
    s: float = 0.6

    # Initial data
    profile: ProfileKind = ProfileKind.GAUSSIAN
    amplitude: float = 1.0
    width: float = Field(default=1.0, gt=0)
    center: float = 0.0
    velocity: float = 0.0
    sample_path: Optional[str] = None

    # Sweeps
    amplitudes: List[float] = Field(default_factory=lambda: [1.0])
    lambdas: List[float] = Field(default_factory=lambda: [4.0, 8.0, 16.0])
    deltas: List[float] = Field(default_factory=lambda: [1e-3, 1e-2])
    radii: List[float] = Field(default_factory=lambda: [10.0])
    checkpoints: List[float] = Field(default_factory=lambda: [20.0, 30.0, 40.0, 50.0])
    exponents: List[float] = Field(default_factory=lambda: [6.0, float("inf")])

    # Symmetry check
    nu: float = 0.3
    mu: float = 0.2
    tau: float = 1.0
    shift: float = 2.0

    # NLS limit
    dt_nls: float = Field(default=1e-4, gt=0)
    check_dt_halving: bool = False

    # Threshold
    static_horizon: float = Field(default=2.0, gt=0)

    # Decay fit
    decay_t_min: float = Field(default=10.0, gt=0)
    decay_t_max: float = Field(default=100.0, gt=0)
    decay_samples: int = Field(default=12, ge=3)

    # Tolerances that scenarios may loosen
    energy_drift_tol: float = Field(default=1e-6, gt=0)

    seed: int = 0
    output_dir: Optional[str] = None

    @field_validator("n_points")
    @classmethod
    def _even(cls, v: int) -> int:
        if v % 2 != 0:
            raise ValueError("n_points must be even")
        if v < 8:
            raise ValueError("n_points must be >= 8")
        return v

    @field_validator("s")
    @classmethod
    def _s_in_range(cls, v: float) -> float:
        if not (S_MIN <= v < S_MAX):
            raise ValueError(f"s={v} outside the range [1/2, 11/12)")
        return v

    @field_validator("order")
    @classmethod
    def _order(cls, v: int) -> int:
        if v not in (2, 4):
            raise ValueError("order must be 2 or 4")
        return v

    @field_validator(*LIST_FIELDS, mode="before")
    @classmethod
    def _split_list(cls, v):
        if isinstance(v, str):
            items = [item.strip() for item in v.split(",")]
            if any(item == "" for item in items):
                raise ValueError(f"empty entry in list {v!r}")
            return [float(item) for item in items]
        return v

    @field_validator("amplitudes", "lambdas", "radii", "checkpoints", "exponents")
    @classmethod
    def _non_empty(cls, v: List[float]) -> List[float]:
        if not v:
            raise ValueError("list must not be empty")
        return v

    # ── Derived value objects ──

    @property
    def grid(self) -> GridSpec:
        return GridSpec(half_length=self.half_length, n_points=self.n_points)

    @property
    def evolution(self) -> EvolutionConfig:
        return EvolutionConfig(
            dt=self.dt,
            t_final=self.t_final,
            snapshot_stride=self.snapshot_stride,
            dealias=self.dealias,
            blowup_linf_threshold=self.blowup_linf_threshold,
            order=self.order,
        )

    @property
    def nonlinearity_spec(self) -> NonlinearitySpec:
        return NonlinearitySpec(kind=self.nonlinearity)

    @property
    def profile_spec(self) -> ProfileSpec:
        return ProfileSpec(
            kind=self.profile,
            amplitude=self.amplitude,
            width=self.width,
            center=self.center,
            velocity=self.velocity,
            path=self.sample_path,
        )


class DispatchResult(BaseModel):
    """Exit status of one dispatch with the files it wrote."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    exit_code: int
    report: Optional[ExperimentReport] = None
    files: List[str] = Field(default_factory=list)
    error: Optional[str] = None
