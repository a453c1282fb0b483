"""Experiment parameters, reports and sweep bookkeeping."""

from datetime import datetime, timezone
from enum import Enum
from typing import Any, Dict, List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from src.observables import ObservableSeries
from src.spectral_core import SpectralField

# Frequency-cut exponent of the NLS bubble construction
BUBBLE_THETA = 0.01


def _now() -> datetime:
    return datetime.now(timezone.utc)


# ─────────────────────────────────────────────────────────────────────────────
# NLS limit
# ─────────────────────────────────────────────────────────────────────────────


class NLSLimitParams(BaseModel):
    """
    Parameters of one bubble T_x e^{it<d>} L_nu D_lam P_{<=lam^theta} phi.

    theta is fixed at 1/100; lam >= 1.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    lam: float = Field(ge=1.0)
    nu: float = 0.0
    t_shift: float = 0.0
    x_shift: float = 0.0
    theta: float = BUBBLE_THETA
    profile: SpectralField
    s: float = 0.6

    @field_validator("theta")
    @classmethod
    def _theta_fixed(cls, v: float) -> float:
        if v != BUBBLE_THETA:
            raise ValueError(f"theta is fixed at {BUBBLE_THETA}")
        return v

    @property
    def frequency_cut(self) -> float:
        return self.lam**self.theta


# ─────────────────────────────────────────────────────────────────────────────
# Reports
# ─────────────────────────────────────────────────────────────────────────────


class Comparison(str, Enum):
    """How a flag's value is tested against its tolerance."""
    AT_MOST = "<="
    AT_LEAST = ">="


class Flag(BaseModel):
    """A pass/fail verdict together with the tolerance behind it."""

    name: str
    passed: bool
    value: float
    tolerance: float
    comparison: Comparison = Comparison.AT_MOST

    @classmethod
    def at_most(cls, name: str, value: float, tolerance: float) -> "Flag":
        value = float(value)
        return cls(name=name, passed=bool(value <= tolerance), value=value, tolerance=tolerance)

    @classmethod
    def at_least(cls, name: str, value: float, tolerance: float) -> "Flag":
        value = float(value)
        return cls(
            name=name,
            passed=bool(value >= tolerance),
            value=value,
            tolerance=tolerance,
            comparison=Comparison.AT_LEAST,
        )

    @classmethod
    def holds(cls, name: str, condition: bool) -> "Flag":
        """Boolean verdict encoded as value 1/0 against tolerance 1."""
        return cls.at_least(name, 1.0 if condition else 0.0, 1.0)


class ExperimentReport(BaseModel):
    """
    Outcome of one experiment run.

    Responsibilities:
    - Echo the inputs that produced it
    - Hold scalar results and pass/fail flags with their tolerances
    - Carry the monitor series written to CSV (excluded from dumps)
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    name: str
    inputs: Dict[str, Any] = Field(default_factory=dict)
    results: Dict[str, Any] = Field(default_factory=dict)
    flags: List[Flag] = Field(default_factory=list)
    series_files: List[str] = Field(default_factory=list)
    series: Optional[ObservableSeries] = Field(default=None, exclude=True)

    def flag(self, flag: Flag) -> Flag:
        self.flags.append(flag)
        return flag

    @property
    def all_passed(self) -> bool:
        return all(f.passed for f in self.flags)

    @property
    def failed_flags(self) -> List[Flag]:
        return [f for f in self.flags if not f.passed]

    def tolerances(self) -> Dict[str, float]:
        return {f.name: f.tolerance for f in self.flags}


def to_builtin(value: Any) -> Any:
    """numpy scalars and arrays to plain Python for JSON output."""
    if isinstance(value, dict):
        return {str(k): to_builtin(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_builtin(v) for v in value]
    if isinstance(value, np.ndarray):
        return to_builtin(value.tolist())
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, Enum):
        return value.value
    return value


# ─────────────────────────────────────────────────────────────────────────────
# Sweeps
# ─────────────────────────────────────────────────────────────────────────────


class SweepStatus(str, Enum):
    """Status of a sweep point."""
    PENDING = "pending"
    IN_PROGRESS = "in_progress"
    COMPLETED = "completed"
    FAILED = "failed"


class SweepTask(BaseModel):
    """One point of a parameter sweep."""

    index: int                            # submission order
    label: str
    status: SweepStatus = SweepStatus.PENDING

    progress_pct: int = 0                 # 0-100

    created_at: datetime = Field(default_factory=_now)
    started_at: Optional[datetime] = None
    completed_at: Optional[datetime] = None

    error_message: Optional[str] = None

    def start(self):
        """Mark task as started."""
        self.status = SweepStatus.IN_PROGRESS
        self.started_at = _now()
        self.progress_pct = 0

    def complete(self):
        """Mark task as completed."""
        self.status = SweepStatus.COMPLETED
        self.completed_at = _now()
        self.progress_pct = 100

    def fail(self, error: str):
        """Mark task as failed."""
        self.status = SweepStatus.FAILED
        self.completed_at = _now()
        self.error_message = error

    @property
    def duration_seconds(self) -> Optional[float]:
        if not self.started_at:
            return None
        end = self.completed_at or _now()
        return (end - self.started_at).total_seconds()

    @property
    def is_active(self) -> bool:
        return self.status in (SweepStatus.PENDING, SweepStatus.IN_PROGRESS)


class SweepSummary(BaseModel):
    """Counts of sweep tasks by status."""

    total: int = 0
    pending: int = 0
    in_progress: int = 0
    completed: int = 0
    failed: int = 0
