"""Experiment drivers: sweeps, reports and the verification batteries."""

from .models import (
    BUBBLE_THETA,
    NLSLimitParams,
    Comparison,
    Flag,
    ExperimentReport,
    to_builtin,
    SweepStatus,
    SweepTask,
    SweepSummary,
)
from .sweep import SweepPool
from .profiles import ProfileKind, ProfileSpec, build_initial_data, unit_mass_gaussian, unit_perturbation
from .scattering import run_scattering
from .nls_limit import bubble_field, build_bubble, run_nls_limit
from .threshold import run_threshold
from .stability import run_twin_stability
from .soliton_death import run_soliton_death_monitors
from .batteries import run_identity_battery, run_symmetry_battery, run_decay_battery, run_simulation

__all__ = [
    "BUBBLE_THETA",
    "NLSLimitParams",
    "Comparison",
    "Flag",
    "ExperimentReport",
    "to_builtin",
    "SweepStatus",
    "SweepTask",
    "SweepSummary",
    "SweepPool",
    "ProfileKind",
    "ProfileSpec",
    "build_initial_data",
    "unit_mass_gaussian",
    "unit_perturbation",
    "run_scattering",
    "bubble_field",
    "build_bubble",
    "run_nls_limit",
    "run_threshold",
    "run_twin_stability",
    "run_soliton_death_monitors",
    "run_identity_battery",
    "run_symmetry_battery",
    "run_decay_battery",
    "run_simulation",
]
