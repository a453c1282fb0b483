"""Uniform periodic grid, Fourier transforms and multipliers."""

from .models import GridSpec, SpectralField, MultiplierSymbol, ProjectionSign
from .transforms import (
    forward,
    inverse,
    bracket,
    apply_multiplier,
    smooth_cutoff,
    smooth_cutoff_derivatives,
    lp_project,
    low_pass,
    dyadic_levels,
    lebesgue_norm,
    sobolev_norm,
    derivative,
    spectral_tail_radius,
)
from .interpolation import evaluate_at, sample_spectrum, synthesize, SnapshotInterpolator

__all__ = [
    "GridSpec",
    "SpectralField",
    "MultiplierSymbol",
    "ProjectionSign",
    "forward",
    "inverse",
    "bracket",
    "apply_multiplier",
    "smooth_cutoff",
    "smooth_cutoff_derivatives",
    "lp_project",
    "low_pass",
    "dyadic_levels",
    "lebesgue_norm",
    "sobolev_norm",
    "derivative",
    "spectral_tail_radius",
    "evaluate_at",
    "sample_spectrum",
    "synthesize",
    "SnapshotInterpolator",
]
