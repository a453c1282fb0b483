"""Functionals, spacetime norms and monitors defined on solutions."""

from .models import (
    S_MIN,
    S_MAX,
    SERIES_COLUMNS,
    VirialConfig,
    DiagnosticsConfig,
    is_admissible,
    ObservableSeries,
    StrichartzResult,
    VirialSeries,
    CenterSeries,
    ScatteringReport,
    EinsteinResult,
    DecayFit,
    ThresholdValues,
    EquipartitionSeries,
)
from .functionals import (
    space_derivative,
    energy_density,
    energy,
    mass,
    momentum,
    energy_centroid,
    exterior_energy,
    scattering_data,
    potential_ratio_check,
    equipartition_series,
)
from .norms import (
    strichartz_s6,
    mixed_norm,
    refinement_change,
    dispersive_decay_fit,
    dyadic_increments,
    scaling_profile_bounds,
)
from .scattering import DEFAULT_CHECKPOINTS, scattering_state, free_tracking_error
from .einstein import boosted_slice, einstein_check
from .virial import virial_series, center_series, virial_value, virial_rate, center_value, center_rate
from .ground_state import ground_state, cos5_identity_check, complex_cos5_defect, nls_thresholds
from .series import observable_series

__all__ = [
    "S_MIN",
    "S_MAX",
    "SERIES_COLUMNS",
    "VirialConfig",
    "DiagnosticsConfig",
    "is_admissible",
    "ObservableSeries",
    "StrichartzResult",
    "VirialSeries",
    "CenterSeries",
    "ScatteringReport",
    "EinsteinResult",
    "DecayFit",
    "ThresholdValues",
    "EquipartitionSeries",
    "space_derivative",
    "energy_density",
    "energy",
    "mass",
    "momentum",
    "energy_centroid",
    "exterior_energy",
    "scattering_data",
    "potential_ratio_check",
    "equipartition_series",
    "strichartz_s6",
    "mixed_norm",
    "refinement_change",
    "dispersive_decay_fit",
    "dyadic_increments",
    "scaling_profile_bounds",
    "DEFAULT_CHECKPOINTS",
    "scattering_state",
    "free_tracking_error",
    "boosted_slice",
    "einstein_check",
    "virial_series",
    "center_series",
    "virial_value",
    "virial_rate",
    "center_value",
    "center_rate",
    "ground_state",
    "cos5_identity_check",
    "complex_cos5_defect",
    "nls_thresholds",
    "observable_series",
]
