"""Klein-Gordon and mass-critical NLS time evolution."""

from .models import (
    NonlinearityKind,
    NonlinearitySpec,
    DealiasMode,
    EvolutionConfig,
    PairState,
    Trajectory,
    NLSSolution,
)
from .nonlinearity import eval_nonlinearity, eval_potential_density, OVERFLOW_GUARD
from .integrator import (
    KleinGordonIntegrator,
    kg_step,
    evolve,
    evolve_two_sided,
    to_first_order,
    from_first_order,
    spectral_filter,
)
from .nls import nls_step, nls_evolve, nls_energy, standing_wave, ground_state_profile

__all__ = [
    "NonlinearityKind",
    "NonlinearitySpec",
    "DealiasMode",
    "EvolutionConfig",
    "PairState",
    "Trajectory",
    "NLSSolution",
    "eval_nonlinearity",
    "eval_potential_density",
    "OVERFLOW_GUARD",
    "KleinGordonIntegrator",
    "kg_step",
    "evolve",
    "evolve_two_sided",
    "to_first_order",
    "from_first_order",
    "spectral_filter",
    "nls_step",
    "nls_evolve",
    "nls_energy",
    "standing_wave",
    "ground_state_profile",
]
