"""Translations, Lorentz boosts, scaling and free propagators."""

from .models import BoostParam, SpacetimePoint
from .operators import (
    translate,
    freq_map,
    boost,
    boost_nu_max,
    compose_boost_parameter,
    scale,
    free_kg_propagate,
    free_schrodinger_propagate,
    lorentz_map,
    spacetime_boost,
    kg_s_symbol_gap,
)
from .checks import (
    BoostWeightBound,
    boost_weight_bound,
    commutation_defect,
    intertwining_defect,
)

__all__ = [
    "BoostParam",
    "SpacetimePoint",
    "translate",
    "freq_map",
    "boost",
    "boost_nu_max",
    "compose_boost_parameter",
    "scale",
    "free_kg_propagate",
    "free_schrodinger_propagate",
    "lorentz_map",
    "spacetime_boost",
    "kg_s_symbol_gap",
    "BoostWeightBound",
    "boost_weight_bound",
    "commutation_defect",
    "intertwining_defect",
]
