"""Value types for the symmetry group."""

import numpy as np
from pydantic import BaseModel, ConfigDict

from src.spectral_core import bracket


class BoostParam(BaseModel):
    """Lorentz boost parameter nu; <nu> is its bracket."""

    model_config = ConfigDict(frozen=True)

    nu: float

    @property
    def gamma(self) -> float:
        return float(bracket(self.nu))

    @property
    def rapidity(self) -> float:
        return float(np.arcsinh(self.nu))


class SpacetimePoint(BaseModel):
    """A point (t, x)."""

    model_config = ConfigDict(frozen=True)

    t: float
    x: float
