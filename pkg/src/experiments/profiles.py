"""Initial data families used by the experiments."""

from enum import Enum
from pathlib import Path
from typing import Optional

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field

from src.dynamics import PairState, ground_state_profile
from src.exceptions import InvalidInputError
from src.spectral_core import GridSpec, SpectralField, derivative, sobolev_norm


class ProfileKind(str, Enum):
    """Shape of the initial data."""
    GAUSSIAN = "gaussian"            # a exp(-((x - c)/w)^2)
    GROUND_STATE = "ground_state"    # a 2^{1/4} Q(x - c)
    SAMPLE_FILE = "sample_file"      # CSV with columns u, ut on the grid


class ProfileSpec(BaseModel):
    """Profile descriptor; velocity transports a Gaussian as u_t = -v u_x."""

    model_config = ConfigDict(frozen=True)

    kind: ProfileKind = ProfileKind.GAUSSIAN
    amplitude: float = 1.0
    width: float = Field(default=1.0, gt=0)
    center: float = 0.0
    velocity: float = 0.0
    path: Optional[str] = None


def gaussian(grid: GridSpec, amplitude: float = 1.0, width: float = 1.0, center: float = 0.0) -> np.ndarray:
    return amplitude * np.exp(-(((grid.x - center) / width) ** 2))


def unit_mass_gaussian(grid: GridSpec, width: float = 1.0) -> SpectralField:
    """Gaussian normalized to ||phi||_{L^2} = 1 (by the closed-form integral)."""
    amplitude = (2.0 / np.pi) ** 0.25 / np.sqrt(width)
    return SpectralField(grid=grid, values=gaussian(grid, amplitude, width))


def load_samples(grid: GridSpec, path: str) -> PairState:
    """Read u and ut sampled on grid from a CSV file."""
    file = Path(path)
    if not file.exists():
        raise InvalidInputError(f"sample file not found: {path}")
    frame = pd.read_csv(file)
    missing = {"u", "ut"} - set(frame.columns)
    if missing:
        raise InvalidInputError(f"sample file lacks columns {sorted(missing)}")
    if len(frame) != grid.n_points:
        raise InvalidInputError(f"sample file has {len(frame)} rows, grid has {grid.n_points} points")
    try:
        return PairState(grid=grid, u=frame["u"].to_numpy(float), ut=frame["ut"].to_numpy(float))
    except ValueError as e:
        raise InvalidInputError(f"sample file: {e}") from e


def build_initial_data(grid: GridSpec, profile: ProfileSpec) -> PairState:
    if profile.kind == ProfileKind.SAMPLE_FILE:
        if not profile.path:
            raise InvalidInputError("sample_file profile needs a path")
        return load_samples(grid, profile.path).scaled(profile.amplitude)

    if profile.kind == ProfileKind.GROUND_STATE:
        u = profile.amplitude * 2.0**0.25 * ground_state_profile(grid.x - profile.center)
        return PairState(grid=grid, u=u, ut=np.zeros(grid.n_points))

    u = gaussian(grid, profile.amplitude, profile.width, profile.center)
    ut = np.zeros(grid.n_points)
    if profile.velocity != 0.0:
        ux = derivative(SpectralField(grid=grid, values=u)).values.real
        ut = -profile.velocity * ux
    return PairState(grid=grid, u=u, ut=ut)


def unit_perturbation(grid: GridSpec, s: float, width: float = 2.0, center: float = 1.0) -> PairState:
    """Off-center Gaussian in u with ||<d>^s u||_{L^2} = 1, u_t = 0."""
    u = gaussian(grid, 1.0, width, center)
    u = u / sobolev_norm(SpectralField(grid=grid, values=u), s)
    return PairState(grid=grid, u=u, ut=np.zeros(grid.n_points))
