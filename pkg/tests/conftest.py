"""Shared grids, fields and states for the test suite."""

import numpy as np
import pytest

from src.dynamics import NonlinearityKind, NonlinearitySpec, PairState
from src.logging_config import configure_logging
from src.spectral_core import GridSpec, SpectralField

SQRT3_PI_HALF = np.sqrt(3.0) * np.pi / 2.0


@pytest.fixture(autouse=True)
def quiet_logging():
    configure_logging("WARNING")


@pytest.fixture
def small_grid() -> GridSpec:
    return GridSpec(half_length=32.0 * np.pi, n_points=256)


@pytest.fixture
def box_grid() -> GridSpec:
    """Wide enough that unit Gaussians never reach the boundary over a few time units."""
    return GridSpec(half_length=50.0, n_points=512)


@pytest.fixture
def q_grid() -> GridSpec:
    return GridSpec(half_length=40.0, n_points=2048)


@pytest.fixture
def gaussian(box_grid) -> SpectralField:
    return SpectralField.from_function(box_grid, lambda x: np.exp(-(x**2)))


@pytest.fixture
def wide_gaussian() -> SpectralField:
    """Band-limited to 1e-12 well inside the lattice; used by the boost checks."""
    grid = GridSpec(half_length=50.0, n_points=1024)
    return SpectralField.from_function(grid, lambda x: np.exp(-((x / 2.0) ** 2)))


@pytest.fixture
def gaussian_state(box_grid) -> PairState:
    u = np.exp(-(box_grid.x**2))
    return PairState(grid=box_grid, u=u, ut=np.zeros(box_grid.n_points))


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def linear() -> NonlinearitySpec:
    return NonlinearitySpec(kind=NonlinearityKind.LINEAR)


@pytest.fixture
def defocusing_exp() -> NonlinearitySpec:
    return NonlinearitySpec(kind=NonlinearityKind.DEFOCUSING_EXP)


@pytest.fixture
def quintic_focusing() -> NonlinearitySpec:
    return NonlinearitySpec(kind=NonlinearityKind.QUINTIC_FOCUSING)
