"""Value types for the periodic spectral grid."""

from enum import Enum
from typing import Callable

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from scipy import fft as sp_fft


class ProjectionSign(str, Enum):
    """Frequency half selected by a Littlewood-Paley projection."""
    PLUS = "+"
    MINUS = "-"
    BOTH = "both"


class GridSpec(BaseModel):
    """
    Uniform periodic grid on [-L, L) with n points.

    Frequencies are the lattice xi_k = pi*k/L in natural FFT order
    (k = 0, 1, ..., n/2-1, -n/2, ..., -1).
    """

    model_config = ConfigDict(frozen=True)

    half_length: float = Field(gt=0)
    n_points: int

    @field_validator("n_points")
    @classmethod
    def _even_and_large_enough(cls, v: int) -> int:
        if v % 2 != 0:
            raise ValueError("n_points must be even")
        if v < 8:
            raise ValueError("n_points must be >= 8")
        return v

    @property
    def dx(self) -> float:
        return 2.0 * self.half_length / self.n_points

    @property
    def x(self) -> np.ndarray:
        """Physical sample points x_j = -L + j*dx."""
        return -self.half_length + self.dx * np.arange(self.n_points)

    @property
    def frequencies(self) -> np.ndarray:
        """Lattice xi_k in natural FFT order."""
        return 2.0 * np.pi * sp_fft.fftfreq(self.n_points, d=self.dx)

    @property
    def xi_max(self) -> float:
        """Largest resolved frequency pi*(n/2-1)/L."""
        return np.pi * (self.n_points // 2 - 1) / self.half_length

    @property
    def band_edge(self) -> float:
        """Nyquist magnitude pi*n/(2L)."""
        return np.pi * (self.n_points // 2) / self.half_length

    def scaled(self, factor: float) -> "GridSpec":
        """Same point count on [-factor*L, factor*L)."""
        return GridSpec(half_length=self.half_length * factor, n_points=self.n_points)


class SpectralField(BaseModel):
    """Complex physical-space samples of a field on a GridSpec."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    grid: GridSpec
    values: np.ndarray

    @field_validator("values", mode="before")
    @classmethod
    def _as_complex_array(cls, v) -> np.ndarray:
        arr = np.array(v, dtype=np.complex128, copy=True)
        if arr.ndim != 1:
            raise ValueError("values must be one-dimensional")
        arr.setflags(write=False)
        return arr

    @model_validator(mode="after")
    def _length_matches_grid(self) -> "SpectralField":
        if self.values.shape[0] != self.grid.n_points:
            raise ValueError(
                f"values has length {self.values.shape[0]}, grid has {self.grid.n_points} points"
            )
        return self

    @classmethod
    def from_function(cls, grid: GridSpec, func: Callable[[np.ndarray], np.ndarray]) -> "SpectralField":
        """Sample func at the grid points."""
        return cls(grid=grid, values=func(grid.x))

    @classmethod
    def zeros(cls, grid: GridSpec) -> "SpectralField":
        return cls(grid=grid, values=np.zeros(grid.n_points))

    @property
    def real(self) -> np.ndarray:
        return self.values.real.copy()

    @property
    def imag(self) -> np.ndarray:
        return self.values.imag.copy()

    def with_values(self, values: np.ndarray) -> "SpectralField":
        return SpectralField(grid=self.grid, values=values)


class MultiplierSymbol(BaseModel):
    """A Fourier multiplier xi -> m(xi), evaluated by value of xi."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    name: str = "symbol"
    function: Callable[[np.ndarray], np.ndarray]

    def evaluate(self, xi: np.ndarray) -> np.ndarray:
        return np.asarray(self.function(np.asarray(xi, dtype=float)), dtype=np.complex128) * np.ones_like(xi)

    @classmethod
    def bessel(cls, s: float) -> "MultiplierSymbol":
        """<xi>^s, the symbol of <d/dx>^s."""
        return cls(name=f"bracket^{s:g}", function=lambda xi: np.hypot(1.0, xi) ** s)

    @classmethod
    def cutoff(cls, n: float) -> "MultiplierSymbol":
        """sigma(xi/N), the symbol of P_{<=N}."""
        from .transforms import smooth_cutoff

        return cls(name=f"P<={n:g}", function=lambda xi: smooth_cutoff(xi / n))
