"""Trigonometric interpolation at off-grid points and frequencies."""

from typing import Sequence

import numpy as np
from scipy import fft as sp_fft
from scipy.interpolate import CubicSpline

from src.config import get_settings
from src.exceptions import InvalidInputError

from .models import GridSpec, SpectralField

# Rows per direct-sum block; bounds the (rows x n) phase matrix
CHUNK_ROWS = 256


def _split_nyquist(grid: GridSpec, coefficients: np.ndarray):
    """Lattice plus a mirrored Nyquist column carrying half the weight each."""
    xi = grid.frequencies
    nyq = grid.n_points // 2
    coeffs = np.array(coefficients, dtype=np.complex128, copy=True)
    coeffs[..., nyq] *= 0.5
    xi_ext = np.append(xi, grid.band_edge)
    coeffs_ext = np.concatenate([coeffs, coeffs[..., nyq : nyq + 1]], axis=-1)
    return xi_ext, coeffs_ext


def _periodic_offset(grid: GridSpec, points: np.ndarray) -> np.ndarray:
    return np.mod(points + grid.half_length, 2.0 * grid.half_length)


def evaluate_at(f: SpectralField, points: Sequence[float]) -> np.ndarray:
    """
    Values of the trigonometric interpolant of f at arbitrary points.

    Points are taken modulo the period 2L.
    """
    points = np.atleast_1d(np.asarray(points, dtype=float))
    coeffs = sp_fft.fft(f.values, workers=get_settings().fft_workers)
    xi, coeffs = _split_nyquist(f.grid, coeffs)
    offsets = _periodic_offset(f.grid, points)
    out = np.empty(points.shape[0], dtype=np.complex128)
    for start in range(0, points.shape[0], CHUNK_ROWS):
        stop = start + CHUNK_ROWS
        phase = np.exp(1j * np.outer(offsets[start:stop], xi))
        out[start:stop] = phase @ coeffs
    return out / f.grid.n_points


def sample_spectrum(f: SpectralField, etas: Sequence[float]) -> np.ndarray:
    """Semidiscrete Fourier sum c(eta) = sum_j f_j exp(-i eta x_j)."""
    etas = np.atleast_1d(np.asarray(etas, dtype=float))
    x = f.grid.x
    out = np.empty(etas.shape[0], dtype=np.complex128)
    for start in range(0, etas.shape[0], CHUNK_ROWS):
        stop = start + CHUNK_ROWS
        phase = np.exp(-1j * np.outer(etas[start:stop], x))
        out[start:stop] = phase @ f.values
    return out


def synthesize(grid: GridSpec, coefficients: np.ndarray) -> SpectralField:
    """
    Field g_j = (1/n) sum_k G_k exp(i xi_k x_j).

    Inverse of sample_spectrum restricted to the lattice. Since x_0 = -L the
    physical phase differs from the FFT phase by (-1)^k.
    """
    k = np.rint(grid.frequencies * grid.half_length / np.pi).astype(np.int64)
    parity = np.where(k % 2 == 0, 1.0, -1.0)
    values = sp_fft.ifft(coefficients * parity, workers=get_settings().fft_workers)
    return SpectralField(grid=grid, values=values)


class SnapshotInterpolator:
    """
    Spacetime interpolation over stored snapshots.

    Cubic spline in t of the Fourier coefficients, trigonometric sum in x.

    Responsibilities:
    - Hold the spline of one field's spectra across snapshot times
    - Evaluate the field at scattered (t, x) points in chunks
    """

    def __init__(self, grid: GridSpec, times: Sequence[float], samples: np.ndarray):
        times = np.asarray(times, dtype=float)
        samples = np.asarray(samples)
        if times.ndim != 1 or times.shape[0] < 2:
            raise InvalidInputError("spacetime interpolation needs at least two snapshots")
        if samples.shape != (times.shape[0], grid.n_points):
            raise InvalidInputError("snapshot array does not match times and grid")
        self.grid = grid
        self.t_min = float(times[0])
        self.t_max = float(times[-1])
        coeffs = sp_fft.fft(samples, axis=-1, workers=get_settings().fft_workers)
        xi, coeffs = _split_nyquist(grid, coeffs)
        self._xi = xi
        # Real and imaginary parts splined side by side
        stacked = np.concatenate([coeffs.real, coeffs.imag], axis=-1)
        self._spline = CubicSpline(times, stacked, axis=0)

    def __call__(self, t: Sequence[float], x: Sequence[float]) -> np.ndarray:
        t = np.atleast_1d(np.asarray(t, dtype=float))
        x = np.atleast_1d(np.asarray(x, dtype=float))
        t, x = np.broadcast_arrays(t, x)
        width = self._xi.shape[0]
        offsets = _periodic_offset(self.grid, x)
        out = np.empty(t.shape[0], dtype=np.complex128)
        for start in range(0, t.shape[0], CHUNK_ROWS):
            stop = start + CHUNK_ROWS
            block = self._spline(t[start:stop])
            coeffs = block[:, :width] + 1j * block[:, width:]
            phase = np.exp(1j * np.outer(offsets[start:stop], self._xi))
            out[start:stop] = np.sum(phase * coeffs, axis=1)
        return out / self.grid.n_points
