"""Split-step solver for the mass-critical NLS (i d_t + d_xx/2) w = mu (5/32)|w|^4 w."""

from typing import Optional

import numpy as np
import structlog
from scipy import fft as sp_fft

from src.config import get_settings
from src.exceptions import BlowupDetected, InvalidInputError
from src.spectral_core import GridSpec, SpectralField, derivative

from .models import NLSSolution

logger = structlog.get_logger(__name__)

NLS_COEFFICIENT = 5.0 / 32.0


def _check_mu(mu: int) -> int:
    if mu not in (1, -1):
        raise InvalidInputError(f"mu must be +1 or -1, got {mu}")
    return mu


class NLSStepper:
    """Strang phase-kick / free Schrodinger / phase-kick stepper."""

    def __init__(self, grid: GridSpec, dt: float, mu: int):
        self.grid = grid
        self.dt = dt
        self.mu = _check_mu(mu)
        self._workers = get_settings().fft_workers
        self._free = np.exp(-0.5j * dt * grid.frequencies**2)

    def _phase(self, w: np.ndarray) -> np.ndarray:
        return w * np.exp(-1j * self.mu * NLS_COEFFICIENT * np.abs(w) ** 4 * (0.5 * self.dt))

    def advance(self, w: np.ndarray) -> np.ndarray:
        w = self._phase(w)
        w = sp_fft.ifft(self._free * sp_fft.fft(w, workers=self._workers), workers=self._workers)
        return self._phase(w)


def nls_step(w: SpectralField, dt: float, mu: int) -> SpectralField:
    """One Strang step; mu = +1 defocusing, -1 focusing."""
    return w.with_values(NLSStepper(w.grid, dt, mu).advance(w.values))


def nls_evolve(
    w: SpectralField,
    dt: float,
    t_final: float,
    mu: int,
    snapshot_stride: int = 1,
    blowup_linf_threshold: Optional[float] = 10.0,
) -> NLSSolution:
    """
    Repeated nls_step from t = 0 to t_final with snapshots every stride steps.

    Raises BlowupDetected once max|w| passes the threshold.
    """
    steps = int(round(abs(t_final) / dt))
    if steps == 0:
        return NLSSolution(grid=w.grid, mu=mu, times=[0.0], fields=[w.values.copy()])
    step = t_final / steps
    stepper = NLSStepper(w.grid, step, mu)
    logger.info("nls_evolution_start", steps=steps, dt=step, n_points=w.grid.n_points, mu=mu)

    times = [0.0]
    fields = [w.values.copy()]
    values = w.values
    for k in range(1, steps + 1):
        values = stepper.advance(values)
        peak = float(np.abs(values).max())
        if blowup_linf_threshold is not None and (not np.isfinite(peak) or peak > blowup_linf_threshold):
            logger.warning("nls_blowup_detected", time=k * step, max_abs=peak)
            raise BlowupDetected(k * step, peak, NLSSolution(grid=w.grid, mu=mu, times=times, fields=fields))
        if k % snapshot_stride == 0 or k == steps:
            times.append(k * step)
            fields.append(values.copy())
    return NLSSolution(grid=w.grid, mu=mu, times=times, fields=fields)


def nls_energy(w: SpectralField, mu: int) -> float:
    """Integral of |w_x|^2/4 + mu (5/192)|w|^6."""
    _check_mu(mu)
    wx = derivative(w).values
    density = 0.25 * np.abs(wx) ** 2 + mu * (5.0 / 192.0) * np.abs(w.values) ** 6
    return float(w.grid.dx * np.sum(density))


def ground_state_profile(x: np.ndarray) -> np.ndarray:
    """Q(x) = 3^{1/4} / sqrt(cosh 2x), the positive solution of Q'' + Q^5 = Q."""
    # 1/sqrt(cosh 2x) written without overflow for large |x|
    ax = np.abs(x)
    return 3.0**0.25 * np.sqrt(2.0) * np.exp(-ax) / np.sqrt(1.0 + np.exp(-4.0 * ax))


def standing_wave(grid: GridSpec, t: float = 0.0) -> SpectralField:
    """w_Q(t, x) = e^{it} 2 (2/5)^{1/4} Q(sqrt(2) x), a focusing NLS solution."""
    amplitude = 2.0 * (2.0 / 5.0) ** 0.25
    profile = amplitude * ground_state_profile(np.sqrt(2.0) * grid.x)
    return SpectralField(grid=grid, values=np.exp(1j * t) * profile)
