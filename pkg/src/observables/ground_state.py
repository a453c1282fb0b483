"""Ground state Q, its thresholds and the quintic extraction identity."""

from typing import Optional, Tuple

import numpy as np
from scipy.integrate import quad

from src.dynamics import NonlinearityKind, NonlinearitySpec, PairState, ground_state_profile, standing_wave
from src.exceptions import InvalidInputError
from src.spectral_core import GridSpec, SpectralField, derivative

from .functionals import energy, mass
from .models import ThresholdValues

# Q decays like exp(-|x|); below this half-length the box truncates it
MIN_HALF_LENGTH = 20.0

COS5_SAMPLES = 10_000


def ground_state(grid: GridSpec) -> Tuple[SpectralField, float]:
    """Q(x) = 3^{1/4}/sqrt(cosh 2x) on grid with the max-norm residual of Q'' + Q^5 - Q."""
    if grid.half_length < MIN_HALF_LENGTH:
        raise InvalidInputError(
            f"ground state needs half_length >= {MIN_HALF_LENGTH}, got {grid.half_length}"
        )
    q = SpectralField(grid=grid, values=ground_state_profile(grid.x))
    qxx = derivative(q, 2).values.real
    qr = q.values.real
    residual = float(np.abs(qxx + qr**5 - qr).max())
    return q, residual


def cos5_identity_check(samples: int = COS5_SAMPLES) -> float:
    """Max defect of cos^5 t = (10 cos t + 5 cos 3t + cos 5t)/16 over sampled t."""
    j = np.arange(samples)

    # k*theta reduced mod 2pi on the integer index keeps the arguments exact
    def cos_multiple(k: int) -> np.ndarray:
        return np.cos(2.0 * np.pi * ((k * j) % samples) / samples)

    c = cos_multiple(1)
    real_gap = np.abs(c**5 - (10 * c + 5 * cos_multiple(3) + cos_multiple(5)) / 16.0)
    return float(real_gap.max())


def complex_cos5_defect(z) -> float:
    """Max |(Re z)^5 - (10|z|^4 Re z + 5|z|^2 Re z^3 + Re z^5)/16|, relative to |z|^5."""
    z = np.atleast_1d(np.asarray(z, dtype=np.complex128))
    lhs = z.real**5
    r2 = np.abs(z) ** 2
    rhs = (10 * r2**2 * z.real + 5 * r2 * (z**3).real + (z**5).real) / 16.0
    scale = np.maximum(np.abs(z) ** 5, 1.0)
    return float((np.abs(lhs - rhs) / scale).max())


def _q_squared(x: float) -> float:
    return float(ground_state_profile(np.array([x]))[0] ** 2)


def nls_thresholds(grid: Optional[GridSpec] = None) -> ThresholdValues:
    """
    M(Q), sqrt(2) M(Q), (4/sqrt 5) M(Q) and the static threshold E(2^{1/4} Q, 0).

    M(Q) comes from adaptive quadrature of the closed form; the direct value
    of M(w_Q) and the static energy and mass come from the grid.
    """
    grid = grid or GridSpec(half_length=40.0, n_points=2048)
    half, _ = quad(_q_squared, 0.0, np.inf, epsabs=1e-14, epsrel=1e-13)
    mass_q = 2.0 * half

    direct = mass(standing_wave(grid))
    q, _ = ground_state(grid)
    static = PairState(grid=grid, u=2.0**0.25 * q.values.real, ut=np.zeros(grid.n_points))
    spec = NonlinearitySpec(kind=NonlinearityKind.QUINTIC_FOCUSING)
    return ThresholdValues(
        mass_q=mass_q,
        kg_mass_threshold=np.sqrt(2.0) * mass_q,
        nls_mass_threshold=4.0 / np.sqrt(5.0) * mass_q,
        nls_mass_threshold_direct=direct,
        static_energy=energy(static, spec),
        static_mass=mass(static),
    )
