"""Discrete Fourier transform contract, multipliers and Littlewood-Paley projections."""

from typing import Callable, List, Tuple, Union

import numpy as np
from scipy import fft as sp_fft

from src.config import get_settings
from src.exceptions import InvalidInputError

from .models import GridSpec, MultiplierSymbol, ProjectionSign, SpectralField

SymbolLike = Union[MultiplierSymbol, Callable[[np.ndarray], np.ndarray]]

# Relative level below which Fourier coefficients count as spectral tail
TAIL_LEVEL = 1e-12


def forward(f: SpectralField) -> np.ndarray:
    """Coefficients F_k = sum_j f_j exp(-2 pi i jk/n), natural order."""
    return sp_fft.fft(f.values, workers=get_settings().fft_workers)


def inverse(grid: GridSpec, coefficients: np.ndarray) -> SpectralField:
    """Inverse of forward."""
    return SpectralField(grid=grid, values=sp_fft.ifft(coefficients, workers=get_settings().fft_workers))


def bracket(xi):
    """Japanese bracket (1 + xi^2)^(1/2)."""
    return np.hypot(1.0, xi)


def _symbol_values(m: SymbolLike, xi: np.ndarray) -> np.ndarray:
    if isinstance(m, MultiplierSymbol):
        values = m.evaluate(xi)
    else:
        values = np.asarray(m(xi), dtype=np.complex128) * np.ones_like(xi)
    if not np.all(np.isfinite(values)):
        raise InvalidInputError("multiplier symbol is not finite on the frequency lattice")
    return values


def apply_multiplier(f: SpectralField, m: SymbolLike) -> SpectralField:
    """Inverse transform of m(xi_k) * f_hat(xi_k)."""
    symbol = _symbol_values(m, f.grid.frequencies)
    return inverse(f.grid, symbol * forward(f))


def _bump_h(t: np.ndarray) -> np.ndarray:
    safe = np.where(t > 0, t, 1.0)
    return np.where(t > 0, np.exp(-1.0 / safe), 0.0)


def smooth_cutoff(xi):
    """
    C-infinity cutoff sigma: 1 on |xi| <= 1, 0 on |xi| >= 2.

    sigma(xi) = h(2-|xi|) / (h(2-|xi|) + h(|xi|-1)) with h(t) = exp(-1/t), t > 0.
    """
    r = np.abs(np.asarray(xi, dtype=float))
    a = _bump_h(2.0 - r)
    b = _bump_h(r - 1.0)
    out = a / (a + b)
    return out if out.ndim else float(out)


def smooth_cutoff_derivatives(y: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """sigma, sigma' and sigma'' at real points y (analytic formulas)."""
    y = np.asarray(y, dtype=float)
    r = np.abs(y)
    sgn = np.sign(y)

    # h(t), h'(t) = h/t^2, h''(t) = h (1/t^4 - 2/t^3) for t > 0
    def h_and_derivs(t):
        h = _bump_h(t)
        # exp(-1/t) underflows to zero well before 1/t^4 overflows
        live = t > 1e-3
        safe = np.where(live, t, 1.0)
        h1 = np.where(live, h / safe**2, 0.0)
        h2 = np.where(live, h * (1.0 / safe**4 - 2.0 / safe**3), 0.0)
        return h, h1, h2

    # a(r) = h(2-r), b(r) = h(r-1)
    a, ha1, ha2 = h_and_derivs(2.0 - r)
    b, hb1, hb2 = h_and_derivs(r - 1.0)
    a1, a2 = -ha1, ha2
    b1, b2 = hb1, hb2
    s = a + b
    s1 = a1 + b1
    s2 = a2 + b2
    sigma = a / s
    num = a1 * s - a * s1
    d1 = num / s**2
    d2 = (a2 * s - a * s2) / s**2 - 2.0 * s1 * num / s**3
    # Chain rule through r = |y|; sigma is flat near y = 0
    return sigma, sgn * d1, d2


def dyadic_levels(grid: GridSpec) -> List[int]:
    """Dyadic N = 1, 2, 4, ... up to the first N covering the band edge."""
    levels = [1]
    while levels[-1] < grid.band_edge:
        levels.append(levels[-1] * 2)
    return levels


def _is_dyadic(n: int) -> bool:
    return isinstance(n, (int, np.integer)) and n >= 1 and (n & (n - 1)) == 0


def lp_project(f: SpectralField, n: int, sign: ProjectionSign = ProjectionSign.BOTH) -> SpectralField:
    """
    Littlewood-Paley projection P_N (or P_N^+/P_N^-).

    N = 1 uses sigma(xi); N >= 2 uses sigma(xi/N) - sigma(2 xi/N), optionally
    restricted to xi > 0 (plus) or xi < 0 (minus).
    """
    sign = ProjectionSign(sign)
    if not _is_dyadic(n):
        raise InvalidInputError(f"N={n} is not a dyadic integer")
    if n == 1 and sign != ProjectionSign.BOTH:
        raise InvalidInputError("signed projections require N >= 2")

    xi = f.grid.frequencies
    if n == 1:
        symbol = smooth_cutoff(xi)
    else:
        symbol = smooth_cutoff(xi / n) - smooth_cutoff(2.0 * xi / n)
    if sign == ProjectionSign.PLUS:
        symbol = symbol * (xi > 0)
    elif sign == ProjectionSign.MINUS:
        symbol = symbol * (xi < 0)
    return inverse(f.grid, symbol * forward(f))


def low_pass(f: SpectralField, n: float) -> SpectralField:
    """P_{<=N} with symbol sigma(xi/N), any real N > 0."""
    if n <= 0:
        raise InvalidInputError("low-pass cutoff must be positive")
    return apply_multiplier(f, MultiplierSymbol.cutoff(n))


def lebesgue_norm(f: SpectralField, p: float) -> float:
    """Rectangle-rule L^p norm; p = inf gives the max modulus."""
    if p != np.inf and p < 1:
        raise InvalidInputError(f"L^p norm needs p >= 1, got {p}")
    mod = np.abs(f.values)
    if p == np.inf:
        return float(mod.max(initial=0.0))
    return float((f.grid.dx * np.sum(mod**p)) ** (1.0 / p))


def sobolev_norm(f: SpectralField, s: float) -> float:
    """||<d/dx>^s f||_{L^2} via Plancherel on the lattice."""
    coeffs = forward(f)
    weight = bracket(f.grid.frequencies) ** (2.0 * s)
    return float(np.sqrt(f.grid.dx / f.grid.n_points * np.sum(weight * np.abs(coeffs) ** 2)))


def derivative(f: SpectralField, order: int = 1) -> SpectralField:
    """Spectral derivative (i xi)^order f_hat."""
    xi = f.grid.frequencies
    return inverse(f.grid, (1j * xi) ** order * forward(f))


def spectral_tail_radius(f: SpectralField, level: float = TAIL_LEVEL) -> float:
    """Largest |xi_k| whose coefficient exceeds level * max coefficient."""
    mod = np.abs(forward(f))
    peak = mod.max(initial=0.0)
    if peak == 0.0:
        return 0.0
    significant = mod > level * peak
    return float(np.abs(f.grid.frequencies[significant]).max())
