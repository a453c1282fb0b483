"""Symmetry operators: translation, Lorentz boost, scaling and free flows."""

from typing import Optional

import numpy as np
import structlog

from src.exceptions import BandOverflowError, InvalidInputError, KGScatterError
from src.spectral_core import (
    GridSpec,
    SpectralField,
    apply_multiplier,
    bracket,
    evaluate_at,
    sample_spectrum,
    spectral_tail_radius,
    synthesize,
)

from .models import SpacetimePoint

logger = structlog.get_logger(__name__)

# Relative modulus below which samples count as outside a field's support
SUPPORT_LEVEL = 1e-12


def translate(f: SpectralField, y: float) -> SpectralField:
    """T_y f(x) = f(x - y) via the phase exp(-i y xi)."""
    return apply_multiplier(f, lambda xi: np.exp(-1j * y * xi))


def freq_map(xi, nu: float):
    """l_nu(xi) = <nu> xi - nu <xi>."""
    return bracket(nu) * xi - nu * bracket(xi)


def compose_boost_parameter(mu: float, nu: float) -> float:
    """Parameter of the boost composing nu then mu: mu<nu> + <mu>nu."""
    return float(mu * bracket(nu) + bracket(mu) * nu)


def boost_nu_max(f: SpectralField) -> float:
    """
    Largest |nu| for which l_nu keeps f's spectral tail inside the band.

    In rapidity form l_nu(sinh a) = sinh(a - asinh nu), so the support radius
    K maps inside xi_max while asinh|nu| + asinh K <= asinh xi_max.
    """
    radius = spectral_tail_radius(f)
    if radius == 0.0:
        return float("inf")
    headroom = np.arcsinh(f.grid.xi_max) - np.arcsinh(radius)
    return float(np.sinh(headroom)) if headroom > 0 else 0.0


def boost(f: SpectralField, nu: float) -> SpectralField:
    """
    Fourier-side Lorentz boost: F[boost f](xi) = (<l_nu xi>/<xi>) f_hat(l_nu xi).

    f_hat is resampled at the non-lattice points l_nu(xi_k) through the
    semidiscrete Fourier sum; sample points beyond the band carry zero.
    """
    nu_max = boost_nu_max(f)
    if abs(nu) > nu_max:
        logger.warning("boost_band_overflow", nu=nu, nu_max=nu_max, n_points=f.grid.n_points)
        raise BandOverflowError(nu, nu_max)

    grid = f.grid
    xi = grid.frequencies
    eta = freq_map(xi, nu)
    inside = np.abs(eta) <= grid.xi_max
    coeffs = np.zeros(grid.n_points, dtype=np.complex128)
    weight = bracket(eta[inside]) / bracket(xi[inside])
    coeffs[inside] = weight * sample_spectrum(f, eta[inside])
    return synthesize(grid, coeffs)


def _support_radius(f: SpectralField) -> float:
    mod = np.abs(f.values)
    peak = mod.max(initial=0.0)
    if peak == 0.0:
        return 0.0
    return float(np.abs(f.grid.x[mod > SUPPORT_LEVEL * peak]).max())


def scale(f: SpectralField, lam: float, target: Optional[GridSpec] = None) -> SpectralField:
    """
    L^2-isometric scaling D_lam f(x) = lam^(-1/2) f(x/lam).

    Sampled on target (default: f's own grid) by trigonometric interpolation
    of f at x_j/lam; points outside f's box are zero.
    """
    if lam <= 0:
        raise InvalidInputError(f"scaling factor must be positive, got {lam}")
    target = target or f.grid
    pts = target.x / lam
    half = f.grid.half_length
    inside = (pts >= -half) & (pts < half)
    values = np.zeros(target.n_points, dtype=np.complex128)
    values[inside] = evaluate_at(f, pts[inside]) / np.sqrt(lam)

    if lam * _support_radius(f) > target.half_length:
        logger.warning(
            "scaled_support_exceeds_box",
            lam=lam,
            support=lam * _support_radius(f),
            half_length=target.half_length,
        )
    return SpectralField(grid=target, values=values)


def free_kg_propagate(v: SpectralField, t: float) -> SpectralField:
    """e^{-it<d/dx>} v."""
    return apply_multiplier(v, lambda xi: np.exp(-1j * t * bracket(xi)))


def free_schrodinger_propagate(w: SpectralField, t: float) -> SpectralField:
    """e^{it d^2/dx^2 / 2} w."""
    return apply_multiplier(w, lambda xi: np.exp(-0.5j * t * xi**2))


def lorentz_map(t, x, nu: float):
    """Array form of L_nu(t, x) = (<nu>t - nu x, <nu>x - nu t)."""
    g = bracket(nu)
    return g * t - nu * x, g * x - nu * t


def spacetime_boost(p: SpacetimePoint, nu: float) -> SpacetimePoint:
    """L_nu(t, x)."""
    t, x = lorentz_map(p.t, p.x, nu)
    return SpacetimePoint(t=float(t), x=float(x))


def kg_s_symbol_gap(xi, lam: float):
    """
    Gap between the rescaled Klein-Gordon symbol and xi^2/2.

    Returns lam^2(<xi/lam> - 1) - xi^2/2 and checks it against the closed
    form -xi^4 / (2 lam^2 (<xi/lam> + 1)^2).
    """
    if lam <= 0:
        raise InvalidInputError(f"lambda must be positive, got {lam}")
    xi = np.asarray(xi, dtype=float)
    z = xi / lam
    # <z> - 1 without cancellation
    shifted = np.expm1(0.5 * np.log1p(z * z))
    gap = lam**2 * shifted - 0.5 * xi**2
    closed = -(xi**4) / lam**2 / (2.0 * (bracket(z) + 1.0) ** 2)

    # Rounding of the two cancelling terms bounds the attainable agreement
    tol = 1e-12 * np.abs(closed) + 8.0 * np.finfo(float).eps * 0.5 * xi**2
    if np.any(np.abs(gap - closed) > tol):
        raise KGScatterError("symbol gap disagrees with its closed form")
    return gap if gap.ndim else float(gap)
