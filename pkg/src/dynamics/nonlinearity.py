"""Pointwise nonlinearity N(u) and potential density N~(u)."""

import math

import numpy as np

from src.exceptions import BlowupDetected

from .models import NonlinearityKind, NonlinearitySpec

# exp(u^2) overflows shortly past |u| = 26.6
OVERFLOW_GUARD = 26.0

# Below this value of y = u^2 the exponential remainders use their Taylor series
SERIES_CUTOFF = 0.1
SERIES_TERMS = 16


def _exp_remainder(y: np.ndarray, start: int) -> np.ndarray:
    """exp(y) - sum_{k<start} y^k/k! for y >= 0, start in {2, 3}."""
    out = np.empty_like(y)
    small = y < SERIES_CUTOFF

    ys = y[small]
    acc = np.ones_like(ys)
    for k in range(start + SERIES_TERMS, start, -1):
        acc = 1.0 + acc * ys / k
    out[small] = ys**start / math.factorial(start) * acc

    yl = y[~small]
    direct = np.expm1(yl) - yl
    if start == 3:
        direct = direct - 0.5 * yl**2
    out[~small] = direct
    return out


def _check_range(u: np.ndarray, spec: NonlinearitySpec) -> None:
    if not np.all(np.isfinite(u)):
        raise BlowupDetected(time=None, max_abs=float("inf"))
    if spec.is_exponential and u.size:
        peak = float(np.abs(u).max())
        if peak > OVERFLOW_GUARD:
            raise BlowupDetected(time=None, max_abs=peak)


def eval_nonlinearity(u, spec: NonlinearitySpec):
    """
    N(u) per spec.

    Exponential: (exp(u^2) - 1 - u^2) u, negated when focusing.
    Quintic: +-u^5/2. Linear: 0.
    """
    arr = np.asarray(u, dtype=float)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    _check_range(arr, spec)

    if spec.kind == NonlinearityKind.LINEAR:
        out = np.zeros_like(arr)
    elif spec.is_exponential:
        out = spec.sign * _exp_remainder(arr * arr, 2) * arr
    else:
        out = spec.sign * 0.5 * arr**5
    return float(out[0]) if scalar else out


def eval_potential_density(u, spec: NonlinearitySpec):
    """
    N~(u) with N~' = 2N.

    Exponential: exp(u^2) - 1 - u^2 - u^4/2 (negated when focusing).
    Quintic: +-u^6/6.
    """
    arr = np.asarray(u, dtype=float)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    _check_range(arr, spec)

    if spec.kind == NonlinearityKind.LINEAR:
        out = np.zeros_like(arr)
    elif spec.is_exponential:
        out = spec.sign * _exp_remainder(arr * arr, 3)
    else:
        out = spec.sign * arr**6 / 6.0
    return float(out[0]) if scalar else out
