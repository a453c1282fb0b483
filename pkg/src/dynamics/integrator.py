"""Strang-split pseudospectral integrator for the nonlinear Klein-Gordon equation."""

from typing import Callable, Optional, Tuple

import numpy as np
import structlog
from scipy import fft as sp_fft

from src.config import get_settings
from src.exceptions import BlowupDetected
from src.spectral_core import GridSpec, MultiplierSymbol, SpectralField, apply_multiplier

from .models import DealiasMode, EvolutionConfig, NonlinearitySpec, PairState, Trajectory
from .nonlinearity import eval_nonlinearity

logger = structlog.get_logger(__name__)

# exp(-FILTER_STRENGTH (|xi|/xi_max)^FILTER_ORDER)
FILTER_STRENGTH = 36.0
FILTER_ORDER = 36

# Triple-jump weights lifting Strang to fourth order
TRIPLE_JUMP_OUTER = 1.0 / (2.0 - 2.0 ** (1.0 / 3.0))
TRIPLE_JUMP_INNER = 1.0 - 2.0 * TRIPLE_JUMP_OUTER


def spectral_filter(grid: GridSpec, xi: np.ndarray, mode: DealiasMode) -> np.ndarray:
    """Real filter factors on the given (non-negative) frequencies."""
    mode = DealiasMode(mode)
    if mode == DealiasMode.EXP_FILTER:
        return np.exp(-FILTER_STRENGTH * (np.abs(xi) / grid.xi_max) ** FILTER_ORDER)
    if mode == DealiasMode.TWO_THIRDS:
        return (np.abs(xi) <= (2.0 / 3.0) * grid.xi_max).astype(float)
    return np.ones_like(xi)


class KleinGordonIntegrator:
    """
    Kick-rotate-kick stepper for u_tt - u_xx + u + N(u) = 0.

    Responsibilities:
    - Half nonlinear kick u_t <- u_t - (dt/2) N(u)
    - Exact linear rotation of (u_hat, u_t_hat) at frequency <xi>
    - Spectral filtering once per step
    - Reusing N(u) from the end of one step at the start of the next

    dt may be negative for backward evolution.
    """

    def __init__(
        self,
        grid: GridSpec,
        dt: float,
        spec: NonlinearitySpec,
        dealias: DealiasMode = DealiasMode.EXP_FILTER,
    ):
        self.grid = grid
        self.dt = dt
        self.spec = spec
        self._workers = get_settings().fft_workers

        xi = 2.0 * np.pi * sp_fft.rfftfreq(grid.n_points, d=grid.dx)
        omega = np.hypot(1.0, xi)
        self._cos = np.cos(omega * dt)
        self._sin_over_omega = np.sin(omega * dt) / omega
        self._omega_sin = omega * np.sin(omega * dt)
        self._filter = spectral_filter(grid, xi, dealias)

    def force(self, u: np.ndarray) -> np.ndarray:
        return eval_nonlinearity(u, self.spec)

    def advance(
        self, u: np.ndarray, ut: np.ndarray, force: Optional[np.ndarray] = None
    ) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """One step on raw arrays; returns (u, ut, N(u)) at the new time."""
        half = 0.5 * self.dt
        if force is None:
            force = self.force(u)
        ut = ut - half * force

        n = self.grid.n_points
        u_hat = sp_fft.rfft(u, workers=self._workers)
        ut_hat = sp_fft.rfft(ut, workers=self._workers)
        new_u_hat = (self._cos * u_hat + self._sin_over_omega * ut_hat) * self._filter
        new_ut_hat = (-self._omega_sin * u_hat + self._cos * ut_hat) * self._filter
        u = sp_fft.irfft(new_u_hat, n=n, workers=self._workers)
        ut = sp_fft.irfft(new_ut_hat, n=n, workers=self._workers)

        force = self.force(u)
        ut = ut - half * force
        return u, ut, force

    def step(self, state: PairState) -> PairState:
        u, ut, _ = self.advance(state.u, state.ut)
        return PairState(grid=state.grid, u=u, ut=ut, t=state.t + self.dt)


def kg_step(
    state: PairState,
    dt: float,
    spec: NonlinearitySpec,
    dealias: DealiasMode = DealiasMode.EXP_FILTER,
    blowup_linf_threshold: float = 10.0,
) -> PairState:
    """A single Strang step of size dt."""
    try:
        new_state = KleinGordonIntegrator(state.grid, dt, spec, dealias).step(state)
    except BlowupDetected as exc:
        raise BlowupDetected(time=state.t + dt, max_abs=exc.max_abs) from exc
    peak = float(np.abs(new_state.u).max())
    if peak > blowup_linf_threshold:
        raise BlowupDetected(time=new_state.t, max_abs=peak)
    return new_state


def _stages(grid: GridSpec, dt: float, spec: NonlinearitySpec, config: EvolutionConfig):
    if config.order == 4:
        weights = (TRIPLE_JUMP_OUTER, TRIPLE_JUMP_INNER, TRIPLE_JUMP_OUTER)
    else:
        weights = (1.0,)
    return [KleinGordonIntegrator(grid, w * dt, spec, config.dealias) for w in weights]


def _ordered(snapshots, config: EvolutionConfig, spec: NonlinearitySpec) -> Trajectory:
    ordered = sorted(snapshots, key=lambda s: s.t)
    return Trajectory(snapshots=ordered, config=config, nonlinearity=spec)


def evolve(
    state: PairState,
    config: EvolutionConfig,
    spec: NonlinearitySpec,
    monitor: Optional[Callable[[PairState], None]] = None,
) -> Trajectory:
    """
    Step from state.t to config.t_final, storing every snapshot_stride-th state.

    The step is adjusted to land exactly on t_final; snapshot times are
    t0 + k*dt. A negative direction evolves backward and the returned
    trajectory is still ordered by increasing time. monitor, if given, is
    called on each stored snapshot.
    """
    total = config.t_final - state.t
    steps = int(round(abs(total) / config.dt))
    if steps == 0:
        if monitor:
            monitor(state)
        return _ordered([state], config, spec)
    dt = total / steps

    logger.info(
        "evolution_start",
        t0=state.t,
        t_final=config.t_final,
        steps=steps,
        dt=dt,
        n_points=state.grid.n_points,
        nonlinearity=spec.kind.value,
        order=config.order,
    )
    stages = _stages(state.grid, dt, spec, config)

    snapshots = [state]
    if monitor:
        monitor(state)
    u, ut, force = state.u, state.ut, None
    t0 = state.t
    for k in range(1, steps + 1):
        t = t0 + k * dt
        try:
            for stage in stages:
                u, ut, force = stage.advance(u, ut, force)
        except BlowupDetected as exc:
            logger.warning("blowup_detected", time=t, max_abs=exc.max_abs, reason="overflow")
            raise BlowupDetected(t, exc.max_abs, _ordered(snapshots, config, spec)) from exc

        peak = float(np.abs(u).max())
        if not np.isfinite(peak) or peak > config.blowup_linf_threshold:
            logger.warning("blowup_detected", time=t, max_abs=peak, reason="linf_threshold")
            raise BlowupDetected(t, peak, _ordered(snapshots, config, spec))

        if k % config.snapshot_stride == 0 or k == steps:
            snap = PairState(grid=state.grid, u=u, ut=ut, t=t)
            snapshots.append(snap)
            if monitor:
                monitor(snap)

    logger.info("evolution_complete", t_final=snapshots[-1].t, snapshots=len(snapshots))
    return _ordered(snapshots, config, spec)


def evolve_two_sided(
    state: PairState,
    config: EvolutionConfig,
    spec: NonlinearitySpec,
    t_backward: float,
) -> Trajectory:
    """Evolve backward to t_backward and forward to config.t_final, joined."""
    back = evolve(state, config.model_copy(update={"t_final": t_backward}), spec)
    ahead = evolve(state, config, spec)
    return back.joined(ahead)


def to_first_order(state: PairState) -> SpectralField:
    """v = u + i <d/dx>^{-1} u_t."""
    ut = SpectralField(grid=state.grid, values=state.ut)
    smoothed = apply_multiplier(ut, MultiplierSymbol.bessel(-1.0)).values.real
    return SpectralField(grid=state.grid, values=state.u + 1j * smoothed)


def from_first_order(v: SpectralField, t: float = 0.0) -> PairState:
    """u = Re v, u_t = <d/dx> Im v."""
    im = SpectralField(grid=v.grid, values=v.values.imag)
    ut = apply_multiplier(im, MultiplierSymbol.bessel(1.0)).values.real
    return PairState(grid=v.grid, u=v.values.real, ut=ut, t=t)
