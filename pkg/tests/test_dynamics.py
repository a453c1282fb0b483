"""Nonlinearity, the Klein-Gordon integrator and the NLS solver."""

import numpy as np
import pytest
from pydantic import ValidationError

from src.dynamics import (
    DealiasMode,
    EvolutionConfig,
    NonlinearityKind,
    NonlinearitySpec,
    PairState,
    eval_nonlinearity,
    eval_potential_density,
    evolve,
    evolve_two_sided,
    from_first_order,
    ground_state_profile,
    kg_step,
    nls_energy,
    nls_evolve,
    nls_step,
    standing_wave,
    to_first_order,
)
from src.exceptions import BlowupDetected, InvalidInputError
from src.observables import energy, mass, momentum
from src.spectral_core import GridSpec, MultiplierSymbol, SpectralField, apply_multiplier
from src.symmetry_ops import free_kg_propagate, free_schrodinger_propagate


def _final_u(state, spec, dt, order=2, t_final=1.0):
    config = EvolutionConfig(
        dt=dt, t_final=t_final, snapshot_stride=10_000, dealias=DealiasMode.NONE, order=order
    )
    return evolve(state, config, spec).snapshots[-1].u


# ─────────────────────────────────────────────────────────────────────────────
# Nonlinearity
# ─────────────────────────────────────────────────────────────────────────────


class TestNonlinearity:
    def test_exponential_at_one(self, defocusing_exp):
        assert eval_nonlinearity(1.0, defocusing_exp) == pytest.approx(np.e - 2.0, rel=1e-15)

    def test_focusing_is_negated(self):
        focusing = NonlinearitySpec(kind=NonlinearityKind.FOCUSING_EXP)
        assert eval_nonlinearity(1.0, focusing) == pytest.approx(2.0 - np.e, rel=1e-15)

    def test_small_amplitude_series(self, defocusing_exp):
        u = np.array([1e-3, -2e-2, 5e-2])
        expected = (u**4 / 2.0 + u**6 / 6.0 + u**8 / 24.0 + u**10 / 120.0) * u
        assert np.allclose(eval_nonlinearity(u, defocusing_exp), expected, rtol=1e-10, atol=0.0)

    def test_potential_derivative(self, defocusing_exp):
        h = 1e-5
        u = 0.7
        fd = (eval_potential_density(u + h, defocusing_exp) - eval_potential_density(u - h, defocusing_exp)) / (2 * h)
        assert fd == pytest.approx(2.0 * eval_nonlinearity(u, defocusing_exp), rel=1e-8)

    def test_potential_non_negative(self, defocusing_exp):
        u = np.linspace(-3.0, 3.0, 601)
        assert np.all(eval_potential_density(u, defocusing_exp) >= 0.0)

    def test_quintic_values(self, quintic_focusing):
        defocusing = NonlinearitySpec(kind=NonlinearityKind.QUINTIC_DEFOCUSING)
        assert eval_nonlinearity(2.0, defocusing) == pytest.approx(16.0)
        assert eval_nonlinearity(2.0, quintic_focusing) == pytest.approx(-16.0)
        assert eval_potential_density(2.0, defocusing) == pytest.approx(64.0 / 6.0)

    def test_linear_is_zero(self, linear):
        assert np.all(eval_nonlinearity(np.linspace(-5, 5, 11), linear) == 0.0)

    def test_exponential_overflow_raises(self, defocusing_exp):
        with pytest.raises(BlowupDetected):
            eval_nonlinearity(np.array([0.0, 30.0]), defocusing_exp)

    def test_quintic_has_no_overflow_guard(self, quintic_focusing):
        assert eval_nonlinearity(30.0, quintic_focusing) == pytest.approx(-0.5 * 30.0**5)


# ─────────────────────────────────────────────────────────────────────────────
# Klein-Gordon integrator
# ─────────────────────────────────────────────────────────────────────────────


class TestEvolutionConfig:
    def test_order_must_be_two_or_four(self):
        with pytest.raises(ValidationError):
            EvolutionConfig(order=3)

    def test_dt_must_be_positive(self):
        with pytest.raises(ValidationError):
            EvolutionConfig(dt=0.0)


class TestKleinGordonStep:
    def test_linear_step_is_free_flow(self, gaussian_state, linear):
        v0 = to_first_order(gaussian_state)
        stepped = kg_step(gaussian_state, 0.05, linear, dealias=DealiasMode.NONE)
        expected = free_kg_propagate(v0, 0.05).values
        assert np.abs(to_first_order(stepped).values - expected).max() <= 1e-12

    def test_linear_evolution_is_free_flow(self, gaussian_state, linear):
        config = EvolutionConfig(dt=0.01, t_final=3.0, snapshot_stride=100, dealias=DealiasMode.NONE)
        traj = evolve(gaussian_state, config, linear)
        expected = free_kg_propagate(to_first_order(gaussian_state), 3.0).values
        assert np.abs(to_first_order(traj.snapshots[-1]).values - expected).max() <= 1e-11

    def test_step_threshold(self, gaussian_state, defocusing_exp):
        with pytest.raises(BlowupDetected):
            kg_step(gaussian_state, 1e-3, defocusing_exp, blowup_linf_threshold=0.5)


class TestEvolve:
    def test_energy_conservation(self, gaussian_state, defocusing_exp):
        config = EvolutionConfig(dt=5e-4, t_final=2.0, snapshot_stride=400, dealias=DealiasMode.NONE)
        traj = evolve(gaussian_state, config, defocusing_exp)
        e0 = energy(gaussian_state, defocusing_exp)
        drift = max(abs(energy(s, defocusing_exp) - e0) for s in traj.snapshots) / e0
        assert drift <= 1e-6

    def test_energy_drift_is_second_order(self, gaussian_state, defocusing_exp):
        e0 = energy(gaussian_state, defocusing_exp)

        def drift(dt: float, stride: int) -> float:
            config = EvolutionConfig(dt=dt, t_final=2.0, snapshot_stride=stride, dealias=DealiasMode.NONE)
            traj = evolve(gaussian_state, config, defocusing_exp)
            return max(abs(energy(s, defocusing_exp) - e0) for s in traj.snapshots) / e0

        ratio = drift(0.02, 5) / drift(0.01, 10)
        assert 3.0 < ratio < 5.0

    @pytest.mark.slow
    def test_travelling_data_conserves_momentum(self, defocusing_exp):
        grid = GridSpec(half_length=200.0, n_points=4096)
        x = grid.x
        u = np.exp(-((x - 5.0) ** 2))
        state = PairState(grid=grid, u=u, ut=0.3 * 2.0 * (x - 5.0) * u)
        config = EvolutionConfig(dt=1e-3, t_final=20.0, snapshot_stride=1000, dealias=DealiasMode.NONE)
        traj = evolve(state, config, defocusing_exp)
        p0, e0 = momentum(state), energy(state, defocusing_exp)
        assert abs(p0) > 0.1
        assert max(abs(momentum(s) - p0) for s in traj.snapshots) <= 1e-8
        assert max(abs(energy(s, defocusing_exp) - e0) for s in traj.snapshots) / e0 <= 1e-6

    def test_strang_is_second_order(self, gaussian_state, defocusing_exp):
        coarse, mid, fine = (_final_u(gaussian_state, defocusing_exp, dt) for dt in (0.02, 0.01, 0.005))
        ratio = np.abs(coarse - mid).max() / np.abs(mid - fine).max()
        assert 3.0 < ratio < 5.0

    def test_triple_jump_is_higher_order(self, gaussian_state, defocusing_exp):
        coarse, mid, fine = (
            _final_u(gaussian_state, defocusing_exp, dt, order=4) for dt in (0.04, 0.02, 0.01)
        )
        ratio = np.abs(coarse - mid).max() / np.abs(mid - fine).max()
        assert ratio > 10.0

    def test_zero_data_stays_zero(self, box_grid, defocusing_exp):
        config = EvolutionConfig(dt=0.01, t_final=1.0, snapshot_stride=10)
        traj = evolve(PairState.zeros(box_grid), config, defocusing_exp)
        assert all(np.all(s.u == 0.0) and np.all(s.ut == 0.0) for s in traj.snapshots)

    def test_snapshot_times(self, gaussian_state, defocusing_exp):
        config = EvolutionConfig(dt=0.01, t_final=1.0, snapshot_stride=25)
        traj = evolve(gaussian_state, config, defocusing_exp)
        assert np.allclose(traj.times, [0.0, 0.25, 0.5, 0.75, 1.0], atol=1e-12)

    def test_backward_evolution_is_ordered(self, gaussian_state, defocusing_exp):
        config = EvolutionConfig(dt=0.01, t_final=-1.0, snapshot_stride=50)
        traj = evolve(gaussian_state, config, defocusing_exp)
        assert traj.t_span[0] == pytest.approx(-1.0)
        assert traj.t_span[1] == 0.0
        assert np.all(np.diff(traj.times) > 0)

    def test_reversibility(self, gaussian_state, defocusing_exp):
        forward_cfg = EvolutionConfig(dt=1e-3, t_final=1.0, snapshot_stride=1000, dealias=DealiasMode.NONE)
        end = evolve(gaussian_state, forward_cfg, defocusing_exp).snapshots[-1]
        back = evolve(end, forward_cfg.model_copy(update={"t_final": 0.0}), defocusing_exp).snapshots[0]
        assert back.t == pytest.approx(0.0, abs=1e-12)
        assert np.abs(back.u - gaussian_state.u).max() <= 1e-10
        assert np.abs(back.ut - gaussian_state.ut).max() <= 1e-10

    def test_two_sided(self, gaussian_state, defocusing_exp):
        config = EvolutionConfig(dt=0.01, t_final=1.0, snapshot_stride=50)
        traj = evolve_two_sided(gaussian_state, config, defocusing_exp, t_backward=-1.0)
        assert traj.t_span == pytest.approx((-1.0, 1.0))
        assert np.sum(np.isclose(traj.times, 0.0)) == 1

    def test_time_reversal_symmetry(self, box_grid, defocusing_exp):
        u = np.exp(-(box_grid.x**2))
        ut = 0.5 * box_grid.x * np.exp(-(box_grid.x**2))
        state = PairState(grid=box_grid, u=u, ut=ut)
        config = EvolutionConfig(dt=1e-3, t_final=0.5, snapshot_stride=500, dealias=DealiasMode.NONE)
        ahead = evolve(state, config, defocusing_exp).snapshots[-1]
        mirrored = evolve(
            state.time_reversed(), config.model_copy(update={"t_final": -0.5}), defocusing_exp
        ).snapshots[0]
        assert np.abs(ahead.u - mirrored.u).max() <= 1e-11

    def test_focusing_blowup(self, q_grid, quintic_focusing):
        u = 3.0 * 2.0**0.25 * ground_state_profile(q_grid.x)
        state = PairState(grid=q_grid, u=u, ut=np.zeros(q_grid.n_points))
        config = EvolutionConfig(dt=1e-4, t_final=5.0, snapshot_stride=100)
        with pytest.raises(BlowupDetected) as info:
            evolve(state, config, quintic_focusing)
        assert info.value.time < 5.0
        assert info.value.max_abs > config.blowup_linf_threshold
        assert info.value.trajectory.snapshots[0].t == 0.0


class TestFirstOrder:
    def test_round_trip(self, box_grid):
        u = np.exp(-(box_grid.x**2))
        ut = np.sin(box_grid.x) * np.exp(-(box_grid.x**2) / 4.0)
        state = PairState(grid=box_grid, u=u, ut=ut, t=0.0)
        back = from_first_order(to_first_order(state))
        assert np.abs(back.u - u).max() <= 1e-13
        assert np.abs(back.ut - ut).max() <= 1e-12

    def test_quadratic_energy(self, box_grid, linear):
        u = np.exp(-(box_grid.x**2))
        ut = np.cos(box_grid.x) * np.exp(-(box_grid.x**2) / 2.0)
        state = PairState(grid=box_grid, u=u, ut=ut)
        lifted = apply_multiplier(to_first_order(state), MultiplierSymbol.bessel(1.0))
        half_norm = 0.5 * box_grid.dx * np.sum(np.abs(lifted.values) ** 2)
        assert energy(state, linear) == pytest.approx(half_norm, rel=1e-12)

    def test_complex_data_rejected(self, box_grid):
        with pytest.raises(ValidationError):
            PairState(grid=box_grid, u=1j * np.ones(box_grid.n_points), ut=np.zeros(box_grid.n_points))


# ─────────────────────────────────────────────────────────────────────────────
# NLS
# ─────────────────────────────────────────────────────────────────────────────


@pytest.fixture
def nls_grid() -> GridSpec:
    return GridSpec(half_length=20.0, n_points=512)


class TestNLS:
    def test_mass_conservation(self, nls_grid):
        w0 = SpectralField.from_function(nls_grid, lambda x: np.exp(-(x**2)) * np.exp(0.5j * x))
        sol = nls_evolve(w0, 1e-3, 1.0, mu=1, snapshot_stride=100)
        masses = [mass(sol.field_at(i)) for i in range(len(sol.times))]
        assert np.ptp(masses) / masses[0] <= 1e-12

    def test_small_amplitude_is_free_flow(self, nls_grid):
        w0 = SpectralField.from_function(nls_grid, lambda x: 1e-4 * np.exp(-(x**2)))
        sol = nls_evolve(w0, 1e-2, 1.0, mu=-1, snapshot_stride=100)
        expected = free_schrodinger_propagate(w0, 1.0).values
        assert np.abs(sol.fields[-1] - expected).max() <= 1e-14

    def test_standing_wave(self, nls_grid):
        sol = nls_evolve(standing_wave(nls_grid), 2.5e-4, 1.0, mu=-1, snapshot_stride=4000)
        exact = standing_wave(nls_grid, 1.0).values
        assert np.abs(np.abs(sol.fields[-1]) - np.abs(exact)).max() <= 1e-4
        assert np.abs(sol.fields[-1] - exact).max() <= 1e-4

    def test_standing_wave_amplitude(self, nls_grid):
        peak = np.abs(standing_wave(nls_grid).values).max()
        assert peak == pytest.approx((32.0 / 5.0) ** 0.25 * 3.0**0.25, rel=1e-12)

    def test_energy_conservation(self, nls_grid):
        w0 = SpectralField.from_function(nls_grid, lambda x: np.exp(-(x**2)))
        sol = nls_evolve(w0, 2.5e-4, 1.0, mu=1, snapshot_stride=1000)
        e0 = nls_energy(w0, 1)
        drift = max(abs(nls_energy(sol.field_at(i), 1) - e0) for i in range(len(sol.times))) / e0
        assert drift <= 1e-6

    def test_invalid_sign_rejected(self, nls_grid):
        w0 = SpectralField.zeros(nls_grid)
        with pytest.raises(InvalidInputError):
            nls_step(w0, 1e-3, 0)

    def test_ground_state_peak(self):
        assert ground_state_profile(np.array([0.0]))[0] == pytest.approx(3.0**0.25, rel=1e-15)
        assert np.isfinite(ground_state_profile(np.array([1e4]))).all()
