"""Reports, sweeps, initial data and the experiment runners."""

import numpy as np
import pandas as pd
import pytest
from pydantic import ValidationError

from src.dynamics import DealiasMode, EvolutionConfig, PairState
from src.exceptions import InvalidInputError
from src.experiments import (
    BUBBLE_THETA,
    ExperimentReport,
    Flag,
    NLSLimitParams,
    ProfileKind,
    ProfileSpec,
    SweepPool,
    SweepStatus,
    build_bubble,
    build_initial_data,
    bubble_field,
    run_decay_battery,
    run_identity_battery,
    run_nls_limit,
    run_scattering,
    run_simulation,
    run_soliton_death_monitors,
    run_symmetry_battery,
    run_threshold,
    run_twin_stability,
    to_builtin,
    unit_mass_gaussian,
    unit_perturbation,
)
from src.observables import mass
from src.spectral_core import GridSpec, SpectralField, low_pass, sobolev_norm


# ─────────────────────────────────────────────────────────────────────────────
# Reports
# ─────────────────────────────────────────────────────────────────────────────


class TestFlags:
    def test_at_most(self):
        assert Flag.at_most("drift", 1e-7, 1e-6).passed
        assert not Flag.at_most("drift", 1e-5, 1e-6).passed

    def test_at_least(self):
        flag = Flag.at_least("slack", 0.0, -1e-10)
        assert flag.passed
        assert flag.comparison.value == ">="

    def test_holds(self):
        assert Flag.holds("ok", True).value == 1.0
        assert not Flag.holds("ok", False).passed

    def test_report(self):
        report = ExperimentReport(name="demo")
        assert report.all_passed
        report.flag(Flag.at_most("a", 1.0, 2.0))
        report.flag(Flag.at_most("b", 3.0, 2.0))
        assert not report.all_passed
        assert [f.name for f in report.failed_flags] == ["b"]
        assert report.tolerances() == {"a": 2.0, "b": 2.0}

    def test_to_builtin(self):
        out = to_builtin({"x": np.float64(1.5), "arr": np.arange(3), "kind": ProfileKind.GAUSSIAN, 2: (np.int64(4),)})
        assert out == {"x": 1.5, "arr": [0, 1, 2], "kind": "gaussian", "2": [4]}
        assert type(out["x"]) is float


class TestSweepPool:
    @pytest.mark.parametrize("threads", [1, 4])
    def test_results_keep_submission_order(self, threads):
        pool = SweepPool(threads=threads)
        assert pool.map("square", lambda v: v * v, [3, 1, 2]) == [9, 1, 4]
        summary = pool.get_summary()
        assert summary.total == 3
        assert summary.completed == 3
        assert [t.label for t in pool.tasks()] == ["square[0]", "square[1]", "square[2]"]

    @pytest.mark.parametrize("threads", [1, 3])
    def test_failure_is_reraised(self, threads):
        def fn(v):
            if v == 2:
                raise InvalidInputError("bad point")
            return v

        pool = SweepPool(threads=threads)
        with pytest.raises(InvalidInputError, match="bad point"):
            pool.map("fail", fn, [1, 2, 3])
        statuses = [t.status for t in pool.tasks()]
        assert statuses == [SweepStatus.COMPLETED, SweepStatus.FAILED, SweepStatus.COMPLETED]
        assert pool.get_summary().failed == 1


# ─────────────────────────────────────────────────────────────────────────────
# Initial data
# ─────────────────────────────────────────────────────────────────────────────


class TestProfiles:
    def test_gaussian(self, box_grid):
        state = build_initial_data(box_grid, ProfileSpec(amplitude=2.0, width=1.5, center=1.0))
        assert np.allclose(state.u, 2.0 * np.exp(-(((box_grid.x - 1.0) / 1.5) ** 2)))
        assert np.all(state.ut == 0.0)

    def test_moving_gaussian(self, box_grid):
        state = build_initial_data(box_grid, ProfileSpec(velocity=0.5))
        ux = -2.0 * box_grid.x * np.exp(-(box_grid.x**2))
        assert np.abs(state.ut + 0.5 * ux).max() <= 1e-12

    def test_ground_state(self, q_grid):
        state = build_initial_data(q_grid, ProfileSpec(kind=ProfileKind.GROUND_STATE))
        assert state.u.max() == pytest.approx(2.0**0.25 * 3.0**0.25, rel=1e-14)

    def test_sample_file(self, tmp_path, small_grid):
        path = tmp_path / "samples.csv"
        pd.DataFrame({"u": np.cos(small_grid.x), "ut": np.zeros(small_grid.n_points)}).to_csv(path, index=False)
        spec = ProfileSpec(kind=ProfileKind.SAMPLE_FILE, path=str(path), amplitude=0.5)
        state = build_initial_data(small_grid, spec)
        assert np.allclose(state.u, 0.5 * np.cos(small_grid.x))

    def test_sample_file_wrong_length(self, tmp_path, small_grid):
        path = tmp_path / "short.csv"
        pd.DataFrame({"u": [0.0, 1.0], "ut": [0.0, 0.0]}).to_csv(path, index=False)
        with pytest.raises(InvalidInputError):
            build_initial_data(small_grid, ProfileSpec(kind=ProfileKind.SAMPLE_FILE, path=str(path)))

    def test_sample_file_missing(self, small_grid):
        with pytest.raises(InvalidInputError):
            build_initial_data(small_grid, ProfileSpec(kind=ProfileKind.SAMPLE_FILE, path="/nonexistent.csv"))

    def test_unit_mass_gaussian(self, box_grid):
        assert mass(unit_mass_gaussian(box_grid, 2.0)) == pytest.approx(1.0, rel=1e-12)

    def test_unit_perturbation(self, box_grid):
        g = unit_perturbation(box_grid, 0.6)
        assert sobolev_norm(SpectralField(grid=box_grid, values=g.u), 0.6) == pytest.approx(1.0, rel=1e-12)
        assert np.argmax(g.u) != box_grid.n_points // 2


# ─────────────────────────────────────────────────────────────────────────────
# NLS bubbles
# ─────────────────────────────────────────────────────────────────────────────


@pytest.fixture
def bubble_profile() -> SpectralField:
    return unit_mass_gaussian(GridSpec(half_length=20.0, n_points=512))


class TestBubbles:
    def test_params_validation(self, bubble_profile):
        assert NLSLimitParams(lam=4.0, profile=bubble_profile).theta == BUBBLE_THETA
        with pytest.raises(ValidationError):
            NLSLimitParams(lam=0.5, profile=bubble_profile)
        with pytest.raises(ValidationError):
            NLSLimitParams(lam=4.0, theta=0.5, profile=bubble_profile)

    def test_bubble_preserves_mass(self, bubble_profile):
        params = NLSLimitParams(lam=4.0, profile=bubble_profile)
        field = bubble_field(params)
        truncated = low_pass(bubble_profile, params.frequency_cut)
        assert field.grid.half_length == pytest.approx(80.0)
        assert mass(field) == pytest.approx(mass(truncated), rel=1e-10)

    def test_bubble_samples_profile_at_nodes(self, bubble_profile):
        params = NLSLimitParams(lam=4.0, profile=bubble_profile)
        field = bubble_field(params)
        truncated = low_pass(bubble_profile, params.frequency_cut)
        assert np.abs(field.values - truncated.values / 2.0).max() <= 1e-12

    def test_bubble_state(self, bubble_profile):
        state = build_bubble(NLSLimitParams(lam=4.0, profile=bubble_profile))
        assert np.abs(state.ut).max() <= 1e-12
        assert state.u.max() > 0.0

    def test_limit_needs_nonlinearity(self, bubble_profile, linear):
        with pytest.raises(InvalidInputError):
            run_nls_limit(bubble_profile, linear, lambdas=[4.0])

    @pytest.mark.slow
    def test_limit_sequence_with_dt_halving(self, defocusing_exp):
        state = build_initial_data(GridSpec(half_length=20.0, n_points=512), ProfileSpec())
        profile = SpectralField(grid=state.grid, values=state.u)
        report = run_nls_limit(profile, defocusing_exp, lambdas=[4.0, 8.0, 16.0], check_dt_halving=True)
        assert report.all_passed, report.failed_flags
        tolerances = report.tolerances()
        for tag in ("[lambda=4]", "[lambda=8]", "[lambda=16]"):
            assert f"dt_halving{tag}" in tolerances
            assert report.results[f"lambda{tag}"]["dt_halving_change"] <= 1e-5
        discrepancies = report.results["discrepancies"]
        assert len(discrepancies) == 3
        assert discrepancies[2] < discrepancies[1] < discrepancies[0]


# ─────────────────────────────────────────────────────────────────────────────
# Batteries and plain runs
# ─────────────────────────────────────────────────────────────────────────────


class TestBatteries:
    def test_identity_battery(self):
        report = run_identity_battery(seed=0)
        assert report.all_passed, report.failed_flags
        assert "cos5_identity" in report.tolerances()

    def test_identity_battery_is_reproducible(self):
        a = run_identity_battery(seed=3)
        b = run_identity_battery(seed=3)
        assert [f.value for f in a.flags] == [f.value for f in b.flags]

    @pytest.mark.slow
    def test_symmetry_battery(self, wide_gaussian):
        report = run_symmetry_battery(wide_gaussian)
        assert report.all_passed, report.failed_flags

    def test_decay_battery(self):
        grid = GridSpec(half_length=400.0, n_points=8192)
        f = SpectralField.from_function(grid, lambda x: np.exp(-(x**2)))
        report = run_decay_battery(f)
        assert report.all_passed, report.failed_flags
        assert set(report.results) == {"p[6]", "p[inf]"}


class TestSimulation:
    def test_defocusing_run(self, gaussian_state, defocusing_exp):
        config = EvolutionConfig(dt=5e-4, t_final=1.0, snapshot_stride=100, dealias=DealiasMode.NONE)
        report = run_simulation(gaussian_state, defocusing_exp, config)
        assert report.all_passed, report.failed_flags
        assert report.results["blowup"] is False
        assert len(report.series.times) == 21
        assert report.results["s6_refinement_change"] <= 1e-2

    def test_coarse_snapshots_fail_refinement(self, gaussian_state, defocusing_exp):
        # snapshots at t = 0, 2, 4 only
        config = EvolutionConfig(dt=0.01, t_final=4.0, snapshot_stride=200, dealias=DealiasMode.NONE)
        report = run_simulation(gaussian_state, defocusing_exp, config)
        assert "s6_refinement" in [f.name for f in report.failed_flags]

    def test_blowup_is_a_result(self, q_grid, quintic_focusing):
        state = build_initial_data(q_grid, ProfileSpec(kind=ProfileKind.GROUND_STATE, amplitude=3.0))
        config = EvolutionConfig(dt=1e-4, t_final=5.0, snapshot_stride=100)
        report = run_simulation(state, quintic_focusing, config)
        assert report.results["blowup"] is True
        assert report.results["blowup_time"] < 5.0
        assert report.flags == []
        assert report.series is not None


# ─────────────────────────────────────────────────────────────────────────────
# Sweeps
# ─────────────────────────────────────────────────────────────────────────────


@pytest.fixture
def short_config() -> EvolutionConfig:
    return EvolutionConfig(dt=0.01, t_final=2.0, snapshot_stride=10, dealias=DealiasMode.NONE)


class TestScattering:
    def test_zero_amplitude(self, box_grid, defocusing_exp, short_config):
        report = run_scattering(box_grid, ProfileSpec(), [0.0], defocusing_exp, short_config, checkpoints=(1.0, 2.0))
        assert report.all_passed, report.failed_flags
        assert report.results["amplitude[a=0]"]["energy"] == 0.0

    def test_linear_flow(self, box_grid, linear, short_config):
        report = run_scattering(box_grid, ProfileSpec(), [1.0], linear, short_config, checkpoints=(1.0, 2.0))
        assert report.all_passed, report.failed_flags
        assert report.results["amplitude[a=1]"]["energy_identity_gap"] <= 1e-10
        assert "s6_refinement[a=1]" in report.tolerances()
        assert report.series is not None

    @pytest.mark.slow
    def test_defocusing_scatters(self, defocusing_exp):
        grid = GridSpec(half_length=200.0, n_points=4096)
        config = EvolutionConfig(dt=1e-3, t_final=55.0, snapshot_stride=100)
        report = run_scattering(grid, ProfileSpec(), [0.5], defocusing_exp, config, checkpoints=(20.0, 30.0, 40.0, 50.0))
        assert report.all_passed, report.failed_flags
        result = report.results["amplitude[a=0.5]"]
        assert result["forward"]["monotone"] and result["backward"]["monotone"]
        assert result["energy_identity_gap"] <= 2e-2
        assert result["s6_tail_fraction"] < 1e-3


class TestStability:
    def test_delta_validation(self, gaussian_state, defocusing_exp, short_config):
        with pytest.raises(InvalidInputError):
            run_twin_stability(gaussian_state, defocusing_exp, short_config, deltas=[0.5])
        with pytest.raises(InvalidInputError):
            run_twin_stability(gaussian_state, defocusing_exp, short_config, deltas=[-1e-3])

    def test_linear_response_is_proportional(self, gaussian_state, linear, short_config):
        report = run_twin_stability(gaussian_state, linear, short_config, deltas=[1e-3, 1e-2])
        assert report.all_passed, report.failed_flags
        assert report.results["response_ratio[0.001->0.01]"] == pytest.approx(10.0, rel=1e-8)

    def test_defocusing_twins(self, gaussian_state, defocusing_exp, short_config):
        report = run_twin_stability(gaussian_state, defocusing_exp, short_config, deltas=[1e-3, 1e-2])
        assert report.all_passed, report.failed_flags


class TestSolitonDeath:
    def test_zero_data(self, box_grid):
        config = EvolutionConfig(dt=0.01, t_final=0.5, snapshot_stride=5)
        report = run_soliton_death_monitors(PairState.zeros(box_grid), config, [10.0, 20.0])
        assert report.all_passed, report.failed_flags

    def test_defocusing_run(self, gaussian_state):
        config = EvolutionConfig(dt=1e-3, t_final=1.0, snapshot_stride=2, dealias=DealiasMode.NONE)
        report = run_soliton_death_monitors(gaussian_state, config, [10.0])
        assert report.all_passed, report.failed_flags
        assert report.series is not None
        assert report.results["even_data"] is True
        assert report.tolerances()["center_symmetry[R=10]"] == 1e-10
        assert report.results["R[R=10]"]["max_abs_x_r"] <= 1e-10

    def test_off_center_data_skips_symmetry(self, box_grid):
        state = build_initial_data(box_grid, ProfileSpec(center=1.0))
        config = EvolutionConfig(dt=1e-3, t_final=0.2, snapshot_stride=2, dealias=DealiasMode.NONE)
        report = run_soliton_death_monitors(state, config, [10.0])
        assert report.results["even_data"] is False
        assert "center_symmetry[R=10]" not in report.tolerances()
        assert report.results["R[R=10]"]["max_abs_x_r"] > 1e-3

    def test_nonzero_momentum_rejected(self, box_grid):
        state = build_initial_data(box_grid, ProfileSpec(velocity=0.3))
        config = EvolutionConfig(dt=0.01, t_final=0.5)
        with pytest.raises(InvalidInputError):
            run_soliton_death_monitors(state, config, [10.0])

    def test_radius_must_fit_box(self, gaussian_state):
        with pytest.raises(InvalidInputError):
            run_soliton_death_monitors(gaussian_state, EvolutionConfig(t_final=0.5), [30.0])


class TestThreshold:
    @pytest.mark.slow
    def test_sub_and_above_threshold(self):
        grid = GridSpec(half_length=100.0, n_points=2048)
        config = EvolutionConfig(dt=1e-3, snapshot_stride=100)
        report = run_threshold(grid, [0.5, 3.0], config)
        assert report.all_passed, report.failed_flags
        assert report.results["a[a=0.5]"]["regime"] == "subthreshold"
        assert report.results["a[a=0.5]"]["blowup"] is False
        assert report.results["a[a=3]"]["blowup"] is True
        assert report.results["a[a=3]"]["blowup_time"] < 5.0
