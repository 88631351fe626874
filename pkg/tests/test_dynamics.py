'''
Tests for the state container, the time stepper, the nonlinear term
and the linear/remainder split.
'''

import numpy as np
import pytest

from rotstrat.dynamics import (
    SimState,
    SplitTracker,
    StepperConfig,
    convergence_order,
    estimate_dt,
    lambda_r_split,
    nonlinear_rhs,
    run,
    step,
    )
from rotstrat.diagnostics import Observer
from rotstrat.linops import PhysParams, apply_propagator
from rotstrat.reference import VortexParams, vortex_state
from rotstrat.spectral import (
    SpectralField,
    baroclinic_part,
    dealias,
    divergence_residual,
    energy,
    l2_norm,
    parity_residual,
    plane_to_volume,
    sample_physical,
    to_spectral,
    )
from rotstrat.validation import NumericalError, SpecError

from conftest import random_state


def _radial_vortex(grid):
    ''' swirl of the stream function e^{-|x|²/8} with Gaussian ū3 and θ̄ '''
    def fields(X1, X2):
        g = np.exp(-(X1 ** 2 + X2 ** 2) / 8.0)
        return np.stack([-0.25 * X2 * g, 0.25 * X1 * g, g, 0.5 * g])

    return dealias(plane_to_volume(to_spectral(sample_physical(grid, fields))))


class TestSimState:

    def test_plane_field_rejected(self, grid, params):
        with pytest.raises(SpecError, match='four-component volume'):
            SimState(SpectralField.zeros(grid, plane=True), 0.0, params)

    def test_background_required(self, grid, params):
        with pytest.raises(TypeError):
            SimState(SpectralField.zeros(grid), 0.0, params, 'background_perturbation')

    def test_background_gamma_must_match(self, grid, params):
        with pytest.raises(SpecError, match='oscillates'):
            SimState(
                SpectralField.zeros(grid), 0.0, params, 'background_perturbation',
                VortexParams(A=1.0, Gamma=1.0),
                )

    def test_background_only_in_perturbation_mode(self, grid, params):
        with pytest.raises(SpecError):
            SimState(SpectralField.zeros(grid), 0.0, params, background=VortexParams(Gamma=3.0))

    def test_evolve_keeps_run_settings(self, grid, params):
        s = SimState(SpectralField.zeros(grid), 0.0, params)
        later = s.evolve(random_state(grid), 1.5)
        assert later.t == 1.5
        assert later.params is params
        assert later.formulation == 'full'


class TestStepperConfig:

    def test_schedule_shortens_step(self):
        assert StepperConfig(dt=0.3).schedule(1.0) == (4, 0.25)

    def test_schedule_exact_multiple(self):
        nsteps, dt = StepperConfig(dt=0.1).schedule(1.0)
        assert nsteps == 10
        assert dt == pytest.approx(0.1)

    def test_zero_duration(self):
        assert StepperConfig(dt=0.1).schedule(0.0) == (0, 0.1)

    def test_missing_dt(self):
        with pytest.raises(SpecError, match='dt is not set'):
            StepperConfig().schedule(1.0)

    def test_cfl_limit(self):
        with pytest.raises(ValueError):
            StepperConfig(cfl_target=0.6)

    def test_unknown_scheme(self):
        with pytest.raises(ValueError):
            StepperConfig(scheme='euler')

    def test_with_dt(self):
        cfg = StepperConfig(linear=True, dt_max=0.2)
        other = cfg.with_dt(0.01)
        assert other.dt == 0.01 and other.linear and other.dt_max == 0.2
        assert cfg.dt is None


class TestEstimateDt:

    def test_motionless_state_gets_dt_max(self, grid, params):
        s = SimState(SpectralField.zeros(grid), 0.0, params)
        assert estimate_dt(s, 0.5, 0.05) == 0.05

    def test_uniform_flow(self, grid, params):
        v = SpectralField.zeros(grid)
        v.coeffs[0, 0, 0, 0] = 2.0
        s = SimState(v, 0.0, params)
        # spacing is min(dx, Lz/Nv) = 0.25
        assert estimate_dt(s, 0.5, 1.0) == pytest.approx(0.0625)

    def test_background_velocity_counts(self, grid):
        params = PhysParams(Gamma=1.0)
        s = SimState(
            SpectralField.zeros(grid), 0.0, params, 'background_perturbation',
            VortexParams(A=50.0, Gamma=1.0),
            )
        assert estimate_dt(s, 0.5, 1.0) < 1.0


class TestNonlinearTerm:

    def test_conserves_energy(self, grid, params):
        ''' the projected advection term is orthogonal to the state '''
        v = random_state(grid, seed=21)
        rhs = nonlinear_rhs(SimState(v, 0.0, params)).coeffs
        inner = np.sum(np.conj(v.coeffs) * rhs).real
        scale = np.sqrt(np.sum(np.abs(v.coeffs) ** 2) * np.sum(np.abs(rhs) ** 2))
        assert abs(inner) < 1e-10 * scale

    def test_is_projected_and_dealiased(self, grid, params):
        out = nonlinear_rhs(SimState(random_state(grid, seed=22), 0.0, params))
        assert divergence_residual(out) < 1e-12
        assert np.all(out.coeffs[:, ~grid.mask] == 0)

    def test_radial_vortex_has_no_advection(self, wide_grid):
        ''' azimuthal flow around radial ω̄3, ū3 and θ̄ advects nothing '''
        v = _radial_vortex(wide_grid)
        rhs = nonlinear_rhs(SimState(v, 0.0, PhysParams(Omega=1.0, Gamma=1.0)))
        assert l2_norm(rhs) < 1e-8 * l2_norm(v)

    def test_background_self_interaction_removed(self, grid):
        params = PhysParams(Gamma=1.0)
        s = SimState(
            SpectralField.zeros(grid), 0.3, params, 'background_perturbation',
            VortexParams(A=1.0, B1=0.5, Gamma=1.0),
            )
        assert np.abs(nonlinear_rhs(s).coeffs).max() == 0


class TestStepper:
    ''' integrating factor RK4 driven through run and step '''

    def test_linear_step_is_the_propagator(self, grid, params, state):
        out = step(SimState(state, 0.0, params), StepperConfig(dt=0.05, linear=True))
        expected = apply_propagator(state, 0.05, params)
        np.testing.assert_allclose(out.v.coeffs, expected.coeffs, atol=1e-14)
        assert out.t == pytest.approx(0.05)

    def test_mutated_params_take_effect(self, state):
        params = PhysParams(Omega=1.0, Gamma=1.0, nu=0.1)
        cfg = StepperConfig(dt=0.05, linear=True)
        step(SimState(state, 0.0, params), cfg)
        params.nu = 0.7
        out = step(SimState(state, 0.0, params), cfg)
        expected = apply_propagator(state, 0.05, PhysParams(Omega=1.0, Gamma=1.0, nu=0.7))
        np.testing.assert_allclose(out.v.coeffs, expected.coeffs, atol=1e-14)

    def test_gaussian_spreads_like_the_heat_kernel(self, wide_grid):
        ''' (ū3, θ̄) rotate at rate Γ while their magnitude follows the heat kernel '''
        params = PhysParams(Omega=0.0, Gamma=1.0, nu=1.0)
        v0 = vortex_state(wide_grid, VortexParams(B1=1.0, Gamma=1.0))
        traj = run(SimState(v0, 0.0, params), StepperConfig(dt=0.05, linear=True), 0.5)
        u3, theta = wide_grid.inverse(traj.final.v.coeffs)[2:, ..., 0]

        X1, X2 = wide_grid.coordinates()
        kernel = np.exp(-(X1 ** 2 + X2 ** 2) / 6.0) / (6.0 * np.pi)
        np.testing.assert_allclose(np.hypot(u3, theta), kernel, rtol=0, atol=1e-8 * kernel.max())

    def test_radial_vortex_evolves_linearly(self, wide_grid):
        s = SimState(_radial_vortex(wide_grid), 0.0, PhysParams(Omega=1.0, Gamma=1.0, nu=1.0))
        full = run(s, StepperConfig(dt=0.05), 0.5).final.v
        linear = run(s, StepperConfig(dt=0.05, linear=True), 0.5).final.v
        assert l2_norm(full - linear) < 1e-8 * l2_norm(linear)

    def test_nonlinear_run_tracks_the_vortex_family(self, wide_grid):
        p = VortexParams(B1=1.0, B2=-0.5, Gamma=2.0)
        params = PhysParams(Omega=0.5, Gamma=2.0, nu=1.0)
        observe = Observer(
            ['tracking_error'],
            reference=lambda t: vortex_state(wide_grid, p, t, images=1),
            )
        v0 = vortex_state(wide_grid, p, images=1)
        traj = run(SimState(v0, 0.0, params), StepperConfig(dt=0.05), 1.0, observe=observe)
        assert traj.values('tracking_error').max() < 1e-7

    def test_step_requires_dt(self, grid, params, state):
        with pytest.raises(SpecError):
            step(SimState(state, 0.0, params), StepperConfig())

    def test_fourth_order(self, grid):
        ''' errors against a fine-step run shrink like dt⁴ '''
        params = PhysParams(Omega=1.0, Gamma=1.0, nu=0.01)
        s = SimState(random_state(grid, seed=4), 0.0, params)
        T = 0.1

        def final(dt):
            traj = run(s, StepperConfig(dt=dt), T, cadence=10_000)
            return traj.final.v

        reference = final(T / 64)
        dts = [T / 4, T / 8, T / 16]
        errors = [l2_norm(final(dt) - reference) for dt in dts]
        assert convergence_order(errors, dts) == pytest.approx(4.0, abs=0.3)

    def test_records_follow_cadence(self, grid, params, state):
        traj = run(
            SimState(state, 0.0, params),
            StepperConfig(dt=0.01),
            0.1,
            cadence=3,
            observe=lambda s: {'norm': l2_norm(s.v)},
            )
        assert traj.nsteps == 10
        assert traj.n_records == 5
        np.testing.assert_allclose(traj.times, [0.0, 0.03, 0.06, 0.09, 0.1])
        norms = traj.values('norm')
        assert np.all(np.diff(norms) < 0)

    def test_states_can_be_dropped(self, grid, params, state):
        traj = run(SimState(state, 0.0, params), StepperConfig(dt=0.05), 0.1, keep_states=False)
        assert traj.states is None
        with pytest.raises(ValueError, match='kept no states'):
            traj.final

    def test_default_cadence(self, grid, params, state):
        traj = run(SimState(state, 0.0, params), StepperConfig(dt=0.001, linear=True), 1.0, keep_states=False)
        assert traj.cadence == 5
        assert traj.n_records == 201

    def test_deterministic(self, grid, params, state):
        s = SimState(state, 0.0, params)
        a = run(s, StepperConfig(dt=0.02), 0.1).final.v.coeffs
        b = run(s, StepperConfig(dt=0.02), 0.1).final.v.coeffs
        assert np.array_equal(a, b)

    def test_blow_up_guard(self, grid):
        params = PhysParams(Omega=0.0, Gamma=1.0, nu=0.0)
        s = SimState(random_state(grid, seed=9, scale=1e3), 0.0, params)
        with pytest.raises(NumericalError):
            run(s, StepperConfig(dt=0.05), 5.0, keep_states=False)

    def test_convergence_order_inputs(self):
        with pytest.raises(ValueError):
            convergence_order([1e-3], [0.1])
        with pytest.raises(ValueError):
            convergence_order([0.0, 1e-3], [0.1, 0.2])
        assert convergence_order([16.0, 1.0], [2.0, 1.0]) == pytest.approx(4.0)


class TestStressFree:
    ''' the nonlinear stepper between stress-free walls '''

    @pytest.fixture
    def inviscid(self):
        return PhysParams(Omega=1.0, Gamma=1.0, nu=0.0)

    def test_nonlinear_term_keeps_parity_and_energy(self, sf_grid, inviscid):
        v = random_state(sf_grid, seed=23)
        rhs = nonlinear_rhs(SimState(v, 0.0, inviscid))
        assert parity_residual(rhs) == 0
        assert divergence_residual(rhs) < 1e-12
        inner = np.sum(np.conj(v.coeffs) * rhs.coeffs).real
        scale = np.sqrt(np.sum(np.abs(v.coeffs) ** 2) * np.sum(np.abs(rhs.coeffs) ** 2))
        assert abs(inner) < 1e-10 * scale

    def test_inviscid_run_keeps_parity_and_energy(self, sf_grid, inviscid):
        v = random_state(sf_grid, seed=24)
        traj = run(SimState(v, 0.0, inviscid), StepperConfig(dt=1e-3), 0.02)
        assert traj.nsteps == 20
        final = traj.final.v
        assert parity_residual(final) == 0
        assert divergence_residual(final) < 1e-12
        assert energy(final) == pytest.approx(energy(v), rel=1e-10)

    def test_viscous_decay_of_the_first_wall_mode(self, sf_grid):
        ''' sin(πx3) in θ is the slowest baroclinic mode, rate π²ν '''
        def layer(X1, X2, X3):
            zero = np.zeros_like(X1)
            return np.stack([zero, zero, zero, np.sin(np.pi * X3)])

        v = to_spectral(sample_physical(sf_grid, layer, plane=False))
        params = PhysParams(Omega=1.0, Gamma=1.0, nu=0.1)
        out = run(SimState(v, 0.0, params), StepperConfig(dt=0.05, linear=True), 0.5).final.v
        assert l2_norm(out) == pytest.approx(np.exp(-np.pi ** 2 * 0.1 * 0.5) * l2_norm(v), rel=1e-12)
        assert parity_residual(out) == 0


class TestLambdaRSplit:
    ''' v = λ + r with λ the band-limited linear evolution '''

    def test_wide_band_leaves_no_remainder_at_start(self, grid, params):
        v0 = baroclinic_part(random_state(grid, seed=31))
        lam, r = SplitTracker(v0, 100.0, params).split(v0, 0.0)
        np.testing.assert_allclose(lam.coeffs, v0.coeffs)
        assert np.abs(r.coeffs).max() == 0

    def test_no_backwards_evolution(self, grid, params):
        tracker = SplitTracker(random_state(grid), 2.0, params, t0=1.0)
        with pytest.raises(SpecError, match='backwards'):
            tracker.lam(0.5)

    def test_linear_run_has_no_remainder(self, grid, params):
        v0 = baroclinic_part(random_state(grid, seed=32))
        split, traj = lambda_r_split(v0, 100.0, params, 0.1, 0.01, linear=True)
        assert len(split.r) == traj.n_records
        for r in split.r:
            assert l2_norm(r) < 1e-12 * l2_norm(v0)

    def test_barotropic_data_rejected(self, grid, params, state):
        with pytest.raises(SpecError, match='baroclinic'):
            lambda_r_split(state, 2.0, params, 0.1, 0.01)
