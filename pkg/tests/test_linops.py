'''
Tests for the eigenframes of the linear operator, the projections and
the exact propagator.
'''

import numpy as np
import pytest
from scipy.linalg import expm

from rotstrat.linops import (
    PhysParams,
    Propagator,
    ageostrophic_project,
    apply_propagator,
    band_project,
    chi,
    geostrophic_project,
    helmholtz_matrix,
    helmholtz_project,
    linear_propagator,
    mode_frame,
    pjp_matrix,
    rotate_frame,
    wave_project,
    )
from rotstrat.spectral import (
    SpectralField,
    divergence_residual,
    energy,
    l2_norm,
    )
from rotstrat.validation import SpecError

from conftest import random_state


WAVEVECTORS = [
    (1.0, 2.0, 2.0 * np.pi),
    (0.0, 0.0, 2.0 * np.pi),
    (3.0, -1.0, 0.0),
    (0.5, 0.0, -4.0 * np.pi),
    ]


class TestPhysParams:

    def test_eta(self):
        assert PhysParams(Omega=3.0, Gamma=2.0).eta == pytest.approx(1.5)

    def test_zero_gamma(self):
        with pytest.raises(SpecError, match="'Gamma' must be nonzero"):
            PhysParams(Gamma=0.0)

    def test_replace_and_equality(self):
        p = PhysParams(Omega=1.0, Gamma=2.0, nu=0.1)
        q = p.replace(Omega=4.0)
        assert q.eta == pytest.approx(2.0)
        assert q.nu == 0.1
        assert p.replace() == p

    def test_compared_by_value_not_hashed(self):
        p = PhysParams(Omega=1.0, Gamma=2.0, nu=0.1)
        assert p.as_tuple() == (1.0, 2.0, 0.1)
        with pytest.raises(TypeError):
            hash(p)

    def test_negative_viscosity(self):
        with pytest.raises(ValueError):
            PhysParams(nu=-1.0)


class TestFrames:

    @pytest.mark.parametrize('bc', ['periodic', 'stress-free'])
    @pytest.mark.parametrize('k', WAVEVECTORS)
    @pytest.mark.parametrize('eta', [0.0, 0.7, -2.0])
    def test_eigenstructure(self, k, eta, bc):
        params = PhysParams(Omega=eta, Gamma=1.0)
        frame = mode_frame(k, params, bc)
        M = pjp_matrix(k, params, bc)
        B = frame.basis

        np.testing.assert_allclose(B.conj().T @ B, np.eye(4), atol=1e-12)
        np.testing.assert_allclose(M @ frame.a_g, 0, atol=1e-12)
        np.testing.assert_allclose(M @ frame.a_0, 0, atol=1e-12)
        np.testing.assert_allclose(M @ frame.a_plus, 1j * frame.p_eta * frame.a_plus, atol=1e-12)
        np.testing.assert_allclose(M @ frame.a_minus, -1j * frame.p_eta * frame.a_minus, atol=1e-12)

    def test_skew_hermitian(self):
        M = pjp_matrix((1.0, 2.0, 3.0), PhysParams(Omega=0.4))
        np.testing.assert_allclose(M.conj().T, -M, atol=1e-14)

    def test_p_eta_formula(self):
        k = np.array([3.0, 4.0, 2.0 * np.pi])
        frame = mode_frame(k, PhysParams(Omega=2.0, Gamma=1.0))
        expected = np.sqrt(25.0 + (2.0 * k[2]) ** 2) / np.linalg.norm(k)
        assert frame.p_eta == pytest.approx(expected)

    def test_geostrophic_vector_is_divergence_free(self):
        k = np.array([1.0, -2.0, 2.0 * np.pi])
        a_g = mode_frame(k, PhysParams(Omega=0.5)).a_g
        assert abs(k @ a_g[:3]) < 1e-12

    def test_zero_wavevector(self):
        with pytest.raises(SpecError, match='zero wavevector'):
            mode_frame((0.0, 0.0, 0.0), PhysParams())

    def test_helmholtz_matrix_is_projector(self):
        P = helmholtz_matrix((1.0, 2.0, 3.0))
        np.testing.assert_allclose(P @ P, P, atol=1e-14)
        assert P[3, 3] == 1.0

    def test_mode_table_is_cached_and_read_only(self, grid):
        table = grid.mode_table(0.5)
        assert grid.mode_table(0.5) is table
        with pytest.raises(ValueError):
            table.a_g[0, 1, 0, 1] = 0


class TestProjections:

    def test_helmholtz_projection(self, grid):
        rng = np.random.default_rng(0)
        v = SpectralField(grid.forward(rng.standard_normal((4, *grid.shape))), grid)
        out = helmholtz_project(v)
        assert divergence_residual(out) < 1e-12
        np.testing.assert_allclose(helmholtz_project(out).coeffs, out.coeffs, atol=1e-14)
        np.testing.assert_allclose(out.coeffs[3], v.coeffs[3])

    def test_geostrophic_split(self, grid, params, state):
        geo = geostrophic_project(state, params)
        ageo = ageostrophic_project(state, params)
        np.testing.assert_allclose((geo + ageo).coeffs, state.coeffs, atol=1e-14)
        np.testing.assert_allclose(geostrophic_project(geo, params).coeffs, geo.coeffs, atol=1e-13)
        assert energy(geo) + energy(ageo) == pytest.approx(energy(state), rel=1e-12)

    def test_wave_projections_are_orthogonal(self, params, state):
        plus = wave_project(state, params, '+')
        minus = wave_project(state, params, '-')
        inner = np.sum(np.conj(plus.coeffs) * minus.coeffs)
        assert abs(inner) < 1e-12 * energy(state)

    def test_geostrophic_modes_do_not_move(self, params, state):
        geo = geostrophic_project(state, params.replace(nu=0.0))
        out = apply_propagator(geo, 0.7, params.replace(nu=0.0))
        np.testing.assert_allclose(out.coeffs, geo.coeffs, atol=1e-12)

    def test_chi_profile(self):
        r = np.array([0.0, 1.0, 1.5, 2.0, 3.0])
        out = chi(r)
        assert out[0] == out[1] == 1.0
        assert out[2] == pytest.approx(0.5)
        assert out[3] == out[4] == 0.0
        assert np.all(np.diff(chi(np.linspace(0, 3, 301))) <= 0)

    def test_band_projection(self, grid, state):
        low = band_project(state, 2.0)
        k = np.sqrt(grid.k_sq)
        assert np.all(low.coeffs[:, k >= 4.0] == 0)
        np.testing.assert_allclose(low.coeffs[:, k <= 2.0], state.coeffs[:, k <= 2.0])


class TestPropagator:
    ''' exact linear flow against scipy's expm and its group law '''

    @pytest.mark.parametrize('bc', ['periodic', 'stress-free'])
    @pytest.mark.parametrize('k', WAVEVECTORS)
    def test_matches_matrix_exponential(self, k, bc):
        params = PhysParams(Omega=1.3, Gamma=2.0, nu=0.05)
        k = np.asarray(k)
        generator = -params.nu * k.dot(k) * np.eye(4) - params.Gamma * pjp_matrix(k, params, bc)
        E = linear_propagator(k, params, 0.37, bc)
        np.testing.assert_allclose(E, expm(0.37 * generator), atol=1e-10)

    def test_group_property(self):
        params = PhysParams(Omega=0.8, Gamma=1.5, nu=0.2)
        k = (1.0, 2.0, 2.0 * np.pi)
        a, b = 0.21, 0.55
        product = linear_propagator(k, params, b) @ linear_propagator(k, params, a)
        np.testing.assert_allclose(product, linear_propagator(k, params, a + b), atol=1e-12)

    def test_mean_mode_rotation(self):
        params = PhysParams(Omega=1.0, Gamma=2.0)
        E = linear_propagator((0.0, 0.0, 0.0), params, np.pi / 4)
        # (ū3, θ̄) rotate by Γ dt = π/2
        np.testing.assert_allclose(E[2:, 2:], [[0.0, 1.0], [-1.0, 0.0]], atol=1e-14)

    def test_grid_propagator_matches_per_mode(self, grid, params, state):
        dt = 0.13
        out = Propagator(grid, params, dt)(state)
        index = (1, 2, 1)
        k = np.array([grid.K1[index], grid.K2[index], grid.K3[index]])
        expected = linear_propagator(k, params, dt) @ state.coeffs[(slice(None), *index)]
        np.testing.assert_allclose(out.coeffs[(slice(None), *index)], expected, atol=1e-12)

    def test_inviscid_isometry(self, grid, params, state):
        inviscid = params.replace(nu=0.0)
        out = apply_propagator(state, 2.5, inviscid)
        assert l2_norm(out) == pytest.approx(l2_norm(state), rel=1e-12)

    def test_viscous_decay_bound(self, grid, params, state):
        v = state.with_coeffs(state.coeffs.copy())
        v.coeffs[..., 0] = 0
        out = apply_propagator(v, 0.1, params)
        bound = np.exp(-params.nu * grid.min_baroclinic_rate * 0.1) * l2_norm(v)
        assert l2_norm(out) <= bound * (1 + 1e-12)

    def test_rejects_plane_fields(self, grid, params):
        with pytest.raises(SpecError):
            Propagator(grid, params, 0.1)(SpectralField.zeros(grid, plane=True))

    def test_negative_dt(self, grid, params):
        with pytest.raises(ValueError):
            Propagator(grid, params, -0.1)

    def test_rotate_frame(self):
        a, b = rotate_frame((1.0, 0.0), np.pi / 2)
        assert a == pytest.approx(0.0, abs=1e-15)
        assert b == pytest.approx(-1.0)
