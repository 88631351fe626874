'''
Tests for the Biot-Savart laws on the plane and in the layer.
'''

import numpy as np
import pytest

from rotstrat.biotsavart import (
    biot_savart_ratio,
    potential_from_skew_gradient,
    state_from_vorticity,
    velocity2d_from_vorticity,
    velocity_from_vorticity_3d,
    vorticity_state,
    )
from rotstrat.reference import hermite_function, oseen
from rotstrat.spectral import (
    SpectralField,
    baroclinic_part,
    curl,
    curl2,
    divergence_residual,
    plane_to_volume,
    sample_physical,
    skew_gradient,
    to_physical,
    to_spectral,
    )
from rotstrat.validation import SpecError

from conftest import random_state


def _plane(grid, func):
    return to_spectral(sample_physical(grid, func))


class TestPlanarLaw:

    def test_curl_recovers_vorticity(self, grid):
        omega = _plane(grid, lambda X1, X2: np.sin(X1) * np.cos(2 * X2) + np.cos(3 * X2))
        u = velocity2d_from_vorticity(omega)
        np.testing.assert_allclose(curl2(u).coeffs, omega.coeffs, atol=1e-13)
        assert divergence_residual(u) < 1e-14

    def test_nonzero_mean_rejected(self, grid):
        omega = _plane(grid, lambda X1, X2: 1.0 + np.sin(X1))
        with pytest.raises(SpecError, match='zero mean'):
            velocity2d_from_vorticity(omega)

    def test_volume_input_rejected(self, grid):
        with pytest.raises(SpecError):
            velocity2d_from_vorticity(SpectralField.zeros(grid, ncomp=1))

    def test_gaussian_turns_counterclockwise(self, wide_grid):
        phi0 = _plane(wide_grid, lambda X1, X2: hermite_function((0, 0), X1, X2))
        phi0.coeffs[0, 0, 0] = 0
        u = to_physical(velocity2d_from_vorticity(phi0)).values

        X1, X2 = wide_grid.coordinates()
        _, expected = oseen(np.stack([X1, X2], axis=-1))
        # x = (3.75, 0) and (0, 3.75)
        i, j = 40, 32
        assert u[1, i, j] > 0
        assert u[0, j, i] < 0
        assert u[1, i, j] == pytest.approx(expected[i, j, 1], rel=0.1)

    def test_ratio_is_positive(self, wide_grid):
        omega = _plane(wide_grid, lambda X1, X2: hermite_function((1, 0), X1, X2))
        ratio = biot_savart_ratio(omega)
        assert np.isfinite(ratio) and ratio > 0


class TestSkewGradient:

    def test_potential_round_trip(self, grid):
        f = _plane(grid, lambda X1, X2: 0.4 + np.cos(X1 - X2) + np.sin(2 * X2))
        back = potential_from_skew_gradient(skew_gradient(f), mean=0.4)
        np.testing.assert_allclose(back.coeffs, f.coeffs, atol=1e-13)

    def test_gradient_field_rejected(self, grid):
        g = _plane(grid, lambda X1, X2: np.stack([np.cos(X1), 0 * X1]))
        with pytest.raises(SpecError, match='not divergence free'):
            potential_from_skew_gradient(g)


class TestBaroclinicLaw:

    def test_curl_recovers_vorticity(self, grid):
        v = baroclinic_part(random_state(grid, seed=2))
        omega = curl(v)
        u = velocity_from_vorticity_3d(omega)
        np.testing.assert_allclose(u.coeffs, v.coeffs[:3], atol=1e-12)
        np.testing.assert_allclose(curl(u).coeffs, omega.coeffs, atol=1e-12)

    def test_energy_bound(self, grid):
        v = baroclinic_part(random_state(grid, seed=5))
        omega = curl(v)
        u = velocity_from_vorticity_3d(omega)
        u_norm = np.sqrt(np.sum(np.abs(u.coeffs) ** 2))
        omega_norm = np.sqrt(np.sum(np.abs(omega.coeffs) ** 2))
        assert u_norm <= omega_norm / (2 * np.pi) * (1 + 1e-12)

    def test_barotropic_content_rejected(self, grid):
        plane = _plane(grid, lambda X1, X2: np.stack([np.sin(X2), 0 * X1, 0 * X1]))
        with pytest.raises(SpecError, match='n = 0 content'):
            velocity_from_vorticity_3d(plane_to_volume(plane))


class TestVorticityState:

    def test_round_trip(self, grid):
        v = random_state(grid, seed=11)
        v.coeffs[:2, 0, 0, 0] = 0
        vs = vorticity_state(v)
        theta_tilde = baroclinic_part(v).component(3)
        back = state_from_vorticity(vs, theta_tilde)
        np.testing.assert_allclose(back.coeffs, v.coeffs, atol=1e-12)

    def test_means_are_kept(self, grid):
        v = random_state(grid, seed=12)
        vs = vorticity_state(v)
        assert vs.mean_u3 == pytest.approx(v.coeffs[2, 0, 0, 0].real)
        assert vs.mean_theta == pytest.approx(v.coeffs[3, 0, 0, 0].real)
