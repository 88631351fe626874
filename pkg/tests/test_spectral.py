'''
Tests for grids, transforms, dealiasing and norms.
'''

import numpy as np
import pytest
from scipy.integrate import quad

from rotstrat.spectral import (
    GridSpec,
    PhysicalField,
    SpectralField,
    baroclinic_part,
    curl,
    curl2,
    dealias,
    divergence,
    divergence_residual,
    energy,
    enforce_parity,
    get_fft_workers,
    gradient,
    grad_sq,
    h1_norm,
    l2_norm,
    laplacian,
    make_grid,
    moments,
    parity_residual,
    plane_to_volume,
    sample_physical,
    set_fft_workers,
    skew_gradient,
    to_physical,
    to_spectral,
    vertical_mean,
    weighted_norm,
    )
from rotstrat.validation import SpecError

from conftest import TWO_PI, random_state


class TestGridSpec:

    def test_odd_N_rejected(self):
        with pytest.raises(SpecError, match="'N' must be even, got: 15."):
            GridSpec(TWO_PI, 15, 4)

    def test_small_Nv_rejected(self):
        with pytest.raises(SpecError, match="'Nv' must be ≥ 4"):
            GridSpec(TWO_PI, 16, 2)

    def test_bad_bc_rejected(self):
        with pytest.raises(SpecError):
            GridSpec(TWO_PI, 16, 4, bc='walls')

    def test_bad_dealias_rejected(self):
        with pytest.raises(SpecError):
            GridSpec(TWO_PI, 16, 4, dealias_fraction='3/2')

    def test_equality_and_cache(self):
        a = GridSpec(TWO_PI, 16, 4)
        b = GridSpec(TWO_PI, 16, 4, dealias_fraction='2/3')
        assert a == b
        assert hash(a) == hash(b)
        assert make_grid(a) is make_grid(b)

    def test_stress_free_doubles_vertical_period(self):
        spec = GridSpec(TWO_PI, 16, 8, bc='stress-free')
        grid = make_grid(spec)
        assert spec.Lz == 2.0
        assert grid.kz0 == pytest.approx(np.pi)
        assert grid.min_baroclinic_rate == pytest.approx(np.pi ** 2)


class TestGrid:

    def test_cutoffs_and_mask(self, grid):
        assert grid.cutoff_h == 5
        assert grid.cutoff_v == 1
        assert grid.mask.sum() == 11 * 11 * 3

    def test_periodic_min_rate(self, grid):
        assert grid.min_baroclinic_rate == pytest.approx(4.0 * np.pi ** 2)

    def test_coordinates_start_at_minus_half_box(self, grid):
        X1, X2 = grid.coordinates()
        assert X1[0, 0] == pytest.approx(-np.pi)
        assert X2[0, 8] == pytest.approx(0.0, abs=1e-15)

    def test_fft_workers(self):
        with pytest.raises(ValueError):
            set_fft_workers(0)
        set_fft_workers(2)
        assert get_fft_workers() == 2
        set_fft_workers(1)


class TestTransforms:

    def test_round_trip(self, grid):
        v = random_state(grid, seed=3)
        back = to_spectral(to_physical(v))
        np.testing.assert_allclose(back.coeffs, v.coeffs, atol=1e-12)

    def test_mean_normalization(self, grid):
        p = sample_physical(grid, lambda X1, X2: np.full_like(X1, 2.5))
        s = to_spectral(p)
        assert s.coeffs[0, 0, 0] == pytest.approx(2.5)
        assert np.abs(s.coeffs[0]).sum() == pytest.approx(2.5)

    def test_sine_coefficients(self, grid):
        s = to_spectral(sample_physical(grid, lambda X1, X2: np.sin(X1)))
        assert s.coeffs[0, 1, 0] == pytest.approx(-0.5j)
        assert s.coeffs[0, -1, 0] == pytest.approx(0.5j)

    def test_origin_value_is_coefficient_sum(self, grid):
        s = to_spectral(sample_physical(grid, lambda X1, X2: np.cos(X1 + 0.3) + X2 ** 0 * 0.2))
        values = to_physical(s).values
        assert values[0, 8, 8] == pytest.approx(np.sum(s.coeffs[0]).real)

    def test_sample_volume_components(self, grid):
        p = sample_physical(grid, lambda X1, X2, X3: np.cos(2 * np.pi * X3), plane=False)
        assert p.values.shape == (1, *grid.shape)
        s = to_spectral(p)
        assert s.coeffs[0, 0, 0, 1] == pytest.approx(0.5)


class TestFields:

    def test_shape_mismatch(self, grid):
        with pytest.raises(SpecError, match='shape mismatch'):
            SpectralField(np.zeros((4, 16, 16, 5)), grid)

    def test_real_input_cast_to_complex(self, grid):
        s = SpectralField(np.zeros((4, *grid.shape)), grid)
        assert s.coeffs.dtype.kind == 'c'

    def test_non_finite_physical_values(self, grid):
        values = np.zeros((1, *grid.plane_shape))
        values[0, 0, 0] = np.nan
        with pytest.raises(ValueError, match='non-finite'):
            PhysicalField(values, grid)

    def test_grids_must_match(self, grid, sf_grid):
        with pytest.raises(SpecError):
            SpectralField.zeros(grid) + SpectralField.zeros(sf_grid)

    def test_arithmetic(self, grid):
        v = random_state(grid)
        np.testing.assert_allclose((2 * v - v).coeffs, v.coeffs)
        np.testing.assert_allclose((-v).coeffs, -v.coeffs)

    def test_dealias_zeroes_high_modes(self, grid):
        coeffs = np.ones((4, *grid.shape), dtype=complex)
        s = dealias(SpectralField(coeffs, grid))
        assert np.all(s.coeffs[:, ~grid.mask] == 0)

    def test_random_state_is_divergence_free(self, grid):
        v = random_state(grid, seed=1)
        assert divergence_residual(v) < 1e-12
        assert v.is_divergence_free


class TestParity:

    def test_periodic_is_noop(self, grid):
        v = random_state(grid)
        assert enforce_parity(v) is v

    def test_stress_free_symmetrized(self, sf_grid):
        rng = np.random.default_rng(0)
        v = SpectralField(rng.standard_normal((4, *sf_grid.shape)) + 0j, sf_grid)
        out = enforce_parity(v)
        assert parity_residual(out) < 1e-14
        np.testing.assert_allclose(enforce_parity(out).coeffs, out.coeffs)

    def test_odd_components_have_no_mean(self, sf_grid):
        v = random_state(sf_grid, seed=4)
        assert np.abs(v.coeffs[2:, ..., 0]).max() < 1e-14


class TestOperators:

    def test_barotropic_plus_baroclinic(self, grid):
        v = random_state(grid)
        np.testing.assert_allclose((vertical_mean(v) + baroclinic_part(v)).coeffs, v.coeffs)

    def test_x3_independent_field_has_no_baroclinic_part(self, grid):
        plane = to_spectral(sample_physical(grid, lambda X1, X2: np.stack([np.sin(X2), np.cos(X1), 0 * X1, 0 * X1])))
        v = plane_to_volume(plane)
        assert np.abs(baroclinic_part(v).coeffs).max() == 0

    def test_curl_of_gradient_vanishes(self, grid):
        f = random_state(grid).component(3)
        assert np.abs(curl(gradient(f)).coeffs).max() < 1e-12

    def test_divergence_of_curl_vanishes(self, grid):
        omega = curl(random_state(grid, seed=2))
        assert np.abs(divergence(omega).coeffs).max() < 1e-12

    def test_curl2_of_skew_gradient(self, grid):
        f = to_spectral(sample_physical(grid, lambda X1, X2: np.sin(X1) * np.cos(2 * X2)))
        np.testing.assert_allclose(curl2(skew_gradient(f)).coeffs, -laplacian(f).coeffs, atol=1e-14)

    def test_laplacian_eigenvalue(self, grid):
        f = to_spectral(sample_physical(grid, lambda X1, X2: np.sin(3 * X1)))
        np.testing.assert_allclose(laplacian(f).coeffs, -9 * f.coeffs, atol=1e-14)


class TestNorms:

    def test_parseval_matches_quadrature(self, grid):
        v = random_state(grid, seed=5)
        values = to_physical(v).values
        quadrature = np.sum(values ** 2, axis=0).mean() * grid.area
        assert energy(v) == pytest.approx(quadrature, rel=1e-12)

    @pytest.fixture(scope='class')
    def phi0(self):
        ''' heat kernel e^{-|x|²/4}/4π on a box wide enough for its tail '''
        wide = make_grid(GridSpec(24.0, 64, 4))
        return sample_physical(wide, lambda X1, X2: np.exp(-0.25 * (X1 ** 2 + X2 ** 2)) / (4.0 * np.pi))

    def test_gaussian_has_unit_mass(self, phi0):
        assert weighted_norm(phi0, m=0, p=1) == pytest.approx(1.0, abs=1e-6)
        assert weighted_norm(to_spectral(phi0), m=0, p=1) == pytest.approx(1.0, abs=1e-6)

    def test_weighted_gaussian_matches_radial_quadrature(self, phi0):
        def integrand(r):
            return (1.0 + r ** 2) ** 2 * (np.exp(-0.25 * r ** 2) / (4.0 * np.pi)) ** 2 * 2.0 * np.pi * r

        expected = np.sqrt(quad(integrand, 0.0, np.inf, epsabs=1e-14, epsrel=1e-12)[0])
        assert weighted_norm(phi0, m=2, p=2) == pytest.approx(expected, abs=1e-6)

    def test_unweighted_l2(self, grid):
        v = random_state(grid, seed=6)
        assert weighted_norm(v, p=2) == pytest.approx(l2_norm(v), rel=1e-12)

    def test_sup_norm(self, grid):
        v = random_state(grid, seed=7)
        values = to_physical(v).values
        assert weighted_norm(v, p=np.inf) == pytest.approx(np.sqrt((values ** 2).sum(axis=0)).max())

    def test_weight_grows_norm(self, grid):
        v = random_state(grid, seed=8)
        assert weighted_norm(v, m=1, p=2) > weighted_norm(v, p=2)

    def test_h1_splits(self, grid):
        v = random_state(grid, seed=9)
        assert h1_norm(v) ** 2 == pytest.approx(energy(v) + grad_sq(v), rel=1e-12)

    def test_invalid_exponent(self, grid):
        with pytest.raises(ValueError):
            weighted_norm(random_state(grid), p=0.5)

    def test_moments_from_mean_modes(self, grid):
        v = SpectralField.zeros(grid)
        v.coeffs[2, 0, 0, 0] = 0.3
        v.coeffs[3, 0, 0, 0] = -0.1
        m = moments(v)
        assert m.A == 0
        assert m.B1 == pytest.approx(0.3 * grid.area)
        assert m.B2 == pytest.approx(-0.1 * grid.area)
