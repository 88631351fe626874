import numpy as np
import pytest

from rotstrat.linops import PhysParams, helmholtz_project
from rotstrat.spectral import (
    GridSpec,
    SpectralField,
    dealias,
    enforce_parity,
    make_grid,
    )


TWO_PI = 2.0 * np.pi


@pytest.fixture(scope='session')
def grid():
    ''' small periodic grid on the unit-period box (k0 = 1) '''
    return make_grid(GridSpec(TWO_PI, 16, 4))


@pytest.fixture(scope='session')
def wide_grid():
    ''' periodic grid wide enough to hold a Gaussian vortex '''
    return make_grid(GridSpec(30.0, 64, 4))


@pytest.fixture(scope='session')
def sf_grid():
    return make_grid(GridSpec(TWO_PI, 16, 8, bc='stress-free'))


@pytest.fixture
def params():
    return PhysParams(Omega=2.0, Gamma=3.0, nu=0.5)


def random_state(grid, seed=0, scale=1.0):
    ''' dealiased, divergence-free random four-component state '''
    rng = np.random.default_rng(seed)
    values = rng.standard_normal((4, *grid.shape))
    coeffs = grid.forward(values)
    v = SpectralField(coeffs, grid)
    v = enforce_parity(helmholtz_project(enforce_parity(dealias(v))))
    return v * scale


@pytest.fixture
def state(grid):
    return random_state(grid)
