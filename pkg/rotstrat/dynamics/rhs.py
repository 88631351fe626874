import numpy as np

from ..linops import helmholtz_project
from ..reference import background_values
from ..spectral import SpectralField, enforce_parity
from ..validation import validate_value
from .state import SimState


# (velocity component, advected component) pairs whose products are
# transformed; u_i u_j is symmetric so only i ≤ j is computed
_PAIRS = [(i, j) for i in range(3) for j in range(i, 4)]


def _fluxes(total, background):
    # F[i][j] = u_i v_j minus the background's self-interaction
    fluxes = {}
    for i, j in _PAIRS:
        product = total[i] * total[j]
        if background is not None:
            product = product - background[i] * background[j]
        fluxes[i, j] = product
    return fluxes


def nonlinear_rhs(state):
    '''
    Description
    ------------
    -P[(u·∇)v] evaluated pseudo-spectrally in divergence form
    -P ∂_i(u_i v_j), which equals the advective form for divergence-free u
    and keeps every flux mean free. The products are formed on the
    collocation points, transformed back, truncated by the dealias mask and
    Helmholtz projected.

    In background mode the total field is U = u' + u_bg with the vortex
    family sampled analytically at state.t, and the background's own
    product u_bg v_bg is removed: the family is an exact solution, so only
    the cross terms and the perturbation self-interaction remain.

    Parameters
    ------------
    state : SimState
        Dealiased state.

    Returns
    ------------
    rhs : SpectralField
        Four-component volume field.
    '''
    validate_value(state, SimState, 'state')
    v = state.v
    grid = v.grid

    total = grid.inverse(v.coeffs)
    background = None
    if state.has_background:
        background = background_values(grid, state.background, state.t)[..., None]
        total = total + background

    wavenumbers = (grid.K1, grid.K2, grid.K3)
    rhs = np.zeros_like(v.coeffs)
    for (i, j), product in _fluxes(total, background).items():
        flux = grid.forward(product)
        rhs[j] -= 1j * wavenumbers[i] * flux
        if j != i and j < 3:
            rhs[i] -= 1j * wavenumbers[j] * flux

    rhs *= grid.mask
    out = helmholtz_project(SpectralField(rhs, grid, v.frame))
    return enforce_parity(out)
