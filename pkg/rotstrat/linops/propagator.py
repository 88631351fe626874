from numbers import Real

import numpy as np

from ..mixins import ReprMixin
from ..spectral import BOUNDARY_CONDITIONS, SpectralField
from ..validation import SpecError, validate_value
from .frames import mode_frame
from .params import PhysParams


def rotation_block(angle):
    ''' [[cos, sin], [-sin, cos]] = exp(-angle J) '''
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c, s], [-s, c]])


def mean_propagator(params, dt):
    ''' exp(-J_{Ω,Γ} dt) acting on the k = 0 mode '''
    out = np.zeros((4, 4))
    out[:2, :2] = rotation_block(params.Omega * dt)
    out[2:, 2:] = rotation_block(params.Gamma * dt)
    return out


def linear_propagator(k, params, dt, bc='periodic'):
    '''
    Description
    ------------
    exp((-ν|k|² I - Γ P J_η P) dt) at one wavevector, assembled from the
    eigenframe as e^{-ν|k|²dt}(Π_g + Π_0 + e^{-iΓp dt}Π_+ + e^{iΓp dt}Π_-).
    At k = 0 the block rotation exp(-J_{Ω,Γ} dt) is returned.

    Parameters
    ------------
    k : array-like
        Wavevector (k1, k2, k3).
    params : PhysParams
        Physical parameters.
    dt : float
        Time increment, ≥ 0.
    bc : str
        Basis selector, see pjp_matrix.

    Returns
    ------------
    E : np.ndarray
        Complex 4×4 matrix.
    '''
    validate_value(params, PhysParams, 'params')
    validate_value(dt, Real, 'dt', finite=True, min_value=0, min_inclusive=True)
    validate_value(bc, str, 'bc', whitelist=BOUNDARY_CONDITIONS)

    k = np.asarray(k, dtype=float)
    if np.all(k == 0):
        return mean_propagator(params, dt).astype(complex)

    frame = mode_frame(k, params, bc)
    omega = params.Gamma * frame.p_eta
    decay = np.exp(-params.nu * k.dot(k) * dt)

    E = (
        np.eye(4)
        + (np.exp(-1j * omega * dt) - 1) * frame.projector('+')
        + (np.exp(1j * omega * dt) - 1) * frame.projector('-')
        )
    return decay * E


class Propagator(ReprMixin):
    '''
    Description
    ------------
    Exact linear propagator E(dt) for every mode of a grid, with the
    per-mode factors precomputed. Instances are read-only and may be shared
    between threads.

    Parameters
    ------------
    grid : Grid
        Grid of the fields to propagate.
    params : PhysParams
        Physical parameters.
    dt : float
        Time increment, ≥ 0.
    '''

    _repr_attrs = ('params', 'dt')

    def __init__(self, grid, params, dt):
        validate_value(params, PhysParams, 'params')
        validate_value(dt, Real, 'dt', finite=True, min_value=0, min_inclusive=True)

        self.grid = grid
        self.params = params
        self.dt = float(dt)

        table = grid.mode_table(params.eta)
        self._a_plus = table.a_plus
        omega = params.Gamma * table.p_eta

        self._decay = np.exp(-params.nu * grid.k_sq * self.dt)
        self._alpha = np.exp(-1j * omega * self.dt) - 1
        self._mean = mean_propagator(params, self.dt)

    def apply(self, coeffs):
        ''' E(dt) applied to a (4, N, N, Nv) coefficient array '''
        a = self._a_plus
        plus = np.sum(np.conj(a) * coeffs, axis=0)
        minus = np.sum(a * coeffs, axis=0)

        out = coeffs + (self._alpha * plus) * a + (np.conj(self._alpha) * minus) * np.conj(a)
        out *= self._decay
        out[:, 0, 0, 0] = self._mean @ coeffs[:, 0, 0, 0]
        return out

    def __call__(self, s):
        validate_value(s, SpectralField, 's')
        if s.plane or s.ncomp != 4:
            raise SpecError('the propagator acts on four-component volume fields.')
        return s.with_coeffs(self.apply(s.coeffs))


def apply_propagator(s, dt, params):
    '''
    Description
    ------------
    Evolves a state under the linear part ∂t v = νΔv - Γ P J_η P v for a
    time dt.

    Parameters
    ------------
    s : SpectralField
        Four-component volume field.
    dt : float
        Time increment, ≥ 0.
    params : PhysParams
        Physical parameters.

    Returns
    ------------
    out : SpectralField
    '''
    validate_value(s, SpectralField, 's')
    return Propagator(s.grid, params, dt)(s)


def linear_frequency(grid, params):
    ''' Γ p_η(k) for every mode of the grid '''
    return params.Gamma * grid.mode_table(params.eta).p_eta


def rotate_frame(pair, angle):
    '''
    Description
    ------------
    Applies [[cos I, sin I], [-sin I, cos I]] blockwise to a pair of
    equally shaped objects (fields, arrays or scalars). The linear
    barotropic evolution of (ω̄_h, Θ̄), and of the means (∫ū3, ∫θ̄), is
    rotate_frame(pair, Γt); rotating by -Γt gives rotating-frame values.

    Parameters
    ------------
    pair : tuple
        (first, second) members, e.g. (ω̄_h, Θ̄).
    angle : float
        Rotation angle, typically Γt.

    Returns
    ------------
    out : tuple
        Rotated pair.
    '''
    validate_value(angle, Real, 'angle', finite=True)
    first, second = pair
    c, s = float(np.cos(angle)), float(np.sin(angle))
    return (c * first + s * second, -s * first + c * second)
