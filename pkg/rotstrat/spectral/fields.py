from numbers import Number

import numpy as np

from ..mixins import ReprMixin
from ..validation import SpecError, validate_array, validate_value
from ._constants import FRAMES, STRESS_FREE_PARITY
from .grid import Grid


class _FieldBase(ReprMixin):

    _repr_attrs = ('grid', 'ncomp', 'plane')

    def __init__(self, grid):
        validate_value(grid, Grid, 'grid')
        self.grid = grid

    def _expected_shape(self, plane):
        return (None, *(self.grid.plane_shape if plane else self.grid.shape))


class SpectralField(_FieldBase):
    '''
    Description
    ------------
    Complex Fourier coefficients of a multi-component field. The state
    vector v = (u1, u2, u3, theta) has four components; derived fields
    (vorticity, scalars) carry as many as they need.

    Parameters
    ------------
    coeffs : np.ndarray
        Complex array shaped (ncomp, N, N, Nv) or, for x3-independent plane
        fields, (ncomp, N, N). FFT ordering on every axis.
    grid : Grid
        Grid the coefficients live on.
    frame : str
        'stationary' or 'rotating'. Diagnostic metadata only.
    '''

    _repr_attrs = ('grid', 'ncomp', 'plane', 'frame')

    def __init__(self, coeffs, grid, frame='stationary'):
        super().__init__(grid)
        coeffs = np.asarray(coeffs)
        if coeffs.dtype.kind != 'c':
            coeffs = coeffs.astype(complex)

        plane = coeffs.ndim == 3
        validate_array(
            coeffs,
            name='coeffs',
            shape=self._expected_shape(plane),
            dtype_kind='c',
            finite=False,
            )
        validate_value(frame, str, 'frame', whitelist=FRAMES)

        self.coeffs = coeffs
        self.frame = frame


    #╭-------------------------------------------------------------------------╮
    #| Class Methods                                                           |
    #╰-------------------------------------------------------------------------╯

    @classmethod
    def zeros(cls, grid, ncomp=4, plane=False):
        shape = grid.plane_shape if plane else grid.shape
        return cls(np.zeros((ncomp, *shape), dtype=complex), grid)


    #╭-------------------------------------------------------------------------╮
    #| Properties                                                              |
    #╰-------------------------------------------------------------------------╯

    @property
    def ncomp(self):
        return self.coeffs.shape[0]

    @property
    def plane(self):
        return self.coeffs.ndim == 3

    @property
    def velocity(self):
        ''' first three components as a new field '''
        return self.with_coeffs(self.coeffs[:3])

    @property
    def is_divergence_free(self):
        return divergence_residual(self) <= 1e-12


    #╭-------------------------------------------------------------------------╮
    #| Magic Methods                                                           |
    #╰-------------------------------------------------------------------------╯

    def __add__(self, other):
        self._check_compatible(other)
        return self.with_coeffs(self.coeffs + other.coeffs)

    def __sub__(self, other):
        self._check_compatible(other)
        return self.with_coeffs(self.coeffs - other.coeffs)

    def __mul__(self, scalar):
        if not isinstance(scalar, Number):
            return NotImplemented
        return self.with_coeffs(self.coeffs * scalar)

    __rmul__ = __mul__

    def __neg__(self):
        return self.with_coeffs(-self.coeffs)


    #╭-------------------------------------------------------------------------╮
    #| Methods                                                                 |
    #╰-------------------------------------------------------------------------╯

    def with_coeffs(self, coeffs, frame=None):
        ''' new field on the same grid '''
        return SpectralField(
            coeffs,
            self.grid,
            self.frame if frame is None else frame,
            )

    def copy(self):
        return self.with_coeffs(self.coeffs.copy())

    def component(self, index):
        ''' single component as a one-component field '''
        return self.with_coeffs(self.coeffs[index:index + 1])

    def _check_compatible(self, other):
        validate_value(other, SpectralField, 'other')
        if other.grid is not self.grid and other.grid.spec != self.grid.spec:
            raise SpecError('fields live on different grids.')
        if other.coeffs.shape != self.coeffs.shape:
            raise SpecError(
                'shape mismatch: '
                f'{self.coeffs.shape} vs {other.coeffs.shape}.'
                )


class PhysicalField(_FieldBase):
    '''
    Description
    ------------
    Real collocation values of a multi-component field, shaped
    (ncomp, N, N, Nv) or (ncomp, N, N) for plane fields.
    '''

    def __init__(self, values, grid):
        super().__init__(grid)
        values = np.asarray(values, dtype=float)
        plane = values.ndim == 3
        validate_array(
            values,
            name='values',
            shape=self._expected_shape(plane),
            dtype_kind='f',
            finite=True,
            )
        self.values = values

    @property
    def ncomp(self):
        return self.values.shape[0]

    @property
    def plane(self):
        return self.values.ndim == 3


def to_spectral(p, frame='stationary'):
    '''
    Description
    ------------
    Forward transform with mean-value normalization.

    Parameters
    ------------
    p : PhysicalField
        Collocation values.
    frame : str
        Frame tag for the result.

    Returns
    ------------
    s : SpectralField
        Fourier coefficients; the zero mode is the spatial mean.
    '''
    validate_value(p, PhysicalField, 'p')
    coeffs = p.grid.forward(p.values, plane=p.plane)
    return SpectralField(coeffs, p.grid, frame)


def to_physical(s):
    ''' inverse of to_spectral on dealiased fields '''
    validate_value(s, SpectralField, 's')
    values = s.grid.inverse(s.coeffs, plane=s.plane)
    return PhysicalField(values, s.grid)


def dealias(s):
    ''' zero every mode outside the dealias mask '''
    mask = s.grid.plane_mask if s.plane else s.grid.mask
    return s.with_coeffs(s.coeffs * mask)


def _reflect(coeffs):
    # coefficient at -n for every n
    idx = (-np.arange(coeffs.shape[-1])) % coeffs.shape[-1]
    return coeffs[..., idx]


def enforce_parity(s, parity=STRESS_FREE_PARITY):
    '''
    Description
    ------------
    Symmetrizes a volume field on the doubled vertical period so that
    component c satisfies coeffs[c, ..., -n] = parity[c] * coeffs[c, ..., n].
    A no-op for periodic grids.

    Parameters
    ------------
    s : SpectralField
        Volume field.
    parity : sequence[int]
        +1 (even, cosine series) or -1 (odd, sine series) per component.

    Returns
    ------------
    out : SpectralField
        Field satisfying the parity constraints.
    '''
    if not s.grid.spec.stress_free or s.plane:
        return s
    sign = np.asarray(parity, dtype=float).reshape(-1, 1, 1, 1)
    if sign.shape[0] != s.ncomp:
        raise SpecError(
            f'parity has {sign.shape[0]} entries, field has {s.ncomp} components.'
            )
    coeffs = 0.5 * (s.coeffs + sign * _reflect(s.coeffs))
    return s.with_coeffs(coeffs)


def parity_residual(s, parity=STRESS_FREE_PARITY):
    ''' max |c(-n) - parity * c(n)| relative to max |c| '''
    sign = np.asarray(parity, dtype=float).reshape(-1, 1, 1, 1)
    scale = max(np.abs(s.coeffs).max(), 1e-300)
    return float(np.abs(_reflect(s.coeffs) - sign * s.coeffs).max() / scale)


def divergence_residual(s):
    ''' relative size of k·û over the velocity components '''
    g = s.grid
    c = s.coeffs
    if s.plane:
        div = g.P1 * c[0] + g.P2 * c[1]
        scale = np.sqrt(g.ph_sq) * np.sqrt(np.abs(c[0]) ** 2 + np.abs(c[1]) ** 2)
    else:
        div = g.K1 * c[0] + g.K2 * c[1] + g.K3 * c[2]
        speed = np.sqrt(np.sum(np.abs(c[:3]) ** 2, axis=0))
        scale = np.sqrt(g.k_sq) * speed
    top = scale.max()
    if top == 0:
        return 0.0
    return float(np.abs(div).max() / top)


def sample_physical(grid, func, plane=True):
    '''
    Description
    ------------
    Evaluates a function on the collocation points.

    Parameters
    ------------
    grid : Grid
        Grid supplying the coordinates.
    func : callable
        Called as func(X1, X2) for plane fields or func(X1, X2, X3) for
        volume fields; returns an array with a leading component axis, or a
        scalar array that becomes a one-component field.
    plane : bool
        If True, sample on the horizontal plane only.

    Returns
    ------------
    p : PhysicalField
    '''
    validate_value(grid, Grid, 'grid')
    if plane:
        coords = grid.coordinates()
    else:
        coords = np.meshgrid(grid.x, grid.x, grid.x3, indexing='ij')

    values = np.asarray(func(*coords), dtype=float)
    if values.ndim == len(coords):
        values = values[None]
    return PhysicalField(values, grid)
