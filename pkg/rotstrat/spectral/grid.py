import logging
from fractions import Fraction
from functools import lru_cache
from numbers import Integral, Real
from threading import Lock

import numpy as np
import scipy.fft as spfft

from ..mixins import ReprMixin
from ..validation import SpecError, parse_fraction, validate_value
from ._constants import BOUNDARY_CONDITIONS, DEFAULT_DEALIAS


logger = logging.getLogger(__name__)

_FFT_WORKERS = 1


def set_fft_workers(workers):
    '''
    Description
    ------------
    Sets the number of threads scipy.fft may use for every transform.

    Parameters
    ------------
    workers : int
        Thread count, at least 1.

    Returns
    ------------
    None
    '''
    global _FFT_WORKERS
    validate_value(workers, Integral, 'workers', min_value=1, min_inclusive=True)
    _FFT_WORKERS = int(workers)


def get_fft_workers():
    return _FFT_WORKERS


class GridSpec(ReprMixin):
    '''
    Description
    ------------
    Immutable description of the computational box [-L/2, L/2)² × layer.

    Parameters
    ------------
    L : float
        Horizontal box side length.
    N : int
        Horizontal collocation points per axis (even, ≥ 8).
    Nv : int
        Vertical collocation points (even, ≥ 4). For stress-free walls these
        cover the doubled period [0, 2).
    bc : str
        'periodic' or 'stress-free'.
    dealias_fraction : Fraction | str | float
        Fraction of the Nyquist index that survives dealiasing.
    '''

    _repr_attrs = ('L', 'N', 'Nv', 'bc', 'dealias_fraction')

    def __init__(self, L, N, Nv, bc='periodic', dealias_fraction=DEFAULT_DEALIAS):
        try:
            validate_value(L, Real, 'L', finite=True, min_value=0)
            validate_value(N, Integral, 'N', min_value=8, min_inclusive=True, even=True)
            validate_value(Nv, Integral, 'Nv', min_value=4, min_inclusive=True, even=True)
            validate_value(bc, str, 'bc', whitelist=BOUNDARY_CONDITIONS)
            dealias_fraction = parse_fraction(dealias_fraction, 'dealias_fraction')
        except SpecError:
            raise
        except ValueError as e:
            raise SpecError(str(e)) from e

        self._L = float(L)
        self._N = int(N)
        self._Nv = int(Nv)
        self._bc = bc
        self._dealias_fraction = dealias_fraction


    #╭-------------------------------------------------------------------------╮
    #| Properties                                                              |
    #╰-------------------------------------------------------------------------╯

    @property
    def L(self):
        return self._L

    @property
    def N(self):
        return self._N

    @property
    def Nv(self):
        return self._Nv

    @property
    def bc(self):
        return self._bc

    @property
    def dealias_fraction(self):
        return self._dealias_fraction

    @property
    def stress_free(self):
        return self._bc == 'stress-free'

    @property
    def Lz(self):
        ''' vertical period of the transform (doubled for stress-free walls) '''
        return 2.0 if self.stress_free else 1.0

    @property
    def key(self):
        return (self._L, self._N, self._Nv, self._bc, self._dealias_fraction)


    #╭-------------------------------------------------------------------------╮
    #| Magic Methods                                                           |
    #╰-------------------------------------------------------------------------╯

    def __eq__(self, other):
        if not isinstance(other, GridSpec):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)


class Grid(ReprMixin):
    '''
    Description
    ------------
    Wavenumber tables, dealias mask, collocation coordinates and transforms
    for a GridSpec. Coefficient arrays are indexed
    [component, i1, i2, i3] in FFT order; plane (x3-independent) arrays
    drop the last axis.

    Transforms use mean-value normalization: the (0, 0, 0) coefficient
    is the spatial mean of the field.
    '''

    _repr_attrs = ('spec',)

    def __init__(self, spec):
        validate_value(spec, GridSpec, 'spec')
        self.spec = spec

        N, Nv, L = spec.N, spec.Nv, spec.L

        self.j = np.fft.fftfreq(N, 1.0 / N).astype(int)
        self.n = np.fft.fftfreq(Nv, 1.0 / Nv).astype(int)

        self.k0 = 2.0 * np.pi / L
        self.kz0 = 2.0 * np.pi / spec.Lz

        self.k1 = self.k0 * self.j
        self.k2 = self.k0 * self.j
        self.k3 = self.kz0 * self.n

        self.K1, self.K2, self.K3 = np.meshgrid(
            self.k1, self.k2, self.k3, indexing='ij'
            )
        self.kh_sq = self.K1 ** 2 + self.K2 ** 2
        self.k_sq = self.kh_sq + self.K3 ** 2

        # plane (barotropic) tables
        self.P1, self.P2 = np.meshgrid(self.k1, self.k2, indexing='ij')
        self.ph_sq = self.P1 ** 2 + self.P2 ** 2

        frac = spec.dealias_fraction
        self.cutoff_h = int(np.floor(frac * Fraction(N, 2)))
        self.cutoff_v = int(np.floor(frac * Fraction(Nv, 2)))

        J1, J2, Jn = np.meshgrid(self.j, self.j, self.n, indexing='ij')
        self.mask = (
            (np.abs(J1) <= self.cutoff_h)
            & (np.abs(J2) <= self.cutoff_h)
            & (np.abs(Jn) <= self.cutoff_v)
            )
        self.plane_mask = self.mask[..., 0]

        # origin at -L/2 turns e^{-ik L/2} into a (-1)^j sign
        sign = np.where(self.j % 2 == 0, 1.0, -1.0)
        self.plane_shift = np.outer(sign, sign)
        self.shift = self.plane_shift[..., None]

        self.x = -L / 2 + L * np.arange(N) / N
        self.x3 = spec.Lz * np.arange(Nv) / Nv
        self.dx = L / N
        self.area = L * L

        self._tables = {}
        self._lock = Lock()


    #╭-------------------------------------------------------------------------╮
    #| Properties                                                              |
    #╰-------------------------------------------------------------------------╯

    @property
    def shape(self):
        return (self.spec.N, self.spec.N, self.spec.Nv)

    @property
    def plane_shape(self):
        return (self.spec.N, self.spec.N)

    @property
    def bc(self):
        return self.spec.bc

    @property
    def min_baroclinic_rate(self):
        ''' smallest |k|² over modes with n ≠ 0 (ν = 1) '''
        return float(self.kz0 ** 2)


    #╭-------------------------------------------------------------------------╮
    #| Methods                                                                 |
    #╰-------------------------------------------------------------------------╯

    def coordinates(self):
        ''' (X1, X2) plane coordinate arrays with ij indexing '''
        return np.meshgrid(self.x, self.x, indexing='ij')

    def _axes(self, array, plane):
        if plane is None:
            plane = array.shape[-3:] != self.shape
        if plane:
            return (-2, -1), self.plane_shift
        return (-3, -2, -1), self.shift

    def forward(self, values, plane=None):
        '''
        Description
        ------------
        Physical values (..., N, N[, Nv]) → mean-normalized coefficients.

        Parameters
        ------------
        values : np.ndarray
            Real collocation values, plane or volume.

        Returns
        ------------
        coeffs : np.ndarray
            Complex Fourier coefficients.
        '''
        axes, shift = self._axes(values, plane)

        size = np.prod([values.shape[a] for a in axes])
        coeffs = spfft.fftn(values, axes=axes, workers=_FFT_WORKERS)
        return coeffs * (shift / size)

    def inverse(self, coeffs, plane=None):
        ''' coefficients → real physical values; plane inferred from shape '''
        axes, shift = self._axes(coeffs, plane)

        size = np.prod([coeffs.shape[a] for a in axes])
        values = spfft.ifftn(coeffs * shift, axes=axes, workers=_FFT_WORKERS)
        return values.real * size

    def mode_table(self, eta):
        '''
        Description
        ------------
        Returns the cached eigenframe table for this grid and η. Tables are
        read-only once built and may be shared between threads.

        Parameters
        ------------
        eta : float
            Ratio Ω/Γ.

        Returns
        ------------
        table : ModeTable
        '''
        from ..linops.frames import ModeTable

        key = float(eta)
        with self._lock:
            table = self._tables.get(key)
            if table is None:
                logger.debug('building mode table for eta=%r on %r', key, self.spec.key)
                table = ModeTable(self, key)
                self._tables[key] = table
        return table


@lru_cache(maxsize=32)
def make_grid(spec):
    '''
    Description
    ------------
    Builds (or returns the cached) Grid for a GridSpec.

    Parameters
    ------------
    spec : GridSpec
        Grid description.

    Returns
    ------------
    grid : Grid
        Wavenumber tables, dealias mask, coordinates and transforms.
    '''
    return Grid(spec)
