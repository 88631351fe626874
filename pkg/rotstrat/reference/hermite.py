from math import factorial
from numbers import Integral, Real

import numpy as np
from numpy.polynomial import hermite_e

from ..mixins import ReprMixin
from ..spectral import PhysicalField, SpectralField, to_physical, to_spectral
from ..validation import ResolutionError, SpecError, validate_value
from ._constants import HERMITE_TAIL_FRAME, HERMITE_TAIL_TOL, MAX_HERMITE_ORDER


SQRT_2 = np.sqrt(2.0)


class HermiteIndex(ReprMixin):
    '''
    Description
    ------------
    Multi-index α = (α1, α2) of a two-dimensional Hermite function.

    Parameters
    ------------
    alpha1 : int
        Order in ξ1, ≥ 0.
    alpha2 : int
        Order in ξ2, ≥ 0.
    '''

    _repr_attrs = ('alpha1', 'alpha2')

    def __init__(self, alpha1, alpha2):
        for name, value in (('alpha1', alpha1), ('alpha2', alpha2)):
            validate_value(
                value,
                Integral,
                name,
                min_value=0,
                min_inclusive=True,
                max_value=MAX_HERMITE_ORDER,
                max_inclusive=True,
                )
        if alpha1 + alpha2 > MAX_HERMITE_ORDER:
            raise ValueError(
                f'|alpha| must be ≤ {MAX_HERMITE_ORDER}, '
                f'got: {alpha1 + alpha2}.'
                )
        self.alpha1 = int(alpha1)
        self.alpha2 = int(alpha2)

    @property
    def order(self):
        return self.alpha1 + self.alpha2

    @property
    def key(self):
        return (self.alpha1, self.alpha2)

    def __eq__(self, other):
        if not isinstance(other, HermiteIndex):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __iter__(self):
        return iter(self.key)


def hermite_indices(n):
    ''' every HermiteIndex with |α| ≤ n, ordered by |α| then α1 descending '''
    validate_value(n, Integral, 'n', min_value=0, min_inclusive=True)
    return [
        HermiteIndex(order - a2, a2)
        for order in range(n + 1)
        for a2 in range(order + 1)
        ]


def _as_index(alpha):
    if isinstance(alpha, HermiteIndex):
        return alpha
    return HermiteIndex(*alpha)


def _basis_1d(n):
    coef = np.zeros(n + 1)
    coef[n] = 1.0
    return coef


def _gaussian_1d(x):
    return np.exp(-0.25 * x ** 2) / np.sqrt(4.0 * np.pi)


def _derivative_1d(n, x):
    # ∂^n of e^{-x²/4}/√(4π) through probabilists' polynomials at x/√2
    y = x / SQRT_2
    scale = (-1.0) ** n * 2.0 ** (-0.5 * n)
    return scale * hermite_e.hermeval(y, _basis_1d(n)) * _gaussian_1d(x)


def _polynomial_1d(n, x):
    y = x / SQRT_2
    scale = (-1.0) ** n * 2.0 ** (0.5 * n) / factorial(n)
    return scale * hermite_e.hermeval(y, _basis_1d(n))


def hermite_function(alpha, x1, x2):
    '''
    Description
    ------------
    φ_α = ∂^α φ0, the eigenfunction of the scaled operator with eigenvalue
    -|α|/2.

    Parameters
    ------------
    alpha : HermiteIndex | tuple
        Multi-index.
    x1, x2 : np.ndarray
        Broadcastable coordinates.

    Returns
    ------------
    values : np.ndarray
    '''
    a1, a2 = _as_index(alpha)
    return _derivative_1d(a1, np.asarray(x1, float)) * _derivative_1d(a2, np.asarray(x2, float))


def hermite_polynomial(alpha, x1, x2):
    '''
    Description
    ------------
    H_α = (2^{|α|}/α!) e^{|ξ|²/4} ∂^α e^{-|ξ|²/4}, normalized so that
    ∫ H_α φ_β = δ_αβ.

    Parameters
    ------------
    alpha : HermiteIndex | tuple
        Multi-index.
    x1, x2 : np.ndarray
        Broadcastable coordinates.

    Returns
    ------------
    values : np.ndarray
    '''
    a1, a2 = _as_index(alpha)
    return _polynomial_1d(a1, np.asarray(x1, float)) * _polynomial_1d(a2, np.asarray(x2, float))


def _plane_values(f):
    validate_value(f, (SpectralField, PhysicalField), 'f')
    if not f.plane or f.ncomp != 1:
        raise SpecError("'f' must be a one-component plane field.")
    phys = to_physical(f) if isinstance(f, SpectralField) else f
    return phys.values[0], phys.grid


def _check_tail(values, grid, n, tol):
    X1, X2 = grid.coordinates()
    weighted = np.abs(values) * (1.0 + X1 ** 2 + X2 ** 2) ** (0.5 * n)
    total = weighted.sum()
    if total == 0:
        return 0.0

    edge = (0.5 - HERMITE_TAIL_FRAME) * grid.spec.L
    outer = (np.abs(X1) > edge) | (np.abs(X2) > edge)
    ratio = float(weighted[outer].sum() / total)
    if ratio > tol:
        raise ResolutionError(
            f'weighted tail mass {ratio:.3e} exceeds {tol:.1e}: the '
            f'order-{n} Hermite integrals are not resolved by L={grid.spec.L}.'
            )
    return ratio


def hermite_coefficients(f, n, tol=HERMITE_TAIL_TOL):
    '''
    Description
    ------------
    Moments ∫ H_α f for every |α| ≤ n, by rectangle quadrature over the box.

    Parameters
    ------------
    f : SpectralField | PhysicalField
        One-component plane field.
    n : int
        Maximum order.
    tol : float
        Largest admissible share of the weighted mass |f|(1+|ξ|²)^{n/2} in
        the outer frame of the box.

    Returns
    ------------
    coefficients : dict[HermiteIndex, float]
    '''
    validate_value(tol, Real, 'tol', finite=True, min_value=0)
    values, grid = _plane_values(f)
    indices = hermite_indices(n)
    _check_tail(values, grid, n, tol)

    X1, X2 = grid.coordinates()
    cell = grid.dx ** 2
    return {
        alpha: float(np.sum(hermite_polynomial(alpha, X1, X2) * values) * cell)
        for alpha in indices
        }


def hermite_projection(f, n, tol=HERMITE_TAIL_TOL):
    '''
    Description
    ------------
    Spectral projection P_n f = Σ_{|α|≤n} (∫ H_α f) φ_α onto the first
    eigenspaces of the scaled operator, and its complement Q_n = 1 - P_n.
    P_0 f = (∫f) φ0.

    Parameters
    ------------
    f : SpectralField | PhysicalField
        One-component plane field.
    n : int
        Maximum order.
    tol : float
        See hermite_coefficients.

    Returns
    ------------
    projection, complement : same type as f
    '''
    values, grid = _plane_values(f)
    coefficients = hermite_coefficients(f, n, tol)

    X1, X2 = grid.coordinates()
    projected = np.zeros_like(values)
    for alpha, c in coefficients.items():
        projected += c * hermite_function(alpha, X1, X2)

    P = PhysicalField(projected[None], grid)
    Q = PhysicalField((values - projected)[None], grid)
    if isinstance(f, SpectralField):
        return to_spectral(P, f.frame), to_spectral(Q, f.frame)
    return P, Q
