from numbers import Integral, Real

import numpy as np

from ..mixins import ReprMixin
from ..spectral import Grid, plane_to_volume, sample_physical, to_spectral
from ..validation import validate_array, validate_value, validate_setter


FOUR_PI = 4.0 * np.pi


def _oseen_profile(x1, x2):
    # φ0 and the swirl coefficient c(r) with 𝔲⁰ = c(r)(-x2, x1)
    r_sq = x1 ** 2 + x2 ** 2
    phi = np.exp(-0.25 * r_sq) / FOUR_PI
    quarter = 0.25 * r_sq
    safe = np.where(quarter > 0, quarter, 1.0)
    ratio = np.where(quarter > 0, -np.expm1(-safe) / safe, 1.0)
    swirl = ratio / (8.0 * np.pi)
    return phi, swirl


def _split_points(x):
    x = np.asarray(x, dtype=float)
    if x.shape[-1:] != (2,):
        raise ValueError(
            f"points must have a trailing axis of length 2, got shape: {x.shape}."
            )
    return x[..., 0], x[..., 1]


def oseen(xi):
    '''
    Description
    ------------
    Oseen vortex profile: the Gaussian vorticity φ0(ξ) = e^{-|ξ|²/4}/(4π)
    and its velocity 𝔲⁰(ξ) = (1 - e^{-|ξ|²/4})/(2π|ξ|²) (-ξ2, ξ1). The
    velocity is oriented so that its scalar curl ∂1u2 - ∂2u1 equals φ0,
    and it vanishes at the origin.

    Parameters
    ------------
    xi : array-like
        Points with a trailing axis of length 2.

    Returns
    ------------
    phi0 : np.ndarray
        Vorticity at the points.
    u0 : np.ndarray
        Velocity at the points, trailing axis of length 2.
    '''
    x1, x2 = _split_points(xi)
    phi, swirl = _oseen_profile(x1, x2)
    return phi, np.stack([-swirl * x2, swirl * x1], axis=-1)


class VortexParams(ReprMixin):
    '''
    Description
    ------------
    Amplitudes of the explicit barotropic vortex family. A is the
    circulation, B1 and B2 are the integrals of ū3 and θ̄ at t = 0 and
    Gamma is the buoyancy frequency that rotates (B1, B2).

    The same record describes the conserved moments of a run: A is constant
    and (∫ū3, ∫θ̄) rotates rigidly at rate Γ.
    '''

    _repr_attrs = ('A', 'B1', 'B2', 'Gamma')

    def __init__(self, A=0.0, B1=0.0, B2=0.0, Gamma=1.0):
        self.A = A
        self.B1 = B1
        self.B2 = B2
        self.Gamma = Gamma


    #╭-------------------------------------------------------------------------╮
    #| Properties                                                              |
    #╰-------------------------------------------------------------------------╯

    @property
    def A(self):
        return self._A

    @A.setter
    @validate_setter(types=Real, finite=True, cast=float)
    def A(self, value):
        pass

    @property
    def B1(self):
        return self._B1

    @B1.setter
    @validate_setter(types=Real, finite=True, cast=float)
    def B1(self, value):
        pass

    @property
    def B2(self):
        return self._B2

    @B2.setter
    @validate_setter(types=Real, finite=True, cast=float)
    def B2(self, value):
        pass

    @property
    def Gamma(self):
        return self._Gamma

    @Gamma.setter
    @validate_setter(types=Real, finite=True, cast=float)
    def Gamma(self, value):
        pass

    @property
    def is_zero(self):
        return self.A == 0 and self.B1 == 0 and self.B2 == 0


    #╭-------------------------------------------------------------------------╮
    #| Methods                                                                 |
    #╰-------------------------------------------------------------------------╯

    def phases(self, t):
        ''' (∫ū3, ∫θ̄) at time t: (B1, B2) rotated by Γt '''
        c, s = np.cos(self.Gamma * t), np.sin(self.Gamma * t)
        return (
            self.B1 * c + self.B2 * s,
            -self.B1 * s + self.B2 * c,
            )

    def moments_at(self, t):
        ''' (A, ∫ū3, ∫θ̄) of the family on ℝ² at time t '''
        return (self.A, *self.phases(t))

    def as_tuple(self):
        return (self.A, self.B1, self.B2, self.Gamma)


def vortex_solution(p, t, x_h):
    '''
    Description
    ------------
    Evaluates the explicit vortex family
        ω̄3 = A/(1+t) φ0(ξ),         ū_h = A/√(1+t) 𝔲⁰(ξ),
        ū3 = b1(t)/(1+t) φ0(ξ),      θ̄ = b2(t)/(1+t) φ0(ξ),
    with ξ = x_h/√(1+t) and (b1, b2) = (B1, B2) rotated by Γt. Every member
    solves the barotropic system exactly: the flow is radial, so advection
    vanishes, and (ū3, θ̄) rotate at rate Γ on top of heat-kernel decay.

    Parameters
    ------------
    p : VortexParams
        Family amplitudes.
    t : float
        Time, ≥ 0.
    x_h : array-like
        Horizontal points with a trailing axis of length 2.

    Returns
    ------------
    omega3 : np.ndarray
    u_h : np.ndarray
        Trailing axis of length 2.
    u3 : np.ndarray
    theta : np.ndarray
    '''
    validate_value(p, VortexParams, 'p')
    validate_value(t, Real, 't', finite=True, min_value=0, min_inclusive=True)

    x1, x2 = _split_points(x_h)
    omega3, u1, u2, u3, theta = _family(p, t, x1, x2)
    return omega3, np.stack([u1, u2], axis=-1), u3, theta


def _family(p, t, x1, x2):
    s = 1.0 + t
    root = np.sqrt(s)
    phi, swirl = _oseen_profile(x1 / root, x2 / root)
    b1, b2 = p.phases(t)

    # 𝔲⁰(ξ) = c(ξ)(-ξ2, ξ1) and A/√s · ξ = A x/s
    speed = p.A * swirl / s
    return (
        p.A * phi / s,
        -speed * x2,
        speed * x1,
        b1 * phi / s,
        b2 * phi / s,
        )


def _image_offsets(L, images):
    shifts = L * np.arange(-images, images + 1)
    return [(a, b) for a in shifts for b in shifts]


def vortex_fields(grid, p, t=0.0, images=0):
    '''
    Description
    ------------
    Samples (ω̄3, ū1, ū2, ū3, θ̄) of the vortex family on the horizontal
    collocation points.

    Parameters
    ------------
    grid : Grid
        Grid supplying the coordinates.
    p : VortexParams
        Family amplitudes.
    t : float
        Time, ≥ 0.
    images : int
        Number of periodic image rings added to each sample. With A = 0 and
        images ≥ 1 the result is the family's exact evolution on the torus
        to within the Gaussian tail of the outermost ring.

    Returns
    ------------
    values : np.ndarray
        Array shaped (5, N, N).
    '''
    validate_value(grid, Grid, 'grid')
    validate_value(p, VortexParams, 'p')
    validate_value(t, Real, 't', finite=True, min_value=0, min_inclusive=True)
    validate_value(images, Integral, 'images', min_value=0, min_inclusive=True)

    X1, X2 = grid.coordinates()
    total = np.zeros((5, *grid.plane_shape))
    for a, b in _image_offsets(grid.spec.L, images):
        total += np.stack(_family(p, t, X1 + a, X2 + b))
    return total


def vortex_state(grid, p, t=0.0, images=0):
    '''
    Description
    ------------
    Spectral state (u1, u2, u3, θ) of the vortex family at time t as an
    x3-independent volume field. A periodic velocity carries no net
    circulation, so for A ≠ 0 the result is only a sampled reference.

    Parameters
    ------------
    grid : Grid
        Grid supplying the coordinates.
    p : VortexParams
        Family amplitudes.
    t : float
        Time, ≥ 0.
    images : int
        See vortex_fields.

    Returns
    ------------
    v : SpectralField
        Four-component volume field.
    '''
    values = vortex_fields(grid, p, t, images)[1:]
    plane = to_spectral(sample_physical(grid, lambda X1, X2: values))
    return plane_to_volume(plane)


def vortex_vorticity(grid, p, t=0.0, images=0):
    ''' ω̄3 of the family as a one-component plane field '''
    values = vortex_fields(grid, p, t, images)[0]
    return to_spectral(sample_physical(grid, lambda X1, X2: values))


def background_values(grid, p, t):
    '''
    Description
    ------------
    Physical (u1, u2, u3, θ) of the family on the horizontal collocation
    points, used as the analytic background of perturbation runs. The
    velocity wraps discontinuously at the box edge.

    Parameters
    ------------
    grid : Grid
        Grid supplying the coordinates.
    p : VortexParams
        Family amplitudes.
    t : float
        Time, ≥ 0.

    Returns
    ------------
    values : np.ndarray
        Array shaped (4, N, N).
    '''
    values = vortex_fields(grid, p, t)[1:]
    validate_array(values, 'background', shape=(4, None, None))
    return values


def edge_wrap_estimate(p, L):
    ''' |A|/(2π L/2): size of the background velocity at the box edge '''
    return abs(p.A) / (2.0 * np.pi * (0.5 * L))
