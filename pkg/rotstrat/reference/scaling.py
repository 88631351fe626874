import logging
from numbers import Real

import numpy as np

from ..mixins import ReprMixin
from ..spectral import (
    Grid,
    GridSpec,
    SpectralField,
    baroclinic_part,
    barotropic_plane,
    curl,
    curl2,
    make_grid,
    skew_gradient,
    )
from ..validation import ResolutionError, SpecError, validate_value


logger = logging.getLogger(__name__)

# relative slack allowed when a target box touches the source box edge
EDGE_SLACK = 1e-12


def _phase_matrix(k, y):
    return np.exp(1j * np.outer(y, k))


def scale_field2d(s, factor, target, amplitude=1.0):
    '''
    Description
    ------------
    Horizontal resampling by wavenumber rescaling: returns the field
    y ↦ amplitude · s(factor · y, x3) on the target grid. The source
    trigonometric polynomial is evaluated exactly at the stretched points,
    so band-limited fields are resampled to spectral accuracy.

    Parameters
    ------------
    s : SpectralField
        Plane or volume field.
    factor : float
        Stretch factor, > 0.
    target : Grid
        Grid of the result. Volume fields require the same vertical layout.
    amplitude : float
        Multiplier applied to the resampled values.

    Returns
    ------------
    out : SpectralField
        Field on the target grid.
    '''
    validate_value(s, SpectralField, 's')
    validate_value(factor, Real, 'factor', finite=True, min_value=0)
    validate_value(target, Grid, 'target')
    validate_value(amplitude, Real, 'amplitude', finite=True)

    source = s.grid
    if not s.plane and (
        target.spec.Nv != source.spec.Nv or target.spec.bc != source.spec.bc
        ):
        raise SpecError('volume fields can only be resampled onto the same vertical layout.')

    reach = factor * target.spec.L
    if reach > source.spec.L * (1.0 + EDGE_SLACK):
        raise ResolutionError(
            f'resampled box of width {reach:.6g} extrapolates beyond the '
            f'source box of width {source.spec.L:.6g}.'
            )

    E = _phase_matrix(source.k1, factor * target.x)
    if s.plane:
        values = np.einsum('pj,cjk,qk->cpq', E, s.coeffs, E, optimize=True)
    else:
        values = np.einsum('pj,cjkn,qk->cpqn', E, s.coeffs, E, optimize=True)
        values = np.fft.ifft(values, axis=-1) * source.spec.Nv

    coeffs = target.forward(amplitude * values.real, plane=s.plane)
    return SpectralField(coeffs, target, s.frame)


def heat_evolve2d(f, t):
    ''' exact heat semigroup e^{tΔ} on a plane field '''
    validate_value(f, SpectralField, 'f')
    validate_value(t, Real, 't', finite=True, min_value=0, min_inclusive=True)
    if not f.plane:
        raise SpecError("'f' must be a plane field.")
    return f.with_coeffs(f.coeffs * np.exp(-f.grid.ph_sq * t))


def scaled_grid(spec, t):
    '''
    Description
    ------------
    ξ-grid whose box is the x-box shrunk by √(1+t); with it to_scaled and
    from_scaled map collocation points onto collocation points.

    Parameters
    ------------
    spec : GridSpec
        Physical grid description.
    t : float
        Time, ≥ 0.

    Returns
    ------------
    grid : Grid
    '''
    validate_value(t, Real, 't', finite=True, min_value=0, min_inclusive=True)
    return make_grid(GridSpec(
        spec.L / np.sqrt(1.0 + t),
        spec.N,
        spec.Nv,
        spec.bc,
        spec.dealias_fraction,
        ))


class ScaledSnapshot(ReprMixin):
    '''
    Description
    ------------
    A state in scaling variables ξ = x_h/√(1+t), τ = log(1+t). The primitive
    components are stored as √(1+t) v(√(1+t) ξ, x3); the vorticities carry
    the factor (1+t). Barotropic vorticities are exact curls of the scaled
    velocity in ξ, the baroclinic vorticity is resampled separately because
    its vertical derivatives do not rescale.
    '''

    _repr_attrs = ('t', 'tau', 'grid')

    def __init__(self, state, t, omega_tilde):
        self.state = state
        self.t = float(t)
        self.omega_tilde = omega_tilde

    @property
    def tau(self):
        return float(np.log1p(self.t))

    @property
    def grid(self):
        return self.state.grid

    @property
    def barotropic(self):
        ''' scaled (ū1, ū2, ū3, θ̄) as a plane field '''
        return barotropic_plane(self.state)

    @property
    def omega3(self):
        plane = self.barotropic
        return curl2(plane.with_coeffs(plane.coeffs[:2]))

    @property
    def omega_h(self):
        plane = self.barotropic
        return skew_gradient(plane.with_coeffs(plane.coeffs[2:3]))

    @property
    def Theta(self):
        plane = self.barotropic
        return skew_gradient(plane.with_coeffs(plane.coeffs[3:4]))


def to_scaled(snapshot, t, xi_grid=None):
    '''
    Description
    ------------
    Transforms a state at time t into scaling variables. Velocities and
    temperatures are multiplied by √(1+t), vorticities (barotropic and
    baroclinic) by (1+t).

    Parameters
    ------------
    snapshot : SpectralField
        Four-component volume state at time t.
    t : float
        Time, ≥ 0.
    xi_grid : Grid | None
        Fixed ξ-grid. Defaults to scaled_grid(snapshot.grid.spec, t). The
        stretched ξ-box must fit inside the x-box.

    Returns
    ------------
    scaled : ScaledSnapshot
    '''
    validate_value(snapshot, SpectralField, 'snapshot')
    validate_value(t, Real, 't', finite=True, min_value=0, min_inclusive=True)
    if snapshot.plane or snapshot.ncomp != 4:
        raise SpecError("'snapshot' must be a four-component volume field.")
    if xi_grid is None:
        xi_grid = scaled_grid(snapshot.grid.spec, t)

    s = 1.0 + t
    root = np.sqrt(s)
    state = scale_field2d(snapshot, root, xi_grid, amplitude=root)
    omega_tilde = scale_field2d(curl(baroclinic_part(snapshot)), root, xi_grid, amplitude=s)

    logger.debug('scaled snapshot at t=%r onto L_xi=%r', t, xi_grid.spec.L)
    return ScaledSnapshot(state, t, omega_tilde)


def from_scaled(scaled, tau, grid):
    '''
    Description
    ------------
    Inverse of to_scaled: v(x) = V(x/√(1+t))/√(1+t) with t = e^τ - 1.

    Parameters
    ------------
    scaled : ScaledSnapshot
        State in scaling variables.
    tau : float
        Scaled time, ≥ 0.
    grid : Grid
        Physical grid of the result. Its box shrunk by √(1+t) must fit in
        the ξ-box.

    Returns
    ------------
    snapshot : SpectralField
        Four-component volume state.
    '''
    validate_value(scaled, ScaledSnapshot, 'scaled')
    validate_value(tau, Real, 'tau', finite=True, min_value=0, min_inclusive=True)

    root = np.exp(0.5 * tau)
    return scale_field2d(scaled.state, 1.0 / root, grid, amplitude=1.0 / root)
