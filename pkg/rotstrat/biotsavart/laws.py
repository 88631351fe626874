import numpy as np

from ..mixins import ReprMixin
from ..spectral import (
    SpectralField,
    baroclinic_part,
    barotropic_plane,
    curl,
    curl2,
    skew_gradient,
    to_physical,
    weighted_norm,
    )
from ..validation import SpecError, validate_value

SOLENOIDAL_TOL = 1e-10


def _solenoidal_residual(s):
    g = s.grid
    c = s.coeffs
    if s.plane:
        div = g.P1 * c[0] + g.P2 * c[1]
        k = np.sqrt(g.ph_sq)
    else:
        div = g.K1 * c[0] + g.K2 * c[1] + g.K3 * c[2]
        k = np.sqrt(g.k_sq)
    scale = np.sqrt(np.sum(np.abs(k * c) ** 2))
    return 0.0 if scale == 0 else float(np.sqrt(np.sum(np.abs(div) ** 2)) / scale)


def velocity_from_vorticity_3d(omega_tilde):
    '''
    Description
    ------------
    Baroclinic Biot–Savart law û = i k × ω̂/|k|², so that curl ũ = ω̃ and
    div ũ = 0 for solenoidal ω̃.

    Parameters
    ------------
    omega_tilde : SpectralField
        Three-component volume vorticity without n = 0 content.

    Returns
    ------------
    u_tilde : SpectralField
        Three-component baroclinic velocity.
    '''
    validate_value(omega_tilde, SpectralField, 'omega_tilde')
    if omega_tilde.plane or omega_tilde.ncomp != 3:
        raise SpecError("'omega_tilde' must be a three-component volume field.")

    c = omega_tilde.coeffs
    scale = max(np.abs(c).max(), 1e-300)
    if np.abs(c[..., 0]).max() > 1e-12 * scale:
        raise SpecError(
            'omega_tilde has n = 0 content; the barotropic part is '
            'inverted by velocity2d_from_vorticity.'
            )

    if _solenoidal_residual(omega_tilde) > SOLENOIDAL_TOL:
        raise SpecError("'omega_tilde' is not divergence free.")

    g = omega_tilde.grid
    k_sq = np.where(g.k_sq == 0, 1.0, g.k_sq)
    w1, w2, w3 = c
    u = 1j * np.stack([
        g.K2 * w3 - g.K3 * w2,
        g.K3 * w1 - g.K1 * w3,
        g.K1 * w2 - g.K2 * w1,
        ]) / k_sq
    u[..., 0] = 0
    return omega_tilde.with_coeffs(u)


def velocity2d_from_vorticity(omega3_bar):
    '''
    Description
    ------------
    Planar Biot–Savart law û_h = i (k2, -k1) ω̂/|k_h|², i.e. ū_h = ∇⊥ψ with
    -Δψ = ω̄3. The orientation makes curl2 ū_h = ω̄3 and maps the
    Gaussian φ0 to the counterclockwise Oseen velocity. The mean velocity
    is set to zero.

    Parameters
    ------------
    omega3_bar : SpectralField
        One-component plane field with zero mean.

    Returns
    ------------
    u_h : SpectralField
        Two-component plane velocity, divergence free.
    '''
    validate_value(omega3_bar, SpectralField, 'omega3_bar')
    if not omega3_bar.plane or omega3_bar.ncomp != 1:
        raise SpecError("'omega3_bar' must be a one-component plane field.")

    c = omega3_bar.coeffs[0]
    if abs(c[0, 0]) > 1e-12 * max(np.abs(c).max(), 1e-300):
        raise SpecError(
            "'omega3_bar' must have zero mean on the periodic box, "
            f'got mean: {c[0, 0].real!r}.'
            )

    g = omega3_bar.grid
    ph_sq = np.where(g.ph_sq == 0, 1.0, g.ph_sq)
    u = 1j * np.stack([g.P2 * c, -g.P1 * c]) / ph_sq
    u[:, 0, 0] = 0
    return omega3_bar.with_coeffs(u)


def potential_from_skew_gradient(g, mean=0.0):
    '''
    Description
    ------------
    Recovers f with ∇⊥_h f = g: f̂ = -i(k2 ĝ1 - k1 ĝ2)/|k_h|², with the zero
    mode set to `mean`.

    Parameters
    ------------
    g : SpectralField
        Two-component divergence-free plane field.
    mean : float
        Spatial mean of the recovered potential.

    Returns
    ------------
    f : SpectralField
        One-component plane field.
    '''
    validate_value(g, SpectralField, 'g')
    if not g.plane or g.ncomp != 2:
        raise SpecError("'g' must be a two-component plane field.")

    residual = _solenoidal_residual(g)
    if residual > SOLENOIDAL_TOL:
        raise SpecError(
            f"'g' is not divergence free (relative residual {residual:.3e})."
            )

    grid = g.grid
    ph_sq = np.where(grid.ph_sq == 0, 1.0, grid.ph_sq)
    f = -1j * (grid.P2 * g.coeffs[0] - grid.P1 * g.coeffs[1]) / ph_sq
    f[0, 0] = mean
    return g.with_coeffs(f[None])


class VorticityState(ReprMixin):
    '''
    Description
    ------------
    Vorticity-form description of a state: the barotropic vertical
    vorticity, the skew gradients of ū3 and θ̄ together with their means,
    and the baroclinic vorticity.
    '''

    _repr_attrs = ('omega3_bar', 'omega_h_bar', 'Theta_bar', 'mean_u3', 'mean_theta', 'omega_tilde')

    def __init__(
        self,
        omega3_bar,
        omega_h_bar,
        Theta_bar,
        mean_u3,
        mean_theta,
        omega_tilde,
        ):
        self.omega3_bar = omega3_bar
        self.omega_h_bar = omega_h_bar
        self.Theta_bar = Theta_bar
        self.mean_u3 = float(mean_u3)
        self.mean_theta = float(mean_theta)
        self.omega_tilde = omega_tilde

    @property
    def grid(self):
        return self.omega3_bar.grid


def vorticity_state(v):
    '''
    Description
    ------------
    Builds the VorticityState of a four-component volume state.

    Parameters
    ------------
    v : SpectralField
        State (u1, u2, u3, θ).

    Returns
    ------------
    state : VorticityState
    '''
    validate_value(v, SpectralField, 'v')
    plane = barotropic_plane(v)
    c = plane.coeffs

    omega3_bar = curl2(plane.with_coeffs(c[:2]))
    omega_h_bar = skew_gradient(plane.with_coeffs(c[2:3]))
    Theta_bar = skew_gradient(plane.with_coeffs(c[3:4]))
    omega_tilde = curl(baroclinic_part(v))

    return VorticityState(
        omega3_bar=omega3_bar,
        omega_h_bar=omega_h_bar,
        Theta_bar=Theta_bar,
        mean_u3=c[2, 0, 0].real,
        mean_theta=c[3, 0, 0].real,
        omega_tilde=omega_tilde,
        )


def state_from_vorticity(state, theta_tilde):
    '''
    Description
    ------------
    Inverts vorticity_state: reassembles (u1, u2, u3, θ) from the vorticity
    description plus the baroclinic temperature, which has no vorticity
    counterpart.

    Parameters
    ------------
    state : VorticityState
        Vorticity description.
    theta_tilde : SpectralField
        One-component volume field with zero vertical mean.

    Returns
    ------------
    v : SpectralField
        Four-component volume state.
    '''
    validate_value(state, VorticityState, 'state')
    grid = state.grid

    u_h = velocity2d_from_vorticity(state.omega3_bar)
    u3 = potential_from_skew_gradient(state.omega_h_bar, state.mean_u3)
    theta = potential_from_skew_gradient(state.Theta_bar, state.mean_theta)
    u_tilde = velocity_from_vorticity_3d(state.omega_tilde)

    coeffs = np.zeros((4, *grid.shape), dtype=complex)
    coeffs[:3] = u_tilde.coeffs
    coeffs[3] = theta_tilde.coeffs[0]
    coeffs[:2, ..., 0] += u_h.coeffs
    coeffs[2, ..., 0] += u3.coeffs[0]
    coeffs[3, ..., 0] += theta.coeffs[0]
    return SpectralField(coeffs, grid)


def biot_savart_ratio(omega3_bar):
    '''
    Description
    ------------
    Empirical constant ‖ū_h‖_{L⁴}/‖ω̄3‖_{L^{4/3}} of the planar
    Biot–Savart law for one vorticity field.

    Parameters
    ------------
    omega3_bar : SpectralField
        One-component zero-mean plane field.

    Returns
    ------------
    ratio : float
    '''
    u_h = velocity2d_from_vorticity(omega3_bar)
    denominator = weighted_norm(to_physical(omega3_bar), p=4.0 / 3.0)
    if denominator == 0:
        return 0.0
    return weighted_norm(to_physical(u_h), p=4.0) / denominator
