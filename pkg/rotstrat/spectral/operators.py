import numpy as np

from ..validation import SpecError, validate_value
from .fields import SpectralField


def _require_volume(s, name='s'):
    validate_value(s, SpectralField, name)
    if s.plane:
        raise SpecError(f"'{name}' must be a volume field, got a plane field.")


def _require_plane(s, ncomp, name='s'):
    validate_value(s, SpectralField, name)
    if not s.plane:
        raise SpecError(f"'{name}' must be a plane field, got a volume field.")
    if s.ncomp != ncomp:
        raise SpecError(
            f"'{name}' must have {ncomp} component(s), got: {s.ncomp}."
            )


def vertical_mean(s):
    '''
    Description
    ------------
    Barotropic part Qv: keeps the n = 0 modes. For stress-free walls the
    odd components have no n = 0 content, so their mean is zero.

    Parameters
    ------------
    s : SpectralField
        Volume field.

    Returns
    ------------
    out : SpectralField
        Volume field holding only n = 0 modes.
    '''
    _require_volume(s)
    coeffs = np.zeros_like(s.coeffs)
    coeffs[..., 0] = s.coeffs[..., 0]
    return s.with_coeffs(coeffs)


def baroclinic_part(s):
    ''' (1 - Q)v '''
    _require_volume(s)
    coeffs = s.coeffs.copy()
    coeffs[..., 0] = 0
    return s.with_coeffs(coeffs)


def barotropic_plane(s):
    ''' n = 0 slice of a volume field as a plane field '''
    _require_volume(s)
    return s.with_coeffs(s.coeffs[..., 0].copy())


def plane_to_volume(s):
    ''' embeds a plane field as the x3-independent volume field '''
    validate_value(s, SpectralField, 's')
    coeffs = np.zeros((*s.coeffs.shape, s.grid.spec.Nv), dtype=complex)
    coeffs[..., 0] = s.coeffs
    return s.with_coeffs(coeffs)


def curl(s):
    '''
    Description
    ------------
    Vorticity i k × û of the velocity part of a volume field.

    Parameters
    ------------
    s : SpectralField
        Volume field with at least three (velocity) components.

    Returns
    ------------
    omega : SpectralField
        Three-component vorticity.
    '''
    _require_volume(s)
    if s.ncomp < 3:
        raise SpecError('curl needs the three velocity components.')
    g = s.grid
    u1, u2, u3 = s.coeffs[:3]
    omega = np.stack([
        1j * (g.K2 * u3 - g.K3 * u2),
        1j * (g.K3 * u1 - g.K1 * u3),
        1j * (g.K1 * u2 - g.K2 * u1),
        ])
    return s.with_coeffs(omega)


def divergence(s):
    ''' i k · û of the first three (volume) or two (plane) components '''
    validate_value(s, SpectralField, 's')
    g = s.grid
    c = s.coeffs
    if s.plane:
        div = 1j * (g.P1 * c[0] + g.P2 * c[1])
    else:
        div = 1j * (g.K1 * c[0] + g.K2 * c[1] + g.K3 * c[2])
    return s.with_coeffs(div[None])


def gradient(f):
    ''' i k f̂ of a scalar field; two components for plane fields '''
    validate_value(f, SpectralField, 'f')
    g = f.grid
    c = f.coeffs[0]
    if f.plane:
        parts = [g.P1 * c, g.P2 * c]
    else:
        parts = [g.K1 * c, g.K2 * c, g.K3 * c]
    return f.with_coeffs(1j * np.stack(parts))


def laplacian(s):
    ''' -|k|² ŝ componentwise '''
    validate_value(s, SpectralField, 's')
    k_sq = s.grid.ph_sq if s.plane else s.grid.k_sq
    return s.with_coeffs(-k_sq * s.coeffs)


def curl2(uh):
    '''
    Description
    ------------
    Scalar curl ∂1 u2 - ∂2 u1 of a plane 2-vector.

    Parameters
    ------------
    uh : SpectralField
        Two-component plane field.

    Returns
    ------------
    omega3 : SpectralField
        One-component plane field.
    '''
    _require_plane(uh, 2, 'uh')
    g = uh.grid
    omega = 1j * (g.P1 * uh.coeffs[1] - g.P2 * uh.coeffs[0])
    return uh.with_coeffs(omega[None])


def skew_gradient(f):
    '''
    Description
    ------------
    ∇⊥_h f = (∂2 f, -∂1 f) of a plane scalar.

    Parameters
    ------------
    f : SpectralField
        One-component plane field.

    Returns
    ------------
    g : SpectralField
        Two-component plane field, divergence free.
    '''
    _require_plane(f, 1, 'f')
    g = f.grid
    c = f.coeffs[0]
    return f.with_coeffs(np.stack([1j * g.P2 * c, -1j * g.P1 * c]))
