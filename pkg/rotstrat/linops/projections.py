from numbers import Real

import numpy as np

from ..spectral import SpectralField
from ..validation import SpecError, validate_value
from .params import PhysParams


def helmholtz_project(s):
    '''
    Description
    ------------
    Leray–Helmholtz projection: the velocity part is multiplied by
    δ_ij - k_i k_j/|k|², θ is untouched and k = 0 passes through.

    Parameters
    ------------
    s : SpectralField
        Four-component volume field.

    Returns
    ------------
    out : SpectralField
        Divergence-free field.
    '''
    validate_value(s, SpectralField, 's')
    if s.plane or s.ncomp < 3:
        raise SpecError('helmholtz_project needs a volume field with velocity components.')

    g = s.grid
    c = s.coeffs.copy()
    k_sq = np.where(g.k_sq == 0, 1.0, g.k_sq)
    k_dot_u = (g.K1 * c[0] + g.K2 * c[1] + g.K3 * c[2]) / k_sq

    c[0] -= g.K1 * k_dot_u
    c[1] -= g.K2 * k_dot_u
    c[2] -= g.K3 * k_dot_u
    return s.with_coeffs(c)


def _project_onto(s, vectors):
    # Σ_a ⟨v, a⟩ a per mode
    out = np.zeros_like(s.coeffs)
    for a in vectors:
        amplitude = np.sum(np.conj(a) * s.coeffs, axis=0)
        out += amplitude * a
    return out


def geostrophic_project(s, params):
    '''
    Description
    ------------
    Geostrophic projector S: f̂ ↦ ⟨f̂, a_g⟩ a_g per mode. The mean (k = 0)
    has no geostrophic direction and is mapped to zero.

    Parameters
    ------------
    s : SpectralField
        Four-component volume field.
    params : PhysParams
        Supplies η.

    Returns
    ------------
    out : SpectralField
    '''
    validate_value(s, SpectralField, 's')
    validate_value(params, PhysParams, 'params')
    table = s.grid.mode_table(params.eta)
    return s.with_coeffs(_project_onto(s, [table.a_g]))


def ageostrophic_project(s, params):
    ''' complement (1 - S) '''
    return s - geostrophic_project(s, params)


def wave_project(s, params, branch):
    ''' projection onto a_+ or a_- per mode '''
    validate_value(branch, str, 'branch', whitelist=['+', '-'])
    table = s.grid.mode_table(params.eta)
    vector = table.a_plus if branch == '+' else table.a_minus
    return s.with_coeffs(_project_onto(s, [vector]))


def chi(r):
    '''
    Description
    ------------
    C∞ cutoff profile: 1 on [0, 1], 0 on [2, ∞) and
    g(2 - r)/(g(2 - r) + g(r - 1)) in between, with g(s) = e^{-1/s}.

    Parameters
    ------------
    r : float | np.ndarray
        Nonnegative radius.

    Returns
    ------------
    out : np.ndarray
        Profile values in [0, 1].
    '''
    r = np.asarray(r, dtype=float)

    def g(x):
        safe = np.where(x > 0, x, 1.0)
        return np.where(x > 0, np.exp(-1.0 / safe), 0.0)

    left, right = g(2.0 - r), g(r - 1.0)
    total = left + right
    middle = left / np.where(total > 0, total, 1.0)
    return np.where(r <= 1.0, 1.0, np.where(r >= 2.0, 0.0, middle))


def band_project(s, R):
    '''
    Description
    ------------
    Smooth low-pass multiplier P_R: each mode is scaled by χ(|k|/R).

    Parameters
    ------------
    s : SpectralField
        Volume field.
    R : float
        Cutoff, > 0.

    Returns
    ------------
    out : SpectralField
    '''
    validate_value(s, SpectralField, 's')
    validate_value(R, Real, 'R', finite=True, min_value=0)
    k_sq = s.grid.ph_sq if s.plane else s.grid.k_sq
    return s.with_coeffs(s.coeffs * chi(np.sqrt(k_sq) / R))
