import numpy as np

from ..biotsavart import vorticity_state
from ..linops import PhysParams, geostrophic_project, rotate_frame
from ..reference import VortexParams, vortex_vorticity
from ..spectral import (
    SpectralField,
    baroclinic_part,
    energy,
    grad_sq,
    h1_norm,
    l2_norm,
    weighted_norm,
    )
from ..validation import FitError, validate_value
from .series import TimeSeries


def barotropic_vorticity(v):
    ''' ω̄3 of a volume state as a one-component plane field '''
    return vorticity_state(v).omega3_bar


def psi(v, r, lam=None):
    '''
    Description
    ------------
    Energy functional Ψ = ‖ω̄3‖_{L¹} + ‖ω̄3‖²_{L²} + ‖∇r‖²_{L²}. When λ is
    given the extended functional adds ‖r‖²_{H¹} + ‖λ‖²_{H¹}.

    Parameters
    ------------
    v : SpectralField
        State.
    r : SpectralField
        Remainder of the λ/r split.
    lam : SpectralField | None
        Linear part of the split.

    Returns
    ------------
    value : float
    '''
    omega3 = barotropic_vorticity(v)
    return _psi(weighted_norm(omega3, p=1), energy(omega3), r, lam)


def _psi(l1, l2sq, r, lam):
    value = l1 + l2sq + grad_sq(r)
    if lam is not None:
        value += h1_norm(r) ** 2 + h1_norm(lam) ** 2
    return value


def functionals_at(v, lam, r):
    ''' every energy functional of one record, keyed by series name '''
    omega3 = barotropic_vorticity(v)
    l1, l2sq = weighted_norm(omega3, p=1), energy(omega3)
    tilde = baroclinic_part(v)
    return {
        'omega3_L1': l1,
        'omega3_L2sq': l2sq,
        'grad_r_sq': grad_sq(r),
        'psi': _psi(l1, l2sq, r, None),
        'psi_bar': _psi(l1, l2sq, r, lam),
        'baroclinic_H1': h1_norm(tilde),
        }


def energy_functionals(traj, split):
    '''
    Description
    ------------
    Evaluates the energy functionals on every record of a trajectory:
    ‖ω̄3‖_{L¹}, ‖ω̄3‖²_{L²}, ‖∇r‖²_{L²}, Ψ, the extended Ψ̄ and ‖ṽ‖_{H¹}.

    Parameters
    ------------
    traj : Trajectory
        Run with kept states.
    split : LambdaRSplit
        λ/r split of the same run.

    Returns
    ------------
    series : dict[str, TimeSeries]
    '''
    if split is None:
        raise FitError('the energy functional Ψ needs the λ/r split of the run.')
    if traj.states is None:
        raise FitError('the trajectory kept no states.')
    if len(split.r) != traj.n_records:
        raise FitError('split and trajectory have different record counts.')

    rows = [
        functionals_at(state.v, lam, r)
        for state, lam, r in zip(traj.states, split.lam, split.r)
        ]
    return {
        name: TimeSeries(name, traj.times, [row[name] for row in rows])
        for name in rows[0]
        }


def geostrophic_split(v, params):
    ''' (‖Sṽ‖_{L²}, ‖(1 - S)ṽ‖_{L²}) of the baroclinic part '''
    validate_value(params, PhysParams, 'params')
    tilde = baroclinic_part(v)
    geo = geostrophic_project(tilde, params)
    return l2_norm(geo), l2_norm(tilde - geo)


def geostrophic_norms(traj, params):
    '''
    Description
    ------------
    Geostrophic and ageostrophic L² norms of the baroclinic part of every
    record.

    Parameters
    ------------
    traj : Trajectory
        Run with kept states.
    params : PhysParams
        Supplies η for the projector S.

    Returns
    ------------
    geostrophic, ageostrophic : TimeSeries
    '''
    if traj.states is None:
        raise FitError('the trajectory kept no states.')
    pairs = np.array([geostrophic_split(s.v, params) for s in traj.states])
    return (
        TimeSeries('geostrophic_L2', traj.times, pairs[:, 0]),
        TimeSeries('ageostrophic_L2', traj.times, pairs[:, 1]),
        )


def gaussian_distance(v, t):
    '''
    Description
    ------------
    Distance of the barotropic vorticity to the Gaussian of equal mass,
    ‖ω̄3 - m/(1+t) φ0(x/√(1+t))‖_{L¹} with m = ∫ω̄3. The L¹ norm is
    invariant under the scaling change of variables, so this equals
    ‖Q0 w‖_{L¹} in ξ at τ = log(1+t). In background runs the background is
    itself such a Gaussian and cancels, so the perturbation is passed
    alone.

    Parameters
    ------------
    v : SpectralField
        State, or perturbation in background runs.
    t : float
        Time of the state.

    Returns
    ------------
    distance : float
    '''
    validate_value(v, SpectralField, 'v')
    omega3 = barotropic_vorticity(v)
    mass = omega3.coeffs[0, 0, 0].real * v.grid.area
    gaussian = vortex_vorticity(v.grid, VortexParams(A=mass), t)
    return weighted_norm(omega3 - gaussian, p=1)


def rotating_moments(moments, params, t):
    ''' (∫ū3, ∫θ̄) taken back to t = 0 by the inverse frame rotation '''
    return rotate_frame((moments.B1, moments.B2), -params.Gamma * t)
