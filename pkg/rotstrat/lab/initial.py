import logging
from numbers import Integral, Real

import numpy as np

from ..biotsavart import velocity2d_from_vorticity
from ..dynamics import SimState
from ..linops import PhysParams, ageostrophic_project, helmholtz_project, linear_frequency
from ..reference import VortexParams, hermite_function, vortex_state
from ..spectral import (
    SpectralField,
    dealias,
    enforce_parity,
    l2_norm,
    make_grid,
    plane_to_volume,
    sample_physical,
    to_spectral,
    )
from ..validation import SpecError, validate_value
from ._constants import BRANCHES
from .snapshot import load_snapshot


logger = logging.getLogger(__name__)


def vortex_initial(grid, p, formulation='full'):
    '''
    Description
    ------------
    Initial field of a vortex run. In background mode the vortex is carried
    analytically and the perturbation starts at zero; in full-field runs the
    vortex (A = 0) is sampled with one ring of periodic images.

    Parameters
    ------------
    grid : Grid
        Target grid.
    p : VortexParams
        Family amplitudes.
    formulation : str
        'full' or 'background_perturbation'.

    Returns
    ------------
    v : SpectralField
    '''
    validate_value(p, VortexParams, 'p')
    if formulation == 'background_perturbation':
        return SpectralField.zeros(grid)
    if p.A != 0:
        raise SpecError('a vortex with A ≠ 0 has no periodic velocity field.')
    return vortex_state(grid, p, 0.0, images=1)


def dipole(grid, amplitude, scale=1.0):
    '''
    Description
    ------------
    Mean-zero barotropic dipole with ω̄3 ∝ ∂1 φ0, scaled so that
    ‖ω̄3‖_{L²} = amplitude · scale · ‖φ0‖_{L²}.

    Parameters
    ------------
    grid : Grid
        Target grid.
    amplitude : float
        Relative size.
    scale : float
        Reference circulation, usually max(|A|, 1).

    Returns
    ------------
    v : SpectralField
        x3-independent volume state.
    '''
    validate_value(amplitude, Real, 'amplitude', finite=True)

    omega = to_spectral(sample_physical(grid, lambda X1, X2: hermite_function((1, 0), X1, X2)))
    gauss = to_spectral(sample_physical(grid, lambda X1, X2: hermite_function((0, 0), X1, X2)))
    omega.coeffs[0, 0, 0] = 0.0

    size = l2_norm(omega)
    if size == 0:
        return SpectralField.zeros(grid)
    omega = omega * (amplitude * scale * l2_norm(gauss) / size)

    u_h = velocity2d_from_vorticity(omega)
    coeffs = np.zeros((4, *grid.plane_shape), dtype=complex)
    coeffs[:2] = u_h.coeffs
    return dealias(plane_to_volume(SpectralField(coeffs, grid)))


def random_baroclinic(
    grid,
    params,
    seed=0,
    k_min=0.0,
    k_max=8.0,
    amplitude=1.0,
    remove_geostrophic=False,
    ):
    '''
    Description
    ------------
    Seeded random baroclinic state with Fourier support in the shell
    k_min ≤ |k| ≤ k_max, divergence free, n ≠ 0 only and normalized to
    ‖v‖_{L²} = amplitude.

    Parameters
    ------------
    grid : Grid
        Target grid.
    params : PhysParams
        Supplies η when the geostrophic part is removed.
    seed : int
        Seed of numpy's default generator; equal seeds give equal fields.
    k_min, k_max : float
        Shell radii in wavenumber units.
    amplitude : float
        L² norm of the result.
    remove_geostrophic : bool
        If True, the a_g component of every mode is projected out.

    Returns
    ------------
    v : SpectralField
    '''
    validate_value(params, PhysParams, 'params')
    validate_value(seed, Integral, 'seed', min_value=0, min_inclusive=True)
    validate_value(amplitude, Real, 'amplitude', finite=True, min_value=0, min_inclusive=True)

    rng = np.random.default_rng(seed)
    noise = rng.standard_normal((4, *grid.shape))
    v = to_spectral(sample_physical(grid, lambda X1, X2, X3: noise, plane=False))

    k = np.sqrt(grid.k_sq)
    band = (k >= k_min) & (k <= k_max) & (grid.K3 != 0) & grid.mask
    v = v.with_coeffs(v.coeffs * band)
    v = enforce_parity(helmholtz_project(enforce_parity(v)))

    if remove_geostrophic:
        v = ageostrophic_project(v, params)

    size = l2_norm(v)
    if size == 0:
        raise SpecError(
            f'the shell {k_min:g} ≤ |k| ≤ {k_max:g} holds no baroclinic modes on this grid.'
            )
    return v * (amplitude / size)


def single_mode(grid, params, k1=1, k2=0, n=1, branch='+', amplitude=1.0):
    '''
    Description
    ------------
    Real field made of one eigenvector of P J_η P and its complex conjugate
    at the opposite wavevector.

    Parameters
    ------------
    grid : Grid
        Target grid.
    params : PhysParams
        Supplies η for the eigenframe.
    k1, k2, n : int
        Mode indices; the wavevector is (2π k1/L, 2π k2/L, π n) for
        stress-free walls and (.., .., 2π n) otherwise.
    branch : str
        'g' (geostrophic), '+' or '-'.
    amplitude : float
        Coefficient of the mode.

    Returns
    ------------
    v : SpectralField
    '''
    validate_value(branch, str, 'branch', whitelist=BRANCHES)
    for name, value in (('k1', k1), ('k2', k2), ('n', n)):
        validate_value(value, Integral, name)

    if k1 == 0 and k2 == 0 and n == 0:
        raise SpecError('the zero wavevector carries no eigenvector.')
    if max(abs(k1), abs(k2)) > grid.cutoff_h or abs(n) > grid.cutoff_v:
        raise SpecError(f'mode ({k1}, {k2}, {n}) is removed by dealiasing.')

    table = grid.mode_table(params.eta)
    vector = {'g': table.a_g, '+': table.a_plus, '-': table.a_minus}[branch]

    N, Nv = grid.spec.N, grid.spec.Nv
    index = (k1 % N, k2 % N, n % Nv)
    mirror = (-k1 % N, -k2 % N, -n % Nv)

    coeffs = np.zeros((4, *grid.shape), dtype=complex)
    coeffs[(slice(None), *index)] = amplitude * vector[(slice(None), *index)]
    coeffs[(slice(None), *mirror)] = np.conj(coeffs[(slice(None), *index)])
    return enforce_parity(SpectralField(coeffs, grid))


def single_mode_reference(v0, params, k1=1, k2=0, n=1, branch='+', amplitude=1.0):
    '''
    Description
    ------------
    Closed-form linear evolution of a single_mode field on a periodic grid:
    the coefficient at k turns with e^{-iσΓp_η t} (σ = 1, -1, 0 for '+',
    '-', 'g') and decays with e^{-ν|k|²t}; the mirror mode is its
    conjugate.

    Parameters
    ------------
    v0 : SpectralField
        Field returned by single_mode.
    params : PhysParams
        Physical parameters of the run.
    k1, k2, n, branch, amplitude
        As passed to single_mode.

    Returns
    ------------
    reference : callable
        t ↦ SpectralField.
    '''
    grid = v0.grid
    if grid.spec.stress_free:
        raise SpecError('the closed-form single-mode reference needs a periodic grid.')

    N, Nv = grid.spec.N, grid.spec.Nv
    index = (k1 % N, k2 % N, n % Nv)
    mirror = (-k1 % N, -k2 % N, -n % Nv)
    sigma = {'g': 0.0, '+': 1.0, '-': -1.0}[branch]
    omega = sigma * linear_frequency(grid, params)[index]
    rate = params.nu * grid.k_sq[index]
    start = v0.coeffs[(slice(None), *index)]

    def reference(t):
        coeffs = np.zeros_like(v0.coeffs)
        value = start * np.exp((-1j * omega - rate) * t)
        coeffs[(slice(None), *index)] = value
        coeffs[(slice(None), *mirror)] = np.conj(value)
        return v0.with_coeffs(coeffs)

    return reference


def initial_state(scenario, seed=None):
    '''
    Description
    ------------
    Builds the starting SimState of a scenario.

    Parameters
    ------------
    scenario : Scenario
        Validated scenario.
    seed : int | None
        Overrides init.seed.

    Returns
    ------------
    state : SimState
    '''
    if seed is not None:
        scenario = scenario.with_seed(seed)

    kind = scenario.init_type
    init = scenario.init
    params = scenario.params

    if kind == 'from_snapshot':
        state = load_snapshot(init['path'])
        if state.grid.spec != scenario.spec:
            raise SpecError(
                f'snapshot grid {state.grid.spec!r} differs from the scenario grid '
                f'{scenario.spec!r}.'
                )
        return SimState(state.v, state.t, params, state.formulation, state.background)

    grid = make_grid(scenario.spec)
    background = scenario.background

    if kind == 'vortex':
        v = vortex_initial(grid, scenario.vortex, scenario.formulation)
    elif kind == 'vortex_plus_perturbation':
        p = scenario.vortex
        v = vortex_initial(grid, p, scenario.formulation)
        amplitude = init['perturbation_amplitude']
        for name in init['perturbation']:
            if name == 'dipole':
                v = v + dipole(grid, amplitude, max(abs(p.A), 1.0))
            elif name == 'random_baroclinic':
                v = v + random_baroclinic(
                    grid,
                    params,
                    seed=init['seed'],
                    k_min=init['k_min'],
                    k_max=init['k_max'],
                    amplitude=amplitude,
                    remove_geostrophic=init['remove_geostrophic'],
                    )
    elif kind == 'random_baroclinic':
        v = random_baroclinic(grid, params, **init)
    else:
        v = single_mode(grid, params, **init)

    logger.info('initial state %s: ‖v‖ = %.6e', kind, l2_norm(v))
    return SimState(v, 0.0, params, scenario.formulation, background)
