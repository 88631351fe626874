import logging
from functools import lru_cache
from numbers import Integral, Real

import numpy as np

from ..linops import PhysParams, Propagator
from ..mixins import ReprMixin
from ..reference import background_values
from ..spectral import dealias, enforce_parity, l2_norm
from ..validation import NumericalError, SpecError, validate_value
from .rhs import nonlinear_rhs
from .state import SimState, StepperConfig


logger = logging.getLogger(__name__)


@lru_cache(maxsize=16)
def _propagators(grid, values, dt):
    # E(dt/2) and E(dt) for PhysParams.as_tuple() values; a run reuses the pair
    params = PhysParams(*values)
    return Propagator(grid, params, 0.5 * dt), Propagator(grid, params, dt)


def estimate_dt(state, cfl_target, dt_max):
    '''
    Description
    ------------
    CFL rule dt = min(cfl · Δx / max|u|, dt_max), with Δx the smallest
    collocation spacing and the background velocity included in
    background mode. A motionless state gets dt_max.

    Parameters
    ------------
    state : SimState
        Initial state.
    cfl_target : float
        Courant number, > 0.
    dt_max : float
        Upper bound, > 0.

    Returns
    ------------
    dt : float
    '''
    validate_value(state, SimState, 'state')
    validate_value(cfl_target, Real, 'cfl_target', finite=True, min_value=0)
    validate_value(dt_max, Real, 'dt_max', finite=True, min_value=0)

    grid = state.grid
    velocity = grid.inverse(state.v.coeffs[:3])
    if state.has_background:
        velocity = velocity + background_values(grid, state.background, state.t)[:3, ..., None]

    speed = float(np.sqrt(np.sum(velocity ** 2, axis=0)).max())
    spacing = min(grid.dx, grid.spec.Lz / grid.spec.Nv)
    if speed == 0:
        return float(dt_max)
    return float(min(cfl_target * spacing / speed, dt_max))


def step(state, cfg):
    '''
    Description
    ------------
    One Lawson RK4 step: classical RK4 applied to w = E(-t)v, where E is the
    exact linear propagator, so the viscous and Coriolis/buoyancy terms are
    integrated exactly and only the nonlinearity is approximated. With
    cfg.linear set the step is the propagator itself.

    Parameters
    ------------
    state : SimState
        Current state.
    cfg : StepperConfig
        Step controls; cfg.dt must be set.

    Returns
    ------------
    state : SimState
        State at t + dt.
    '''
    validate_value(state, SimState, 'state')
    validate_value(cfg, StepperConfig, 'cfg')
    if cfg.dt is None:
        raise SpecError('dt is not set; call estimate_dt first.')

    h = float(cfg.dt)
    half, full = _propagators(state.grid, state.params.as_tuple(), h)
    v = state.v.coeffs
    t = state.t

    if cfg.linear:
        return state.evolve(state.v.with_coeffs(full.apply(v)), t + h)

    def N(coeffs, time):
        stage = state.evolve(state.v.with_coeffs(coeffs), time)
        return nonlinear_rhs(stage).coeffs

    Ev = half.apply(v)

    k1 = N(v, t)
    k2 = N(half.apply(v + 0.5 * h * k1), t + 0.5 * h)
    k3 = N(Ev + 0.5 * h * k2, t + 0.5 * h)
    k4 = N(half.apply(Ev + h * k3), t + h)

    out = half.apply(half.apply(v + (h / 6.0) * k1) + (h / 3.0) * (k2 + k3))
    out += (h / 6.0) * k4

    return state.evolve(state.v.with_coeffs(out), t + h)


class Trajectory(ReprMixin):
    '''
    Description
    ------------
    Records of a run: the record times, one dict of scalar observations per
    record and, when kept, the states themselves. Immutable once the run
    returns.
    '''

    _repr_attrs = ('dt', 'nsteps', 'cadence', 'n_records')

    def __init__(self, times, observations, states, dt, nsteps, cadence):
        self.times = np.asarray(times, dtype=float)
        self.observations = list(observations)
        self.states = None if states is None else list(states)
        self.dt = float(dt)
        self.nsteps = int(nsteps)
        self.cadence = int(cadence)

    @property
    def n_records(self):
        return len(self.times)

    @property
    def final(self):
        if not self.states:
            raise ValueError('the trajectory kept no states.')
        return self.states[-1]

    def values(self, name):
        ''' observations of one quantity as an array '''
        return np.array([obs[name] for obs in self.observations], dtype=float)


def _check_finite(state, reference, factor):
    coeffs = state.v.coeffs
    if not np.all(np.isfinite(coeffs)):
        raise NumericalError(f'non-finite coefficients at t={state.t:.6g}.')
    if reference > 0:
        norm = l2_norm(state.v)
        if norm > factor * reference:
            raise NumericalError(
                f'blow-up guard: ‖v‖ = {norm:.3e} exceeds {factor:.0e} × '
                f'initial {reference:.3e} at t={state.t:.6g}.'
                )


def run(state, cfg, T, cadence=None, observe=None, keep_states=True):
    '''
    Description
    ------------
    Integrates from state.t to state.t + T with a fixed step, recording at
    the given cadence and at the final time. The step is cfg.dt, or the CFL
    estimate at t = 0, shortened so that T is an exact number of steps.

    Parameters
    ------------
    state : SimState
        Initial state; dealiased on entry.
    cfg : StepperConfig
        Step controls.
    T : float
        Duration, ≥ 0.
    cadence : int | None
        Steps between records; defaults to max(1, nsteps // 200).
    observe : callable | None
        Called with each recorded SimState; returns a dict of floats.
    keep_states : bool
        If True, the recorded states are kept on the trajectory.

    Returns
    ------------
    trajectory : Trajectory
    '''
    validate_value(state, SimState, 'state')
    validate_value(cfg, StepperConfig, 'cfg')
    validate_value(cadence, Integral, 'cadence', min_value=1, min_inclusive=True, none_ok=True)

    state = state.evolve(enforce_parity(dealias(state.v)), state.t)

    if cfg.dt is None:
        cfg = cfg.with_dt(estimate_dt(state, cfg.cfl_target, cfg.dt_max))
    nsteps, dt = cfg.schedule(T)
    cfg = cfg.with_dt(dt)
    if cadence is None:
        cadence = max(1, nsteps // 200)

    logger.info('integrating %d steps of dt=%.6g, recording every %d', nsteps, dt, cadence)

    reference = l2_norm(state.v)
    times, observations, states = [], [], []

    def record(s):
        times.append(s.t)
        observations.append({} if observe is None else observe(s))
        if keep_states:
            states.append(s)
        logger.debug('recorded t=%.6g', s.t)

    record(state)
    start = state.t
    for index in range(1, nsteps + 1):
        state = step(state, cfg)
        # pin the clock to the schedule so record times are exact
        state = state.evolve(state.v, start + index * dt)
        _check_finite(state, reference, cfg.blowup_factor)
        if index % cadence == 0 or index == nsteps:
            record(state)

    return Trajectory(
        times,
        observations,
        states if keep_states else None,
        dt=dt,
        nsteps=nsteps,
        cadence=cadence,
        )


def convergence_order(errors, dts):
    '''
    Description
    ------------
    Least-squares slope of log(error) against log(dt).

    Parameters
    ------------
    errors : array-like
        Positive global errors.
    dts : array-like
        Matching step sizes.

    Returns
    ------------
    order : float
    '''
    errors = np.asarray(errors, dtype=float)
    dts = np.asarray(dts, dtype=float)
    if errors.shape != dts.shape or errors.size < 2:
        raise ValueError('need at least two (error, dt) pairs of equal length.')
    if np.any(errors <= 0) or np.any(dts <= 0):
        raise ValueError('errors and step sizes must be positive.')
    slope, _ = np.polyfit(np.log(dts), np.log(errors), 1)
    return float(slope)
