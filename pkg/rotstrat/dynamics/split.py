import logging
from numbers import Real

import numpy as np

from ..linops import PhysParams, Propagator, band_project
from ..mixins import ReprMixin
from ..spectral import SpectralField, baroclinic_part
from ..validation import SpecError, validate_value
from .state import SimState, StepperConfig
from .stepper import Trajectory, run


logger = logging.getLogger(__name__)


class SplitTracker(ReprMixin):
    '''
    Description
    ------------
    Linear/remainder decomposition of the baroclinic part of a run:
    λ(t) = E(t) P_R ṽ0 evolves under the exact linear flow from the band
    limited initial data, and r(t) = ṽ(t) - λ(t).

    Parameters
    ------------
    v0 : SpectralField
        Initial state; only its baroclinic part is used.
    R : float
        Band cutoff of P_R.
    params : PhysParams
        Physical parameters of the linear flow.
    t0 : float
        Time of v0.
    '''

    _repr_attrs = ('R', 'params', 't0')

    def __init__(self, v0, R, params, t0=0.0):
        validate_value(v0, SpectralField, 'v0')
        validate_value(R, Real, 'R', finite=True, min_value=0)
        validate_value(params, PhysParams, 'params')
        validate_value(t0, Real, 't0', finite=True)

        self.R = float(R)
        self.params = params
        self.t0 = float(t0)
        self.lambda0 = band_project(baroclinic_part(v0), self.R)

    def lam(self, t):
        ''' λ at absolute time t '''
        elapsed = t - self.t0
        if elapsed < 0:
            raise SpecError(f'cannot evolve the linear part backwards to t={t!r}.')
        return Propagator(self.lambda0.grid, self.params, elapsed)(self.lambda0)

    def split(self, v, t):
        ''' (λ(t), r(t)) for the state v at time t '''
        lam = self.lam(t)
        return lam, baroclinic_part(v) - lam


class LambdaRSplit(ReprMixin):
    ''' λ and r trajectories sharing record times '''

    _repr_attrs = ('R', 'times')

    def __init__(self, R, times, lam, r):
        self.R = float(R)
        self.times = np.asarray(times, dtype=float)
        self.lam = list(lam)
        self.r = list(r)


def lambda_r_split(v0, R, params, T, dt, cadence=None, linear=False):
    '''
    Description
    ------------
    Runs the full equations from v0 and splits the baroclinic part of every
    record into the linearly evolved band-limited piece λ and the remainder
    r = ṽ - λ.

    Parameters
    ------------
    v0 : SpectralField
        Baroclinic initial data.
    R : float
        Band cutoff, > 0.
    params : PhysParams
        Physical parameters.
    T : float
        Duration, ≥ 0.
    dt : float
        Time step, > 0.
    cadence : int | None
        Steps between records.
    linear : bool
        If True, the run drops the nonlinearity.

    Returns
    ------------
    split : LambdaRSplit
    trajectory : Trajectory
        The underlying run, states kept.
    '''
    validate_value(v0, SpectralField, 'v0')
    scale = max(np.abs(v0.coeffs).max(), 1e-300)
    if np.abs(v0.coeffs[..., 0]).max() > 1e-12 * scale:
        raise SpecError("'v0' must be baroclinic (no n = 0 content).")

    tracker = SplitTracker(v0, R, params)
    state = SimState(v0, 0.0, params)
    trajectory = run(state, StepperConfig(dt=dt, linear=linear), T, cadence=cadence)

    lam, rem = [], []
    for s in trajectory.states:
        a, b = tracker.split(s.v, s.t)
        lam.append(a)
        rem.append(b)

    logger.info('split %d records with R=%.6g', trajectory.n_records, R)
    return LambdaRSplit(R, trajectory.times, lam, rem), trajectory
