import logging
from concurrent.futures import ThreadPoolExecutor
from numbers import Real

import numpy as np

from ..frame import columns_frame
from ..linops import PhysParams, Propagator, ageostrophic_project, band_project
from ..mixins import ReprMixin
from ..spectral import (
    SpectralField,
    baroclinic_part,
    l2_norm,
    to_physical,
    vertical_mean,
    weighted_norm,
    )
from ..validation import SpecError, validate_value


logger = logging.getLogger(__name__)


class DispersiveResult(ReprMixin):
    '''
    Description
    ------------
    Outcome of an Ω-sweep of the dispersive integral.

    Parameters
    ------------
    table : pl.DataFrame
        Columns Omega, eta, I, I_half, I_floor_ratio; one row per Ω in sweep
        order.
    slope : float | None
        Least-squares slope of log I against log |η| over the largest decade
        of |η|; None when that decade holds fewer than two rows.
    '''

    _repr_attrs = ('slope',)

    def __init__(self, table, slope):
        self.table = table
        self.slope = slope

    @property
    def I(self):
        return self.table['I'].to_numpy()

    def non_increasing(self, tol=0.02):
        ''' True if I never grows by more than a relative tol along the sweep '''
        values = self.I
        return bool(np.all(values[1:] <= values[:-1] * (1.0 + tol)))


def _initial_lambda(v0, R):
    validate_value(v0, SpectralField, 'v0')
    if v0.plane or v0.ncomp != 4:
        raise SpecError('the dispersive sweep needs a four-component volume state.')
    scale = max(l2_norm(v0), 1e-300)
    if l2_norm(vertical_mean(v0)) > 1e-12 * scale:
        raise SpecError('the dispersive sweep needs purely baroclinic data (nonzero n = 0 content).')
    return band_project(baroclinic_part(v0), R)


def _integral(lam0, params, T, dt, with_geostrophic):
    # trapezoid rule for ∫‖λ(t)‖_{L^∞} dt on [0, T] and [0, T/2]
    lam = lam0 if with_geostrophic else ageostrophic_project(lam0, params)

    nsteps = max(2, int(np.ceil(T / dt)))
    nsteps += nsteps % 2
    h = T / nsteps
    propagate = Propagator(lam.grid, params, h)

    values = np.empty(nsteps + 1)
    coeffs = lam.coeffs
    for index in range(nsteps + 1):
        values[index] = weighted_norm(to_physical(lam.with_coeffs(coeffs)), p=np.inf)
        if index < nsteps:
            coeffs = propagate.apply(coeffs)

    half = nsteps // 2
    full = float(np.trapezoid(values, dx=h))
    first = float(np.trapezoid(values[:half + 1], dx=h))
    return full, first


def _log_slope(eta, values):
    eta = np.abs(np.asarray(eta, dtype=float))
    values = np.asarray(values, dtype=float)
    keep = (eta >= eta.max() / 10.0) & (eta > 0) & (values > 0)
    if keep.sum() < 2:
        return None
    design = np.column_stack([np.log(eta[keep]), np.ones(keep.sum())])
    (slope, _), *_ = np.linalg.lstsq(design, np.log(values[keep]), rcond=None)
    return float(slope)


def dispersive_sweep(
    v0,
    params,
    Omegas,
    R,
    T,
    dt=None,
    with_geostrophic=False,
    workers=1,
    ):
    '''
    Description
    ------------
    Measures the dispersive integral I(Ω) = ∫₀ᵀ ‖λ(t)‖_{L^∞} dt of the
    linearly evolved band-limited baroclinic data λ(t) = E(t) P_R ṽ0 for a
    list of rotation rates Ω at fixed Γ and ν. Unless `with_geostrophic`
    is set, the geostrophic component of λ0 for each Ω is removed first,
    so that only dispersive modes remain.

    Parameters
    ------------
    v0 : SpectralField
        Purely baroclinic initial state.
    params : PhysParams
        Base parameters; Ω is replaced by each swept value.
    Omegas : list[float]
        Swept rotation rates, in output order.
    R : float
        Band cutoff of P_R.
    T : float
        Integration horizon, > 0.
    dt : float | None
        Quadrature step. Defaults to π/(8 max(|Γ|, |Ω|)) per Ω, at most T/50.
    with_geostrophic : bool
        Keep the geostrophic part of λ0.
    workers : int
        Number of Ω values evaluated concurrently.

    Returns
    ------------
    result : DispersiveResult
    '''
    validate_value(params, PhysParams, 'params')
    validate_value(R, Real, 'R', finite=True, min_value=0)
    validate_value(T, Real, 'T', finite=True, min_value=0)
    validate_value(workers, int, 'workers', min_value=1, min_inclusive=True)
    if dt is not None:
        validate_value(dt, Real, 'dt', finite=True, min_value=0)

    Omegas = [float(x) for x in Omegas]
    if not Omegas:
        raise SpecError("'Omegas' must not be empty.")

    lam0 = _initial_lambda(v0, R)

    def evaluate(Omega):
        swept = params.replace(Omega=Omega)
        h = dt
        if h is None:
            h = min(np.pi / (8.0 * max(abs(swept.Gamma), abs(Omega))), T / 50.0)
        full, half = _integral(lam0, swept, T, h, with_geostrophic)
        logger.info('Omega=%.6g eta=%.6g I=%.6e I_half=%.6e', Omega, swept.eta, full, half)
        return swept.eta, full, half

    with ThreadPoolExecutor(max_workers=workers) as pool:
        rows = list(pool.map(evaluate, Omegas))

    eta, I, I_half = (np.array(x, dtype=float) for x in zip(*rows))
    floor = I / I[0] if I[0] > 0 else np.full_like(I, np.nan)

    table = columns_frame({
        'Omega': np.array(Omegas),
        'eta': eta,
        'I': I,
        'I_half': I_half,
        'I_floor_ratio': floor,
        })
    slope = _log_slope(eta, I)
    logger.info('dispersive slope of log I against log |eta|: %s', slope)
    return DispersiveResult(table, slope)
