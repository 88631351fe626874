import logging
from numbers import Real

import numpy as np
from scipy.optimize import minimize_scalar

from ..mixins import ReprMixin
from ..validation import FitError, ResolutionError, validate_value
from ._constants import (
    DECAY_MODELS,
    ENVELOPE_BOUNDS,
    MIN_FIT_SAMPLES,
    SAMPLES_PER_PERIOD,
    )
from .series import TimeSeries, default_window


logger = logging.getLogger(__name__)


class DecayFit(ReprMixin):
    '''
    Description
    ------------
    Result of a decay fit.

    For model 'algebraic' the fit is v ≈ amplitude · (1+t)^exponent; for
    'exponential' it is v ≈ amplitude · e^{-exponent · t}, so the exponent
    is the decay rate μ. Model 'max' records the largest sample in
    `amplitude` and leaves the exponent undefined.
    '''

    _repr_attrs = ('series', 'model', 'exponent', 'amplitude', 'residual', 'window')

    def __init__(self, series, model, exponent, amplitude, residual, window):
        self.series = series
        self.model = model
        self.exponent = exponent
        self.amplitude = amplitude
        self.residual = residual
        self.window = tuple(window)

    def predict(self, t):
        t = np.asarray(t, dtype=float)
        if self.model == 'algebraic':
            return self.amplitude * (1.0 + t) ** self.exponent
        if self.model == 'exponential':
            return self.amplitude * np.exp(-self.exponent * t)
        raise ValueError(f'model {self.model!r} has no prediction.')

    def row(self):
        ''' fits.csv row '''
        return {
            'series': self.series,
            'model': self.model,
            'exponent': self.exponent,
            'amplitude': self.amplitude,
            'residual': self.residual,
            'window': f'{self.window[0]:.6g}:{self.window[1]:.6g}',
            'frequency': None,
            'phase': None,
            }


class OscillationFit(ReprMixin):
    '''
    Description
    ------------
    Fit of v ≈ (1+t)^exponent (a cos ωt + b sin ωt) with phase atan2(b, a).
    `degenerate` is set when the window holds no full period of the best
    frequency or the oscillating amplitude vanishes.
    '''

    _repr_attrs = ('series', 'frequency', 'phase', 'exponent', 'degenerate')

    def __init__(
        self,
        series,
        frequency,
        phase,
        exponent,
        amplitude,
        residual,
        window,
        degenerate,
        ):
        self.series = series
        self.frequency = frequency
        self.phase = phase
        self.exponent = exponent
        self.amplitude = amplitude
        self.residual = residual
        self.window = tuple(window)
        self.degenerate = degenerate

    def row(self):
        return {
            'series': self.series,
            'model': 'oscillation',
            'exponent': self.exponent,
            'amplitude': self.amplitude,
            'residual': self.residual,
            'window': f'{self.window[0]:.6g}:{self.window[1]:.6g}',
            'frequency': self.frequency,
            'phase': self.phase,
            }


def _windowed(ts, window):
    validate_value(ts, TimeSeries, 'ts')
    if window is None:
        window = default_window(ts)
    t0, t1 = window
    start, end = ts.span
    if t0 < start - 1e-12 or t1 > end + 1e-12 or t0 >= t1:
        raise FitError(
            f'fit window {window!r} is not inside the data range {ts.span!r}.'
            )
    part = ts.window(t0, t1)
    if part.size < MIN_FIT_SAMPLES:
        raise FitError(
            f'{ts.name}: {part.size} samples in window, '
            f'need at least {MIN_FIT_SAMPLES}.'
            )
    return part, (float(t0), float(t1))


def fit_decay(ts, model='algebraic', window=None):
    '''
    Description
    ------------
    Least-squares line through (log(1+t), log v) for the algebraic model or
    (t, log v) for the exponential model.

    Parameters
    ------------
    ts : TimeSeries
        Positive samples.
    model : str
        'algebraic' or 'exponential'.
    window : tuple | None
        (t0, t1); defaults to the last half of the span in τ = log(1+t).

    Returns
    ------------
    fit : DecayFit
        rms residual in log space.
    '''
    validate_value(model, str, 'model', whitelist=DECAY_MODELS)
    part, window = _windowed(ts, window)

    values = part.values
    if np.any(values <= 0):
        raise FitError(f'{ts.name}: values must be positive for a decay fit.')

    x = np.log1p(part.t) if model == 'algebraic' else part.t
    y = np.log(values)
    design = np.column_stack([x, np.ones_like(x)])
    (slope, intercept), *_ = np.linalg.lstsq(design, y, rcond=None)

    residual = float(np.sqrt(np.mean((design @ [slope, intercept] - y) ** 2)))
    exponent = float(slope) if model == 'algebraic' else float(-slope)

    logger.debug('%s %s fit: exponent=%.6g residual=%.3e', ts.name, model, exponent, residual)
    return DecayFit(ts.name, model, exponent, float(np.exp(intercept)), residual, window)


def fit_max(ts):
    ''' largest sample, recorded as a 'max' row of fits.csv '''
    validate_value(ts, TimeSeries, 'ts')
    if ts.size == 0:
        raise FitError(f'{ts.name}: empty series.')
    return DecayFit(ts.name, 'max', None, float(ts.values.max()), 0.0, ts.span)


def _separable(t, log_s, v, omega, p):
    # best (a, b) for fixed (ω, p) and the residual sum of squares
    envelope = np.exp(p * log_s)
    design = np.column_stack([envelope * np.cos(omega * t), envelope * np.sin(omega * t)])
    coef, *_ = np.linalg.lstsq(design, v, rcond=None)
    rss = float(np.sum((design @ coef - v) ** 2))
    return rss, coef


def _profile(t, log_s, v, omega):
    # residual minimized over the envelope exponent
    result = minimize_scalar(
        lambda p: _separable(t, log_s, v, omega, p)[0],
        bounds=ENVELOPE_BOUNDS,
        method='bounded',
        options={'xatol': 1e-8},
        )
    return float(result.fun), float(result.x)


def fit_oscillation(ts, window=None, expected_frequency=None, frequency_bounds=None):
    '''
    Description
    ------------
    Fits v(t) = (1+t)^p (a cos ωt + b sin ωt) by separable least squares:
    (a, b) are solved linearly, p by bounded scalar minimization and ω by a
    scan refined with golden-section search.

    Parameters
    ------------
    ts : TimeSeries
        Samples.
    window : tuple | None
        (t0, t1); defaults to the whole series.
    expected_frequency : float | None
        If given, the sampling must hold at least eight samples per period.
    frequency_bounds : tuple | None
        (ω_min, ω_max) of the scan. Defaults to one half period over the
        window up to the sampling limit.

    Returns
    ------------
    fit : OscillationFit
        frequency ω, phase atan2(b, a) in (-π, π], envelope exponent p.
    '''
    validate_value(ts, TimeSeries, 'ts')
    part, window = _windowed(ts, ts.span if window is None else window)

    t, v = part.t, part.values
    log_s = np.log1p(t)
    span = t[-1] - t[0]
    step = float(np.median(np.diff(t)))
    limit = 2.0 * np.pi / (SAMPLES_PER_PERIOD * step)

    if expected_frequency is not None:
        validate_value(expected_frequency, Real, 'expected_frequency', finite=True, min_value=0)
        if expected_frequency > limit:
            raise ResolutionError(
                f'{ts.name}: {2 * np.pi / (expected_frequency * step):.2f} samples per '
                f'period, need at least {SAMPLES_PER_PERIOD}.'
                )

    low, high = (np.pi / span, limit) if frequency_bounds is None else frequency_bounds
    if high <= low:
        raise ResolutionError(f'{ts.name}: empty frequency scan [{low:.6g}, {high:.6g}].')

    count = max(16, int(np.ceil((high - low) * 4.0 * span / np.pi)) + 1)
    scan = np.linspace(low, high, count)
    rss = np.array([_profile(t, log_s, v, omega)[0] for omega in scan])
    best = int(np.argmin(rss))

    lo = scan[max(best - 1, 0)]
    hi = scan[min(best + 1, count - 1)]
    if lo < scan[best] < hi:
        refined = minimize_scalar(
            lambda omega: _profile(t, log_s, v, omega)[0],
            bracket=(lo, scan[best], hi),
            method='golden',
            options={'xtol': 1e-10},
            )
        omega = float(refined.x)
    else:
        omega = float(scan[best])

    value, p = _profile(t, log_s, v, omega)
    _, (a, b) = _separable(t, log_s, v, omega, p)
    amplitude = float(np.hypot(a, b))
    residual = float(np.sqrt(value / t.size))

    scale = max(np.abs(v).max(), 1e-300)
    degenerate = bool(
        best == 0
        or omega * span < 2.0 * np.pi
        or amplitude <= 1e-12 * scale
        )
    if degenerate:
        logger.warning('%s: oscillation fit is degenerate (ω=%.6g over span %.6g)', ts.name, omega, span)

    return OscillationFit(
        ts.name,
        frequency=omega,
        phase=float(np.arctan2(b, a)),
        exponent=p,
        amplitude=amplitude,
        residual=residual,
        window=window,
        degenerate=degenerate,
        )


def phase_offset(first, second):
    ''' |phase difference| wrapped to [0, π] '''
    delta = (first.phase - second.phase + np.pi) % (2.0 * np.pi) - np.pi
    return float(abs(delta))
