import logging
import time
from contextlib import contextmanager
from pathlib import Path

import polars as pl

from ..diagnostics import (
    Observer,
    TimeSeries,
    dispersive_sweep,
    fit_decay,
    fit_max,
    fit_oscillation,
    series_frame,
    )
from ..dynamics import SplitTracker, run
from ..frame import write_csv
from ..mixins import ReprMixin
from ..reference import edge_wrap_estimate, vortex_state
from ..spectral import make_grid, set_fft_workers
from ..text import add_border
from ..validation import AcceptanceError, validate_value
from .catalog import PRESETS, get_preset
from .initial import initial_state, single_mode_reference
from .scenario import Scenario, load_scenario
from .snapshot import save_snapshot


logger = logging.getLogger(__name__)

FITS_COLUMNS = (
    'series',
    'model',
    'exponent',
    'amplitude',
    'residual',
    'window',
    'frequency',
    'phase',
    )


class RunResult(ReprMixin):
    '''
    Description
    ------------
    Everything a finished experiment produced: the scenario, recorded
    series, fits, the optional dispersive sweep, acceptance rows and the
    output directory.
    '''

    _repr_attrs = ('scenario', 'out_dir', 'passed')

    def __init__(self, scenario, out_dir, trajectory=None, series=None, sweep=None):
        self.scenario = scenario
        self.out_dir = out_dir
        self.trajectory = trajectory
        self.series = series or {}
        self.sweep = sweep
        self.fits = {}
        self.acceptance = []

    @property
    def passed(self):
        return all(row['passed'] for row in self.acceptance)

    @property
    def failed(self):
        return [row['check'] for row in self.acceptance if not row['passed']]

    def fit(self, series, model):
        return self.fits[(series, model)]


def resolve(target):
    '''
    Description
    ------------
    Turns a preset name, scenario file path or Scenario into a
    (Scenario, checks) pair. Checks come from the catalog when the
    scenario's experiment names a preset.

    Parameters
    ------------
    target : str | Path | Scenario
        What to run.

    Returns
    ------------
    scenario : Scenario
    checks : list[Check]
    '''
    if isinstance(target, Scenario):
        scenario = target
    elif isinstance(target, str) and target in PRESETS:
        scenario = PRESETS[target].scenario
    elif Path(target).is_file():
        scenario = load_scenario(target)
    else:
        scenario = get_preset(str(target)).scenario

    checks = PRESETS[scenario.experiment].checks if scenario.experiment in PRESETS else []
    return scenario, checks


@contextmanager
def run_log(out_dir):
    ''' attaches a FileHandler on <out_dir>/run.log to the package logger '''
    package = logging.getLogger(__name__.split('.')[0])
    handler = logging.FileHandler(Path(out_dir) / 'run.log', mode='w', encoding='utf-8')
    handler.setLevel(logging.DEBUG)
    handler.setFormatter(logging.Formatter('%(asctime)s %(levelname)s %(name)s: %(message)s'))

    level = package.level
    package.addHandler(handler)
    if package.getEffectiveLevel() > logging.INFO:
        package.setLevel(logging.INFO)
    try:
        yield handler
    finally:
        package.removeHandler(handler)
        package.setLevel(level)
        handler.close()


def _log_scenario(scenario):
    logger.info('scenario %s\n%s', scenario.experiment, add_border(scenario.to_text().rstrip()))
    for message in scenario.warnings:
        logger.warning(message)

    background = scenario.background
    if background is not None:
        logger.info(
            'background velocity at the box edge ≈ %.3e (|A|/(2π·L/2)); the '
            'perturbation absorbs the wrap',
            edge_wrap_estimate(background, scenario.spec.L),
            )
    if scenario.spec.stress_free:
        grid = make_grid(scenario.spec)
        logger.info(
            'stress-free walls: slowest baroclinic rate ν|k|² = %.6g (π² on the '
            'unit layer); the 4π² Poincaré constant holds for periodic layers only',
            scenario.params.nu * grid.min_baroclinic_rate,
            )


def _reference(scenario, state):
    if scenario.formulation == 'background_perturbation':
        return None
    if scenario.init_type == 'vortex':
        grid, p = state.grid, scenario.vortex
        return lambda t: vortex_state(grid, p, t, images=1)
    if scenario.init_type == 'single_mode' and scenario.linear and not scenario.spec.stress_free:
        return single_mode_reference(state.v, scenario.params, **scenario.init)
    return None


def simulate(scenario, seed=None, keep_states=False):
    '''
    Description
    ------------
    Integrates a scenario and evaluates its series on every record.

    Parameters
    ------------
    scenario : Scenario
        Validated scenario without a sweep.
    seed : int | None
        Overrides init.seed.
    keep_states : bool
        Keep every recorded state on the trajectory.

    Returns
    ------------
    trajectory : Trajectory
    initial, final : SimState
    '''
    validate_value(scenario, Scenario, 'scenario')
    state = initial_state(scenario, seed)

    split = None
    if scenario.split_R is not None:
        split = SplitTracker(state.v, scenario.split_R, scenario.params, state.t)

    observer = Observer(scenario.series, split=split, reference=_reference(scenario, state))
    last = {}

    def observe(s):
        last['state'] = s
        return observer(s)

    trajectory = run(
        state,
        scenario.stepper_config(),
        scenario.T,
        cadence=scenario.cadence,
        observe=observe,
        keep_states=keep_states,
        )
    return trajectory, state, last['state']


def _fit(ts, model):
    if model == 'max':
        return fit_max(ts)
    if model == 'oscillation':
        return fit_oscillation(ts)
    return fit_decay(ts, model)


def fits_frame(fits):
    ''' fits.csv table from fit objects '''
    rows = [fit.row() for fit in fits]
    schema = {
        name: pl.Utf8 if name in ('series', 'model', 'window') else pl.Float64
        for name in FITS_COLUMNS
        }
    return pl.DataFrame(
        {name: [row[name] for row in rows] for name in FITS_COLUMNS},
        schema=schema,
        )


def acceptance_frame(rows):
    return pl.DataFrame(
        {
            'check': [row['check'] for row in rows],
            'value': [row['value'] for row in rows],
            'threshold': [row['threshold'] for row in rows],
            'passed': [row['passed'] for row in rows],
            },
        schema={'check': pl.Utf8, 'value': pl.Float64, 'threshold': pl.Float64, 'passed': pl.Boolean},
        )


def _sweep(scenario, workers):
    state = initial_state(scenario)
    e = scenario.entries
    return dispersive_sweep(
        state.v,
        scenario.params,
        scenario.sweep,
        scenario.split_R,
        scenario.T,
        dt=scenario.dt,
        with_geostrophic=e['sweep.with_geostrophic'],
        workers=workers,
        )


def run_experiment(target, out_dir=None, seed=None, assert_checks=False, workers=1):
    '''
    Description
    ------------
    Runs a preset or scenario and writes its artifacts: run.log,
    series.csv and fits.csv (or sweep.csv for dispersive sweeps),
    acceptance.csv when checks apply, and initial/final snapshots.

    Parameters
    ------------
    target : str | Path | Scenario
        Preset name, scenario file or Scenario.
    out_dir : str | Path | None
        Output directory. Defaults to output.directory, else runs/<experiment>.
    seed : int | None
        Overrides init.seed.
    assert_checks : bool
        If True, failed acceptance checks raise AcceptanceError.
    workers : int
        scipy.fft threads and sweep fan-out.

    Returns
    ------------
    result : RunResult
    '''
    scenario, checks = resolve(target)
    if seed is not None:
        scenario = scenario.with_seed(seed)

    out_dir = Path(out_dir or scenario.directory or Path('runs') / scenario.experiment)
    out_dir.mkdir(parents=True, exist_ok=True)
    set_fft_workers(workers)

    with run_log(out_dir):
        started = time.perf_counter()
        _log_scenario(scenario)

        if scenario.is_sweep:
            sweep = _sweep(scenario, workers)
            write_csv(sweep.table, out_dir / 'sweep.csv')
            result = RunResult(scenario, out_dir, sweep=sweep)
        else:
            trajectory, initial, final = simulate(scenario)
            series = {
                name: TimeSeries(name, trajectory.times, trajectory.values(name))
                for name in scenario.series
                }
            frame = series_frame(trajectory.times, {k: v.values for k, v in series.items()})
            write_csv(frame, out_dir / 'series.csv')
            logger.info('dt=%.6g, %d steps, %d records', trajectory.dt, trajectory.nsteps, trajectory.n_records)

            if scenario.snapshots:
                save_snapshot(initial, out_dir / 'snapshot_initial.bvxl')
                save_snapshot(final, out_dir / 'snapshot_final.bvxl')

            result = RunResult(scenario, out_dir, trajectory=trajectory, series=series)
            for name, model in scenario.fits:
                result.fits[(name, model)] = _fit(series[name], model)
            write_csv(fits_frame(result.fits.values()), out_dir / 'fits.csv')

        if checks:
            result.acceptance = [check.evaluate(result) for check in checks]
            write_csv(acceptance_frame(result.acceptance), out_dir / 'acceptance.csv')
            for row in result.acceptance:
                logger.info(
                    'check %s: value=%.6g threshold=%.6g %s',
                    row['check'], row['value'], row['threshold'],
                    'passed' if row['passed'] else 'FAILED',
                    )

        logger.info('wall time %.2fs', time.perf_counter() - started)

    if assert_checks and not result.passed:
        raise AcceptanceError(result.failed)
    return result
