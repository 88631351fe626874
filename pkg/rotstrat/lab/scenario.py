import logging
from fractions import Fraction
from pathlib import Path

import numpy as np

from ..diagnostics import SERIES, SPLIT_SERIES
from ..dynamics import FORMULATIONS, StepperConfig
from ..linops import PhysParams
from ..mixins import ReprMixin
from ..reference import VortexParams
from ..spectral import BOUNDARY_CONDITIONS, GridSpec
from ..text import natural_join, split_list
from ..validation import (
    ScenarioParseError,
    ScenarioValidationError,
    SpecError,
    parse_fraction,
    )
from ._constants import (
    BOX_RULE_FACTOR,
    BRANCHES,
    DEFAULT_SERIES,
    INIT_TYPES,
    PERTURBATIONS,
    )


logger = logging.getLogger(__name__)

FIT_MODELS = ('algebraic', 'exponential', 'oscillation', 'max')


#╭-------------------------------------------------------------------------╮
#| Value Parsers                                                           |
#╰-------------------------------------------------------------------------╯

def _float(text):
    value = float(text)
    if not np.isfinite(value):
        raise ValueError(f'expected a finite number, got: {text!r}.')
    return value


def _int(text):
    return int(text)


def _bool(text):
    lowered = text.lower()
    if lowered in ('true', 'yes', 'on', '1'):
        return True
    if lowered in ('false', 'no', 'off', '0'):
        return False
    raise ValueError(f'expected a boolean, got: {text!r}.')


def _str(text):
    if not text:
        raise ValueError('expected a value.')
    return text


def _choice(options):
    def parse(text):
        if text not in options:
            raise ValueError(f'expected one of {natural_join(options, "or")}, got: {text!r}.')
        return text
    return parse


def _fraction(text):
    return parse_fraction(text, 'grid.dealias')


def _names(text):
    return split_list(text)


def _floats(text):
    return [_float(x) for x in split_list(text)]


def _format(value):
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, Fraction):
        return f'{value.numerator}/{value.denominator}'
    if isinstance(value, list):
        return ', '.join(_format(x) for x in value)
    return str(value)


# key → (parser, default); None marks a required key
KEYS = {
    'grid.L': (_float, None),
    'grid.N': (_int, None),
    'grid.Nv': (_int, None),
    'grid.bc': (_choice(BOUNDARY_CONDITIONS), 'periodic'),
    'grid.dealias': (_fraction, Fraction(2, 3)),
    'physics.Omega': (_float, 0.0),
    'physics.Gamma': (_float, None),
    'physics.nu': (_float, 1.0),
    'formulation': (_choice(FORMULATIONS), 'full'),
    'linear': (_bool, False),
    'init.type': (_choice(INIT_TYPES), 'vortex'),
    'init.A': (_float, 0.0),
    'init.B1': (_float, 0.0),
    'init.B2': (_float, 0.0),
    'init.perturbation': (_names, ['none']),
    'init.perturbation_amplitude': (_float, 0.1),
    'init.seed': (_int, 0),
    'init.k_min': (_float, 0.0),
    'init.k_max': (_float, 8.0),
    'init.amplitude': (_float, 1.0),
    'init.remove_geostrophic': (_bool, False),
    'init.k1': (_int, 1),
    'init.k2': (_int, 0),
    'init.n': (_int, 1),
    'init.branch': (_choice(BRANCHES), '+'),
    'init.path': (_str, ''),
    'time.T': (_float, None),
    'time.dt': (_float, 0.0),
    'time.cfl_target': (_float, 0.5),
    'time.dt_max': (_float, 0.05),
    'output.cadence': (_int, 0),
    'output.directory': (_str, ''),
    'output.series': (_names, list(DEFAULT_SERIES)),
    'output.snapshots': (_bool, True),
    'output.fits': (_names, []),
    'split.R': (_float, 0.0),
    'sweep.Omegas': (_floats, []),
    'sweep.with_geostrophic': (_bool, False),
    'experiment': (_str, 'custom'),
    }

# init keys each initial-data type understands
INIT_KEYS = {
    'vortex': ('A', 'B1', 'B2'),
    'vortex_plus_perturbation': (
        'A', 'B1', 'B2', 'perturbation', 'perturbation_amplitude',
        'seed', 'k_min', 'k_max', 'remove_geostrophic',
        ),
    'random_baroclinic': ('seed', 'k_min', 'k_max', 'amplitude', 'remove_geostrophic'),
    'single_mode': ('k1', 'k2', 'n', 'branch', 'amplitude'),
    'from_snapshot': ('path',),
    }


class Scenario(ReprMixin):
    '''
    Description
    ------------
    Validated experiment configuration. Built from flat `section.key`
    entries; every key not given takes its default.

    Parameters
    ------------
    entries : dict
        Parsed values keyed by the dotted key. Unknown keys are rejected.
    '''

    _repr_attrs = ('experiment', 'spec', 'params', 'formulation', 'init_type')

    def __init__(self, entries):
        entries = dict(entries)
        unknown = [key for key in entries if key not in KEYS]
        if unknown:
            raise ScenarioValidationError(
                f'unknown keys {natural_join(unknown)}.',
                invariant='known-keys',
                )

        missing = [key for key, (_, default) in KEYS.items() if default is None and key not in entries]
        if missing:
            raise ScenarioValidationError(
                f'missing required keys {natural_join(missing)}.',
                invariant='required-keys',
                )

        self.given = frozenset(entries)
        self.entries = {
            key: entries.get(key, default)
            for key, (_, default) in KEYS.items()
            }
        self._validate()


    #╭-------------------------------------------------------------------------╮
    #| Properties                                                              |
    #╰-------------------------------------------------------------------------╯

    @property
    def spec(self):
        e = self.entries
        return GridSpec(e['grid.L'], e['grid.N'], e['grid.Nv'], e['grid.bc'], e['grid.dealias'])

    @property
    def params(self):
        e = self.entries
        return PhysParams(Omega=e['physics.Omega'], Gamma=e['physics.Gamma'], nu=e['physics.nu'])

    @property
    def formulation(self):
        return self.entries['formulation']

    @property
    def linear(self):
        return self.entries['linear']

    @property
    def init_type(self):
        return self.entries['init.type']

    @property
    def init(self):
        ''' init.* entries of the active type, without the prefix '''
        return {
            key: self.entries[f'init.{key}']
            for key in INIT_KEYS[self.init_type]
            }

    @property
    def vortex(self):
        if self.init_type not in ('vortex', 'vortex_plus_perturbation'):
            return None
        e = self.entries
        return VortexParams(e['init.A'], e['init.B1'], e['init.B2'], Gamma=e['physics.Gamma'])

    @property
    def background(self):
        ''' analytic background of perturbation runs '''
        if self.formulation != 'background_perturbation':
            return None
        return self.vortex

    @property
    def T(self):
        return self.entries['time.T']

    @property
    def dt(self):
        return self.entries['time.dt'] or None

    @property
    def cadence(self):
        return self.entries['output.cadence'] or None

    @property
    def directory(self):
        return self.entries['output.directory'] or None

    @property
    def series(self):
        return list(self.entries['output.series'])

    @property
    def fits(self):
        ''' (series, model) pairs '''
        return [tuple(item.split(':')) for item in self.entries['output.fits']]

    @property
    def snapshots(self):
        return self.entries['output.snapshots']

    @property
    def split_R(self):
        return self.entries['split.R'] or None

    @property
    def sweep(self):
        return list(self.entries['sweep.Omegas'])

    @property
    def is_sweep(self):
        return bool(self.entries['sweep.Omegas'])

    @property
    def seed(self):
        return self.entries['init.seed']

    @property
    def experiment(self):
        return self.entries['experiment']

    @property
    def warnings(self):
        ''' approximation warnings that do not invalidate the scenario '''
        out = []
        L, T = self.entries['grid.L'], self.T
        if L < BOX_RULE_FACTOR * np.sqrt(1.0 + T):
            out.append(
                f'box side L={L:g} is below {BOX_RULE_FACTOR:g}·sqrt(1+T)='
                f'{BOX_RULE_FACTOR * np.sqrt(1.0 + T):.4g}; the spreading vortex '
                'will feel its periodic images.'
                )
        return out


    #╭-------------------------------------------------------------------------╮
    #| Methods                                                                 |
    #╰-------------------------------------------------------------------------╯

    def _validate(self):
        e = self.entries

        try:
            self.spec
            self.params
        except (SpecError, ValueError, TypeError) as exc:
            raise ScenarioValidationError(str(exc), invariant='invalid-spec') from exc

        if e['time.T'] < 0:
            raise ScenarioValidationError(f"'time.T' must be ≥ 0, got: {e['time.T']!r}.", invariant='invalid-spec')
        if e['time.dt'] < 0 or e['output.cadence'] < 0:
            raise ScenarioValidationError('time.dt and output.cadence must be ≥ 0.', invariant='invalid-spec')
        try:
            StepperConfig(
                dt=self.dt,
                cfl_target=e['time.cfl_target'],
                dt_max=e['time.dt_max'],
                linear=self.linear,
                )
        except ValueError as exc:
            raise ScenarioValidationError(str(exc), invariant='invalid-spec') from exc

        stray = [
            key for key in self.given
            if key.startswith('init.') and key != 'init.type'
            and key[5:] not in INIT_KEYS[self.init_type]
            ]
        if stray:
            raise ScenarioValidationError(
                f'{natural_join(sorted(stray))} not used by init.type = {self.init_type}.',
                invariant='init-keys',
                )

        if self.vortex is not None and self.vortex.A != 0 and self.formulation == 'full':
            raise ScenarioValidationError(
                'a vortex with nonzero circulation A has no periodic velocity field '
                '(torus obstruction); use formulation = background_perturbation.',
                invariant='torus-obstruction',
                )

        if self.formulation == 'background_perturbation' and self.vortex is None:
            raise ScenarioValidationError(
                'background_perturbation runs need init.type vortex or vortex_plus_perturbation.',
                invariant='formulation-init',
                )

        if self.init_type == 'vortex_plus_perturbation':
            bad = [x for x in e['init.perturbation'] if x not in PERTURBATIONS]
            if bad:
                raise ScenarioValidationError(
                    f'unknown perturbations {natural_join(bad)}; expected '
                    f'{natural_join(PERTURBATIONS, "or")}.',
                    invariant='init-keys',
                    )

        if self.init_type == 'from_snapshot' and not e['init.path']:
            raise ScenarioValidationError('init.path is required for from_snapshot.', invariant='init-keys')

        if e['init.k_max'] <= e['init.k_min']:
            raise ScenarioValidationError('init.k_max must exceed init.k_min.', invariant='init-keys')

        self._validate_outputs()

        if self.is_sweep:
            if self.init_type != 'random_baroclinic' or self.split_R is None:
                raise ScenarioValidationError(
                    'a dispersive sweep needs init.type = random_baroclinic and split.R.',
                    invariant='sweep-setup',
                    )

        for message in self.warnings:
            logger.warning(message)

    def _validate_outputs(self):
        unknown = [x for x in self.series if x not in SERIES]
        if unknown:
            raise ScenarioValidationError(
                f'unknown series {natural_join(unknown)}.',
                invariant='series-names',
                )

        if self.split_R is None and any(x in SPLIT_SERIES for x in self.series):
            raise ScenarioValidationError(
                f'{natural_join([x for x in self.series if x in SPLIT_SERIES])} need split.R.',
                invariant='split-series',
                )

        if 'tracking_error' in self.series:
            tracked = (
                self.formulation == 'background_perturbation'
                or self.init_type == 'vortex'
                or (self.init_type == 'single_mode' and self.linear and not self.spec.stress_free)
                )
            if not tracked:
                raise ScenarioValidationError(
                    'tracking_error needs an analytic reference: a vortex, or a '
                    'linear periodic single mode.',
                    invariant='tracking-reference',
                    )

        for item in self.entries['output.fits']:
            parts = item.split(':')
            if len(parts) != 2 or parts[1] not in FIT_MODELS:
                raise ScenarioValidationError(
                    f'fit {item!r} must read series:model with model '
                    f'{natural_join(FIT_MODELS, "or")}.',
                    invariant='fit-series',
                    )
            if parts[0] not in self.series:
                raise ScenarioValidationError(
                    f'fit series {parts[0]!r} is not in output.series.',
                    invariant='fit-series',
                    )

    def replace(self, entries):
        ''' copy with some dotted entries changed '''
        updated = {key: self.entries[key] for key in self.given}
        updated.update(entries)
        return Scenario(updated)

    def with_seed(self, seed):
        if 'seed' not in INIT_KEYS[self.init_type]:
            return self
        return self.replace({'init.seed': int(seed)})

    def stepper_config(self):
        e = self.entries
        return StepperConfig(
            dt=self.dt,
            cfl_target=e['time.cfl_target'],
            dt_max=e['time.dt_max'],
            linear=self.linear,
            )

    def to_text(self):
        ''' canonical text form; parse_scenario(s.to_text()) == s '''
        lines = [
            f'{key} = {_format(self.entries[key])}'
            for key in KEYS
            if key in self.given
            ]
        return '\n'.join(lines) + '\n'

    def __eq__(self, other):
        if not isinstance(other, Scenario):
            return NotImplemented
        return self.entries == other.entries


def parse_scenario(text):
    '''
    Description
    ------------
    Parses the line-based `section.key = value` format. Blank lines and
    everything after '#' are ignored.

    Parameters
    ------------
    text : str
        Scenario text.

    Returns
    ------------
    scenario : Scenario

    Raises
    ------------
    ScenarioParseError
        Malformed line, unknown or duplicate key, unparsable value. The
        error carries the 1-based line number.
    ScenarioValidationError
        Well-formed file violating a scenario invariant.
    '''
    if not isinstance(text, str):
        raise TypeError(f"'text' must be a str, got: {type(text).__name__}.")

    entries = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        if '=' not in line:
            raise ScenarioParseError(f"expected 'key = value', got: {raw.strip()!r}.", line=number)

        key, value = (part.strip() for part in line.split('=', 1))
        if key not in KEYS:
            raise ScenarioParseError(f'unknown key {key!r}.', line=number)
        if key in entries:
            raise ScenarioParseError(f'duplicate key {key!r}.', line=number)

        parser, _ = KEYS[key]
        try:
            entries[key] = parser(value)
        except (ValueError, TypeError) as exc:
            raise ScenarioParseError(f'{key}: {exc}', line=number) from exc

    return Scenario(entries)


def load_scenario(path):
    ''' parses a scenario file '''
    return parse_scenario(Path(path).read_text(encoding='utf-8'))
