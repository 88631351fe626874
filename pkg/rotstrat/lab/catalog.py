from textwrap import dedent

import numpy as np

from ..diagnostics import phase_offset
from ..mixins import ReprMixin
from ..spectral import make_grid
from ..text import natural_join
from ..validation import UnknownExperimentError
from ._constants import SWEEP_TOLERANCE
from .scenario import parse_scenario


class Check(ReprMixin):
    '''
    Description
    ------------
    Named acceptance threshold evaluated on a finished run.

    Parameters
    ------------
    name : str
        Row label in acceptance.csv.
    measure : callable
        RunResult ↦ float.
    threshold : float
        Bound on the measured value.
    relation : str
        'le' (value ≤ threshold) or 'ge' (value ≥ threshold).
    '''

    _repr_attrs = ('name', 'threshold', 'relation')

    def __init__(self, name, measure, threshold, relation='le'):
        if relation not in ('le', 'ge'):
            raise ValueError(f"'relation' must be in ['le', 'ge'], got: {relation!r}.")
        self.name = name
        self.measure = measure
        self.threshold = float(threshold)
        self.relation = relation

    def evaluate(self, result):
        ''' acceptance.csv row '''
        value = float(self.measure(result))
        if self.relation == 'le':
            passed = value <= self.threshold
        else:
            passed = value >= self.threshold
        return {
            'check': self.name,
            'value': value,
            'threshold': self.threshold,
            'passed': bool(passed and np.isfinite(value)),
            }


class Preset(ReprMixin):
    '''
    Description
    ------------
    Catalog entry: scenario text, the fits it reports and the acceptance
    checks applied with --assert.
    '''

    _repr_attrs = ('name',)

    def __init__(self, name, description, text, checks=()):
        self.name = name
        self.description = description
        self.text = dedent(text).strip() + f'\nexperiment = {name}\n'
        self.checks = list(checks)

    @property
    def scenario(self):
        return parse_scenario(self.text)


#╭-------------------------------------------------------------------------╮
#| Measures                                                                |
#╰-------------------------------------------------------------------------╯

def _relative(value, expected):
    return abs(value - expected) / abs(expected)


def _oscillation(result, name):
    return result.fit(name, 'oscillation')


def _min_rate(result):
    scenario = result.scenario
    return scenario.params.nu * make_grid(scenario.spec).min_baroclinic_rate


def _drift(result, name):
    # largest excursion per unit time
    values = result.series[name].values
    return float((values.max() - values.min()) / max(result.scenario.T, 1e-300))


def _monotone_after(result, name, t0):
    ts = result.series[name].window(t0, None)
    growth = np.diff(ts.values)
    return float(max(growth.max(initial=0.0), 0.0) / ts.values[0])


def _ratio(result, name, t0, t1):
    ts = result.series[name]
    return ts.value_at(t1) / ts.value_at(t0)


def _vortex_checks():
    return [
        Check('tracking_error_max', lambda r: r.fit('tracking_error', 'max').amplitude, 1e-5),
        Check(
            'u3_envelope_exponent',
            lambda r: abs(_oscillation(r, 'u3_center').exponent + 1.0),
            0.05,
            ),
        Check(
            'u3_frequency',
            lambda r: _relative(_oscillation(r, 'u3_center').frequency, r.scenario.params.Gamma),
            1e-3,
            ),
        Check(
            'u3_theta_phase_offset',
            lambda r: abs(
                phase_offset(_oscillation(r, 'u3_center'), _oscillation(r, 'theta_center'))
                - np.pi / 2
                ),
            0.01,
            ),
        ]


_VORTEX_OUTPUT = '''
    output.series = tracking_error, u3_center, theta_center, moment_A, rotating_B1, rotating_B2
    output.fits = tracking_error:max, u3_center:oscillation, theta_center:oscillation
    '''


PRESETS = {}


def _register(preset):
    PRESETS[preset.name] = preset


_register(Preset(
    'oseen_track',
    'background run around the exact vortex family; zero perturbation must stay zero',
    '''
    grid.L = 40
    grid.N = 128
    grid.Nv = 4
    physics.Omega = 1
    physics.Gamma = 5
    formulation = background_perturbation
    init.type = vortex
    init.A = 1
    init.B1 = 1
    init.B2 = 0
    time.T = 10
    time.dt = 0.025
    ''' + _VORTEX_OUTPUT,
    checks=_vortex_checks(),
    ))

_register(Preset(
    'oscillator',
    'full-field run of the A = 0 vortex family; ū3 and θ̄ oscillate at Γ with a 1/(1+t) envelope',
    '''
    grid.L = 40
    grid.N = 128
    grid.Nv = 4
    physics.Omega = 1
    physics.Gamma = 5
    init.type = vortex
    init.A = 0
    init.B1 = 1
    init.B2 = 0
    time.T = 10
    time.dt = 0.025
    ''' + _VORTEX_OUTPUT,
    checks=_vortex_checks(),
    ))

_register(Preset(
    'perturbed_vortex_rates',
    'Oseen vortex with a mean-zero dipole; the perturbation vorticity decays algebraically',
    '''
    grid.L = 40
    grid.N = 128
    grid.Nv = 4
    physics.Omega = 1
    physics.Gamma = 1
    formulation = background_perturbation
    init.type = vortex_plus_perturbation
    init.A = 2
    init.perturbation = dipole
    init.perturbation_amplitude = 0.1
    time.T = 20
    output.series = oseen_error, omega3_L1, gaussian_distance, moment_A
    output.fits = oseen_error:algebraic, gaussian_distance:algebraic
    ''',
    checks=[
        Check('oseen_error_exponent', lambda r: r.fit('oseen_error', 'algebraic').exponent, -0.95),
        ],
    ))

_register(Preset(
    'baroclinic_decay',
    'linear run of band-limited baroclinic data; decay rate equals the smallest ν|k|² with n ≠ 0',
    '''
    grid.L = 40
    grid.N = 16
    grid.Nv = 8
    physics.Omega = 1
    physics.Gamma = 1
    linear = true
    init.type = random_baroclinic
    init.seed = 7
    init.k_max = 6.3
    time.T = 0.5
    time.dt = 0.005
    output.series = baroclinic_L2, baroclinic_energy, geostrophic_L2, ageostrophic_L2
    output.fits = baroclinic_L2:exponential
    ''',
    checks=[
        Check(
            'decay_rate_vs_min_rate',
            lambda r: _relative(r.fit('baroclinic_L2', 'exponential').exponent, _min_rate(r)),
            0.02,
            ),
        ],
    ))

_register(Preset(
    'baroclinic_decay_nonlinear',
    'nonlinear small-data baroclinic run; the decay rate stays above half of 4π²',
    '''
    grid.L = 40
    grid.N = 16
    grid.Nv = 8
    physics.Omega = 1
    physics.Gamma = 1
    init.type = random_baroclinic
    init.seed = 7
    init.k_max = 6.3
    init.amplitude = 0.1
    time.T = 0.5
    time.dt = 0.005
    output.series = baroclinic_L2, baroclinic_energy
    output.fits = baroclinic_L2:exponential
    ''',
    checks=[
        Check(
            'decay_rate',
            lambda r: r.fit('baroclinic_L2', 'exponential').exponent,
            0.5 * 4.0 * np.pi ** 2,
            relation='ge',
            ),
        ],
    ))

_register(Preset(
    'baroclinic_decay_stress_free',
    'linear baroclinic decay between stress-free walls; the slowest rate is π², not 4π²',
    '''
    grid.L = 40
    grid.N = 16
    grid.Nv = 8
    grid.bc = stress-free
    physics.Omega = 1
    physics.Gamma = 1
    linear = true
    init.type = random_baroclinic
    init.seed = 7
    init.k_max = 3.15
    time.T = 2
    time.dt = 0.01
    output.series = baroclinic_L2
    output.fits = baroclinic_L2:exponential
    ''',
    checks=[
        Check(
            'decay_rate_vs_min_rate',
            lambda r: _relative(r.fit('baroclinic_L2', 'exponential').exponent, _min_rate(r)),
            0.02,
            ),
        ],
    ))

_register(Preset(
    'single_mode_linear',
    'one a₊ eigenmode under the linear flow against its closed-form evolution',
    '''
    grid.L = 12.566370614359172
    grid.N = 16
    grid.Nv = 8
    physics.Omega = 3
    physics.Gamma = 2
    linear = true
    init.type = single_mode
    init.k1 = 1
    init.k2 = 1
    init.n = 1
    init.branch = +
    time.T = 0.5
    time.dt = 0.01
    output.series = tracking_error, baroclinic_L2
    output.fits = tracking_error:max, baroclinic_L2:exponential
    ''',
    checks=[
        Check('tracking_error_max', lambda r: r.fit('tracking_error', 'max').amplitude, 1e-10),
        ],
    ))

_register(Preset(
    'moment_conservation',
    'nonlinear full-field run; ∫ω̄3 and the rotating-frame pair of (∫ū3, ∫θ̄) are conserved',
    '''
    grid.L = 20
    grid.N = 64
    grid.Nv = 8
    physics.Omega = 1
    physics.Gamma = 2
    init.type = vortex_plus_perturbation
    init.A = 0
    init.B1 = 1
    init.perturbation = dipole, random_baroclinic
    init.perturbation_amplitude = 0.5
    init.k_max = 7
    time.T = 2
    output.series = moment_A, rotating_B1, rotating_B2, energy
    ''',
    checks=[
        Check('moment_A_drift', lambda r: _drift(r, 'moment_A'), 1e-8),
        Check('rotating_B1_drift', lambda r: _drift(r, 'rotating_B1'), 1e-8),
        Check('rotating_B2_drift', lambda r: _drift(r, 'rotating_B2'), 1e-8),
        ],
    ))

_register(Preset(
    'dispersive_sweep',
    'Ω-sweep of ∫‖λ‖_{L∞}dt for ageostrophic band-limited data; I decreases like |η|^{-1/4}',
    '''
    grid.L = 20
    grid.N = 64
    grid.Nv = 8
    physics.Gamma = 1
    physics.nu = 0.01
    init.type = random_baroclinic
    init.seed = 3
    init.k_max = 10
    init.remove_geostrophic = true
    split.R = 10
    time.T = 1
    sweep.Omegas = 10, 30, 100, 300, 1000
    ''',
    checks=[
        Check('I_non_increasing', lambda r: float(r.sweep.non_increasing(SWEEP_TOLERANCE)), 1.0, 'ge'),
        Check('slope_upper', lambda r: r.sweep.slope, -0.10),
        Check('slope_lower', lambda r: r.sweep.slope, -0.40, 'ge'),
        ],
    ))

_register(Preset(
    'dispersive_floor',
    'the same sweep keeping the geostrophic part; I levels off at an Ω-independent floor',
    '''
    grid.L = 20
    grid.N = 64
    grid.Nv = 8
    physics.Gamma = 1
    physics.nu = 0.01
    init.type = random_baroclinic
    init.seed = 3
    init.k_max = 10
    split.R = 10
    time.T = 1
    sweep.Omegas = 10, 30, 100, 300, 1000
    sweep.with_geostrophic = true
    ''',
    checks=[
        Check(
            'I_floor_ratio',
            lambda r: float(r.sweep.table['I_floor_ratio'].min()),
            0.8,
            'ge',
            ),
        ],
    ))

_register(Preset(
    'global_small_qg',
    'O(1) ageostrophic data with tiny geostrophic part at Ω = 300 around an Oseen vortex',
    '''
    grid.L = 40
    grid.N = 64
    grid.Nv = 8
    physics.Omega = 300
    physics.Gamma = 1
    formulation = background_perturbation
    init.type = vortex_plus_perturbation
    init.A = 1
    init.perturbation = dipole, random_baroclinic
    init.perturbation_amplitude = 1
    init.k_max = 6.5
    init.remove_geostrophic = true
    time.T = 20
    output.series = baroclinic_H1, baroclinic_L2, geostrophic_L2, gaussian_distance, omega3_L1
    output.fits = gaussian_distance:algebraic
    ''',
    checks=[
        Check(
            'initial_geostrophic_fraction',
            lambda r: r.series['geostrophic_L2'].values[0] / r.series['baroclinic_L2'].values[0],
            1e-3,
            ),
        Check('baroclinic_H1_growth_after_t1', lambda r: _monotone_after(r, 'baroclinic_H1', 1.0), 1e-9),
        Check('gaussian_distance_ratio', lambda r: _ratio(r, 'gaussian_distance', 1.0, 20.0), 0.5),
        ],
    ))


def catalog():
    ''' presets in name order '''
    return [PRESETS[name] for name in sorted(PRESETS)]


def get_preset(name):
    '''
    Description
    ------------
    Looks up a catalog preset.

    Parameters
    ------------
    name : str
        Preset name.

    Returns
    ------------
    preset : Preset
    '''
    try:
        return PRESETS[name]
    except KeyError:
        raise UnknownExperimentError(
            f'unknown experiment {name!r}; the catalog holds '
            f'{natural_join(sorted(PRESETS))}.'
            ) from None
