'''
Tests for the experiment layer: scenario files, snapshots, initial data,
the preset catalog, the runner and the command line.
'''

import struct

import numpy as np
import pytest

from rotstrat.diagnostics import barotropic_vorticity
from rotstrat.dynamics import SimState
from rotstrat.frame import read_csv
from rotstrat.lab import (
    PRESETS,
    Check,
    catalog,
    dipole,
    get_preset,
    initial_state,
    inspect_snapshot,
    load_scenario,
    load_snapshot,
    parse_scenario,
    random_baroclinic,
    read_header,
    resolve,
    run_experiment,
    save_snapshot,
    single_mode,
    single_mode_reference,
    vortex_initial,
    )
from rotstrat.lab.cli import main
from rotstrat.lab.verify import eigenstructure_residual, propagator_residuals
from rotstrat.linops import PhysParams, apply_propagator, geostrophic_project
from rotstrat.reference import VortexParams, hermite_function
from rotstrat.spectral import (
    SpectralField,
    baroclinic_part,
    divergence_residual,
    energy,
    l2_norm,
    moments,
    sample_physical,
    to_spectral,
    )
from rotstrat.validation import (
    AcceptanceError,
    CorruptSnapshotError,
    ScenarioParseError,
    ScenarioValidationError,
    SpecError,
    UnknownExperimentError,
    VersionMismatchError,
    )

from conftest import random_state


SMALL = '''
# small nonlinear baroclinic run
grid.L = 6.283185307179586
grid.N = 16
grid.Nv = 4
physics.Gamma = 1      # buoyancy frequency
init.type = random_baroclinic
init.k_max = 9
time.T = 0.1
time.dt = 0.01
output.series = energy, baroclinic_L2
output.fits = baroclinic_L2:exponential
'''


def _with(text, *lines):
    return text + '\n'.join(lines) + '\n'


class TestScenario:

    def test_values_and_defaults(self):
        s = parse_scenario(SMALL)
        assert s.spec.N == 16 and s.spec.bc == 'periodic'
        assert s.params.nu == 1.0 and s.params.Omega == 0.0
        assert s.series == ['energy', 'baroclinic_L2']
        assert s.fits == [('baroclinic_L2', 'exponential')]
        assert s.dt == 0.01 and s.cadence is None
        assert s.experiment == 'custom'
        assert s.init == {
            'seed': 0, 'k_min': 0.0, 'k_max': 9.0, 'amplitude': 1.0, 'remove_geostrophic': False,
            }

    def test_malformed_line_reports_its_number(self):
        with pytest.raises(ScenarioParseError, match='line 3:') as info:
            parse_scenario('grid.L = 10\n\ngrid.N 16\n')
        assert info.value.line == 3

    def test_unknown_key(self):
        with pytest.raises(ScenarioParseError, match="unknown key 'grid.M'"):
            parse_scenario('grid.M = 3')

    def test_duplicate_key(self):
        with pytest.raises(ScenarioParseError, match='duplicate'):
            parse_scenario(_with(SMALL, 'grid.N = 32'))

    def test_unparsable_value(self):
        with pytest.raises(ScenarioParseError, match='grid.N'):
            parse_scenario('grid.N = sixteen')

    def test_bad_boolean(self):
        with pytest.raises(ScenarioParseError, match='boolean'):
            parse_scenario('linear = maybe')

    @pytest.mark.parametrize('extra, invariant', [
        ('formulation = background_perturbation', 'formulation-init'),
        ('init.A = 1', 'init-keys'),
        ('output.cadence = -1', 'invalid-spec'),
        ('time.cfl_target = 0.9', 'invalid-spec'),
        ])
    def test_invariants(self, extra, invariant):
        with pytest.raises(ScenarioValidationError) as info:
            parse_scenario(_with(SMALL, extra))
        assert info.value.invariant == invariant

    def test_odd_grid_is_invalid(self):
        with pytest.raises(ScenarioValidationError) as info:
            parse_scenario(SMALL.replace('grid.Nv = 4', 'grid.Nv = 3'))
        assert info.value.invariant == 'invalid-spec'

    def test_missing_required_keys(self):
        with pytest.raises(ScenarioValidationError, match='time.T') as info:
            parse_scenario('grid.L = 10\ngrid.N = 16\ngrid.Nv = 4\nphysics.Gamma = 1\n')
        assert info.value.invariant == 'required-keys'

    def test_torus_obstruction(self):
        text = SMALL.replace('init.type = random_baroclinic\ninit.k_max = 9\n', 'init.type = vortex\ninit.A = 1\n')
        with pytest.raises(ScenarioValidationError, match='torus') as info:
            parse_scenario(text)
        assert info.value.invariant == 'torus-obstruction'

    def test_split_series_need_split(self):
        text = SMALL.replace('output.series = energy, baroclinic_L2', 'output.series = energy, baroclinic_L2, psi')
        with pytest.raises(ScenarioValidationError, match='split.R'):
            parse_scenario(text)
        assert 'psi' in parse_scenario(_with(text, 'split.R = 4')).series

    def test_fit_must_name_a_recorded_series(self):
        text = SMALL.replace('baroclinic_L2:exponential', 'energy:cubic')
        with pytest.raises(ScenarioValidationError) as info:
            parse_scenario(text)
        assert info.value.invariant == 'fit-series'

    def test_tracking_error_needs_reference(self):
        text = SMALL.replace('output.series = energy,', 'output.series = tracking_error, energy,')
        with pytest.raises(ScenarioValidationError) as info:
            parse_scenario(text)
        assert info.value.invariant == 'tracking-reference'

    def test_sweep_needs_split(self):
        with pytest.raises(ScenarioValidationError) as info:
            parse_scenario(_with(SMALL, 'sweep.Omegas = 1, 10'))
        assert info.value.invariant == 'sweep-setup'

    def test_text_round_trip(self):
        s = parse_scenario(_with(SMALL, 'grid.dealias = 1/2', 'linear = yes'))
        again = parse_scenario(s.to_text())
        assert again == s
        assert 'grid.dealias = 1/2' in s.to_text()

    def test_with_seed(self):
        s = parse_scenario(SMALL)
        assert s.with_seed(12).seed == 12
        assert s.seed == 0

    def test_with_seed_ignored_without_seed_key(self):
        text = SMALL.replace('init.type = random_baroclinic\ninit.k_max = 9\n', 'init.type = vortex\ninit.B1 = 1\n')
        s = parse_scenario(text)
        assert s.with_seed(3) is s

    def test_box_warning(self, caplog):
        with caplog.at_level('WARNING', logger='rotstrat'):
            s = parse_scenario(SMALL)
        assert s.warnings
        assert 'periodic images' in caplog.text

    def test_load_from_file(self, tmp_path):
        path = tmp_path / 'small.scn'
        path.write_text(SMALL, encoding='utf-8')
        assert load_scenario(path) == parse_scenario(SMALL)


class TestSnapshot:
    ''' binary snapshot writer, reader and corruption checks '''

    def test_round_trip_is_bit_exact(self, tmp_path, grid, params):
        state = SimState(random_state(grid, seed=2), 0.625, params)
        path = save_snapshot(state, tmp_path / 'a.bvxl')
        back = load_snapshot(path)
        assert np.array_equal(back.v.coeffs, state.v.coeffs)
        assert back.t == 0.625
        assert back.params == params
        assert back.grid.spec == grid.spec
        assert back.formulation == 'full' and back.background is None

    def test_background_round_trip(self, tmp_path, grid):
        params = PhysParams(Omega=1.0, Gamma=2.0)
        state = SimState(
            SpectralField.zeros(grid), 0.0, params, 'background_perturbation',
            VortexParams(A=1.5, B1=-0.5, Gamma=2.0),
            )
        back = load_snapshot(save_snapshot(state, tmp_path / 'b.bvxl'))
        assert back.formulation == 'background_perturbation'
        assert back.background.as_tuple() == (1.5, -0.5, 0.0, 2.0)

    def test_stress_free_header(self, tmp_path, sf_grid, params):
        path = save_snapshot(SimState(random_state(sf_grid), 0.0, params), tmp_path / 'c.bvxl')
        header = read_header(path.read_bytes())
        assert header['bc'] == 'stress-free'
        assert header['Nv'] == 8
        assert str(header['dealias']) == '2/3'

    @pytest.fixture
    def data(self, tmp_path, grid, params):
        return save_snapshot(SimState(random_state(grid), 0.0, params), tmp_path / 'd.bvxl').read_bytes()

    def _load(self, tmp_path, data):
        path = tmp_path / 'broken.bvxl'
        path.write_bytes(data)
        return load_snapshot(path)

    def test_bad_magic(self, tmp_path, data):
        with pytest.raises(CorruptSnapshotError, match='magic'):
            self._load(tmp_path, b'XXXX' + data[4:])

    def test_truncated_payload(self, tmp_path, data):
        with pytest.raises(CorruptSnapshotError, match='payload'):
            self._load(tmp_path, data[:-16])

    def test_short_file(self, tmp_path, data):
        with pytest.raises(CorruptSnapshotError, match='header alone'):
            self._load(tmp_path, data[:10])

    def test_version_mismatch(self, tmp_path, data):
        with pytest.raises(VersionMismatchError):
            self._load(tmp_path, data[:4] + struct.pack('<I', 2) + data[8:])

    def test_invalid_bc_code(self, tmp_path, data):
        # bc code follows magic, version, N and Nv
        with pytest.raises(CorruptSnapshotError, match='bc code'):
            self._load(tmp_path, data[:16] + bytes([9]) + data[17:])

    def test_inspect(self, tmp_path, data):
        path = tmp_path / 'e.bvxl'
        path.write_bytes(data)
        text = inspect_snapshot(path)
        assert 'N: 16' in text
        assert 'energy:' in text


class TestInitialData:

    def test_random_baroclinic(self, grid, params):
        v = random_baroclinic(grid, params, seed=3, k_max=9.0, amplitude=2.0)
        assert l2_norm(v) == pytest.approx(2.0)
        assert np.abs(v.coeffs[..., 0]).max() == 0
        assert divergence_residual(v) < 1e-12

    def test_random_baroclinic_is_seeded(self, grid, params):
        a = random_baroclinic(grid, params, seed=3, k_max=9.0)
        b = random_baroclinic(grid, params, seed=3, k_max=9.0)
        c = random_baroclinic(grid, params, seed=4, k_max=9.0)
        assert np.array_equal(a.coeffs, b.coeffs)
        assert not np.array_equal(a.coeffs, c.coeffs)

    def test_remove_geostrophic(self, grid, params):
        v = random_baroclinic(grid, params, seed=1, k_max=9.0, remove_geostrophic=True)
        assert l2_norm(geostrophic_project(v, params)) < 1e-12

    def test_empty_shell(self, grid, params):
        # n ≠ 0 needs |k| ≥ 2π
        with pytest.raises(SpecError, match='no baroclinic modes'):
            random_baroclinic(grid, params, k_max=5.0)

    def test_dipole(self, wide_grid):
        v = dipole(wide_grid, 0.1, scale=2.0)
        m = moments(v)
        assert abs(m.A) < 1e-12 and abs(m.B1) < 1e-12 and abs(m.B2) < 1e-12
        assert np.abs(baroclinic_part(v).coeffs).max() == 0

        gauss = to_spectral(sample_physical(wide_grid, lambda X1, X2: hermite_function((0, 0), X1, X2)))
        assert l2_norm(barotropic_vorticity(v)) == pytest.approx(0.2 * l2_norm(gauss), rel=1e-6)

    @pytest.mark.parametrize('branch', ['g', '+', '-'])
    def test_single_mode_follows_closed_form(self, grid, params, branch):
        v = single_mode(grid, params, k1=1, k2=2, n=1, branch=branch, amplitude=0.5)
        reference = single_mode_reference(v, params, k1=1, k2=2, n=1, branch=branch, amplitude=0.5)
        out = apply_propagator(v, 0.3, params)
        np.testing.assert_allclose(out.coeffs, reference(0.3).coeffs, atol=1e-12)

    def test_single_mode_is_real(self, grid, params):
        v = single_mode(grid, params, k1=2, k2=-1, n=1)
        values = np.fft.ifftn(v.coeffs, axes=(1, 2, 3))
        assert np.abs(values.imag).max() < 1e-15
        # the mode and its mirror, each of unit size
        assert energy(v) == pytest.approx(2.0 * grid.area)

    def test_single_mode_rejects(self, grid, sf_grid, params):
        with pytest.raises(SpecError, match='dealiasing'):
            single_mode(grid, params, k1=7)
        with pytest.raises(SpecError, match='zero wavevector'):
            single_mode(grid, params, k1=0, k2=0, n=0)
        with pytest.raises(SpecError, match='periodic grid'):
            single_mode_reference(single_mode(sf_grid, params), params)

    def test_vortex_initial(self, grid):
        with pytest.raises(SpecError):
            vortex_initial(grid, VortexParams(A=1.0))
        v = vortex_initial(grid, VortexParams(A=1.0), 'background_perturbation')
        assert np.abs(v.coeffs).max() == 0

    def test_initial_state_from_preset(self):
        state = initial_state(get_preset('baroclinic_decay').scenario)
        assert state.t == 0.0
        assert l2_norm(state.v) == pytest.approx(1.0)

    def test_initial_state_background(self):
        state = initial_state(get_preset('oseen_track').scenario)
        assert state.formulation == 'background_perturbation'
        assert state.background.A == 1.0

    def test_initial_state_from_snapshot(self, tmp_path, grid, params):
        path = save_snapshot(SimState(random_state(grid), 0.4, params), tmp_path / 's.bvxl')
        s = parse_scenario(
            SMALL.replace('init.type = random_baroclinic\ninit.k_max = 9\n', f'init.type = from_snapshot\ninit.path = {path}\n')
            )
        state = initial_state(s)
        assert state.t == 0.4
        assert state.params == s.params


class TestCatalog:

    def test_every_preset_parses(self):
        for preset in catalog():
            scenario = preset.scenario
            assert scenario.experiment == preset.name
            assert preset.description

    def test_catalog_is_sorted(self):
        names = [p.name for p in catalog()]
        assert names == sorted(PRESETS)

    def test_unknown_preset(self):
        with pytest.raises(UnknownExperimentError, match='unknown experiment'):
            get_preset('nope')

    def test_check_relations(self):
        class Result:
            pass

        le = Check('x', lambda r: 0.5, 1.0)
        ge = Check('y', lambda r: 0.5, 1.0, 'ge')
        nan = Check('z', lambda r: np.nan, 1.0)
        assert le.evaluate(Result())['passed']
        assert not ge.evaluate(Result())['passed']
        assert not nan.evaluate(Result())['passed']
        with pytest.raises(ValueError):
            Check('w', lambda r: 0.0, 1.0, 'lt')


class TestRunner:

    def test_resolve(self, tmp_path):
        scenario, checks = resolve('baroclinic_decay')
        assert scenario.experiment == 'baroclinic_decay' and checks

        path = tmp_path / 'small.scn'
        path.write_text(SMALL, encoding='utf-8')
        scenario, checks = resolve(str(path))
        assert scenario.experiment == 'custom' and checks == []

        with pytest.raises(UnknownExperimentError):
            resolve('nope')

    def test_custom_run_artifacts(self, tmp_path):
        out = tmp_path / 'run'
        result = run_experiment(parse_scenario(SMALL), out_dir=out, seed=5)
        assert result.scenario.seed == 5
        for name in ('series.csv', 'fits.csv', 'run.log', 'snapshot_initial.bvxl', 'snapshot_final.bvxl'):
            assert (out / name).is_file()
        assert not (out / 'acceptance.csv').exists()

        series = read_csv(out / 'series.csv')
        assert series.columns == ['t', 'tau', 'energy', 'baroclinic_L2']
        assert series.height == 11

        fits = read_csv(out / 'fits.csv', text_columns=('series', 'model', 'window'))
        assert fits['series'].to_list() == ['baroclinic_L2']
        assert result.fit('baroclinic_L2', 'exponential').exponent > 0

        final = load_snapshot(out / 'snapshot_final.bvxl')
        assert final.t == pytest.approx(0.1)
        assert energy(final.v) == pytest.approx(series["energy"][-1], rel=1e-14)

        log = (out / 'run.log').read_text(encoding='utf-8')
        assert 'wall time' in log

    def test_preset_passes_its_checks(self, tmp_path):
        result = run_experiment('baroclinic_decay', out_dir=tmp_path, assert_checks=True)
        assert result.passed
        table = read_csv(tmp_path / 'acceptance.csv', text_columns=('check', 'passed'))
        assert table['check'].to_list() == ['decay_rate_vs_min_rate']

    def test_stress_free_preset_decays_at_the_wall_rate(self, tmp_path):
        ''' between stress-free walls the slowest baroclinic mode decays like e^{-π²t} '''
        result = run_experiment('baroclinic_decay_stress_free', out_dir=tmp_path, assert_checks=True)
        assert result.passed
        assert result.scenario.spec.bc == 'stress-free'
        assert result.fit('baroclinic_L2', 'exponential').exponent == pytest.approx(np.pi ** 2, rel=0.02)

    def test_failed_check_raises(self, tmp_path):
        ''' ten times less viscosity cannot reach half of 4π² '''
        text = get_preset('baroclinic_decay_nonlinear').text + 'physics.nu = 0.1\n'
        with pytest.raises(AcceptanceError, match='decay_rate'):
            run_experiment(parse_scenario(text), out_dir=tmp_path, assert_checks=True)

    @pytest.mark.slow
    def test_oscillator_preset(self, tmp_path):
        result = run_experiment('oscillator', out_dir=tmp_path, assert_checks=True)
        assert result.fit('u3_center', 'oscillation').frequency == pytest.approx(5.0, rel=1e-3)


class TestVerify:

    def test_eigenstructure(self):
        assert eigenstructure_residual(count=300) < 1e-12

    def test_propagator(self):
        oracle, group, isometry = propagator_residuals(count=20)
        assert oracle < 1e-10 and group < 1e-10 and isometry < 1e-10


class TestCommandLine:
    ''' exit codes of the rotstrat entry point '''

    def test_catalog(self, capsys):
        assert main(['catalog']) == 0
        assert 'baroclinic_decay' in capsys.readouterr().out

    def test_missing_verb(self):
        assert main([]) == 1

    def test_unknown_experiment(self, capsys):
        assert main(['run', 'no_such_preset']) == 1
        assert 'unknown experiment' in capsys.readouterr().err

    def test_invalid_scenario(self, tmp_path):
        path = tmp_path / 'bad.scn'
        path.write_text(SMALL.replace('grid.N = 16', 'grid.N = 15'), encoding='utf-8')
        assert main(['run', str(path), '--out', str(tmp_path / 'out')]) == 2

    def test_missing_snapshot(self, tmp_path):
        assert main(['inspect', str(tmp_path / 'missing.bvxl')]) == 1

    def test_run_and_inspect(self, tmp_path, capsys):
        path = tmp_path / 'small.scn'
        path.write_text(SMALL, encoding='utf-8')
        out = tmp_path / 'out'
        assert main(['run', str(path), '--out', str(out), '--seed', '2']) == 0
        assert main(['inspect', str(out / 'snapshot_final.bvxl')]) == 0
        assert 'divergence residual' in capsys.readouterr().out

    def test_failed_assertion(self, tmp_path):
        path = tmp_path / 'weak.scn'
        path.write_text(get_preset('baroclinic_decay_nonlinear').text + 'physics.nu = 0.1\n', encoding='utf-8')
        assert main(['run', str(path), '--out', str(tmp_path / 'out'), '--assert']) == 4

    def test_bad_thread_count(self):
        assert main(['run', 'oscillator', '--threads', '0']) == 1
