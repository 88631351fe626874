import logging
import tempfile
from pathlib import Path

import numpy as np
from scipy.linalg import expm

from ..dynamics import convergence_order, run
from ..frame import write_csv
from ..linops import PhysParams, linear_propagator, mode_frame, pjp_matrix
from ..reference import (
    hermite_coefficients,
    hermite_function,
    hermite_indices,
    hermite_polynomial,
    hermite_projection,
    heat_evolve2d,
    scale_field2d,
    scaled_grid,
    )
from ..spectral import (
    BOUNDARY_CONDITIONS,
    GridSpec,
    l2_norm,
    make_grid,
    sample_physical,
    to_physical,
    to_spectral,
    )
from .initial import initial_state
from .runner import acceptance_frame, simulate
from .scenario import parse_scenario
from .snapshot import load_snapshot, save_snapshot


logger = logging.getLogger(__name__)


def _row(name, value, threshold, relation='le'):
    value = float(value)
    passed = value <= threshold if relation == 'le' else value >= threshold
    logger.info('%s: %.3e (threshold %.1e) %s', name, value, threshold, 'ok' if passed else 'FAILED')
    return {'check': name, 'value': value, 'threshold': float(threshold), 'passed': bool(passed)}


def _random_wavevectors(rng, count):
    # integer lattice points in units of 2π/L and π n, with k_h = 0 and n = 0 lines
    L = rng.uniform(4.0, 60.0, count)
    j = rng.integers(-20, 21, (count, 2))
    n = rng.integers(-8, 9, count)
    j[: count // 10] = 0
    n[count // 10: count // 5] = 0
    zero = (j == 0).all(axis=1) & (n == 0)
    n[zero] = 1
    eta = rng.uniform(-5.0, 5.0, count)
    eta[: count // 20] = 0.0
    bc = rng.integers(0, 2, count)
    return L, j, n, eta, bc


def eigenstructure_residual(count=10_000, seed=0):
    '''
    Description
    ------------
    Largest residual of the eigenframe identities over random wavevectors,
    rotation ratios and boundary conditions: orthonormality, the relation
    between a_- and a_+, P J_η P a_g = 0 and P J_η P a_± = ±i p_η a_±.

    Parameters
    ------------
    count : int
        Number of samples.
    seed : int
        Generator seed.

    Returns
    ------------
    residual : float
    '''
    rng = np.random.default_rng(seed)
    worst = 0.0
    for L, j, n, eta, code in zip(*_random_wavevectors(rng, count)):
        bc = BOUNDARY_CONDITIONS[code]
        kz = np.pi if bc == 'stress-free' else 2.0 * np.pi
        k = np.array([2.0 * np.pi * j[0] / L, 2.0 * np.pi * j[1] / L, kz * n])
        params = PhysParams(Omega=eta, Gamma=1.0)

        frame = mode_frame(k, params, bc)
        M = pjp_matrix(k, params, bc)
        B = frame.basis

        flip = np.array([1, 1, -1, -1]) if bc == 'stress-free' else np.ones(4)
        residuals = (
            np.abs(B.conj().T @ B - np.eye(4)).max(),
            np.abs(frame.a_minus - flip * np.conj(frame.a_plus)).max(),
            np.abs(M @ frame.a_g).max(),
            np.abs(M @ frame.a_plus - 1j * frame.p_eta * frame.a_plus).max(),
            np.abs(M @ frame.a_minus + 1j * frame.p_eta * frame.a_minus).max(),
            )
        worst = max(worst, *residuals)
    return float(worst)


def propagator_residuals(count=200, seed=1):
    '''
    Description
    ------------
    Per-mode propagator against the dense matrix exponential, the group
    property E(a)E(b) = E(a + b) and norm conservation at ν = 0.

    Returns
    ------------
    oracle, group, isometry : float
    '''
    rng = np.random.default_rng(seed)
    oracle = group = isometry = 0.0
    for L, j, n, eta, code in zip(*_random_wavevectors(rng, count)):
        bc = BOUNDARY_CONDITIONS[code]
        kz = np.pi if bc == 'stress-free' else 2.0 * np.pi
        k = np.array([2.0 * np.pi * j[0] / L, 2.0 * np.pi * j[1] / L, kz * n])
        Gamma = rng.uniform(0.5, 5.0)
        params = PhysParams(Omega=eta * Gamma, Gamma=Gamma, nu=rng.uniform(0.0, 0.1))
        a, b = rng.uniform(0.0, 1.0, 2)

        generator = -params.nu * k.dot(k) * np.eye(4) - params.Gamma * pjp_matrix(k, params, bc)
        E = linear_propagator(k, params, a, bc)
        oracle = max(oracle, np.abs(E - expm(a * generator)).max())

        product = linear_propagator(k, params, b, bc) @ E
        group = max(group, np.abs(product - linear_propagator(k, params, a + b, bc)).max())

        x = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        inviscid = linear_propagator(k, params.replace(nu=0.0), a, bc)
        isometry = max(isometry, abs(np.linalg.norm(inviscid @ x) / np.linalg.norm(x) - 1.0))

    return float(oracle), float(group), float(isometry)


def hermite_residuals(t=1.0):
    '''
    Description
    ------------
    Hermite/scaling identities on a 40 × 40 box: P_0 φ0 = φ0,
    ∫ H_α φ_β = δ_αβ for |α|, |β| ≤ 3, and the heat flow decay of φ_α in
    scaling variables, e^{-|α|τ/2} for |α| ≤ 2.

    Returns
    ------------
    projection, biorthogonality, decay : float
        Absolute, absolute and relative residuals.
    '''
    grid = make_grid(GridSpec(40.0, 128, 4))
    X1, X2 = grid.coordinates()

    phi0 = sample_physical(grid, lambda X1, X2: hermite_function((0, 0), X1, X2))
    projected, _ = hermite_projection(phi0, 0)
    projection = np.abs(projected.values - phi0.values).max() / phi0.values.max()

    cell = grid.dx ** 2
    indices = hermite_indices(3)
    biorthogonality = max(
        abs(np.sum(hermite_polynomial(a, X1, X2) * hermite_function(b, X1, X2)) * cell - (a == b))
        for a in indices
        for b in indices
        )

    tau = np.log1p(t)
    target = scaled_grid(grid.spec, t)
    decay = 0.0
    for alpha in hermite_indices(2):
        f = to_spectral(sample_physical(grid, lambda X1, X2: hermite_function(alpha, X1, X2)))
        w = scale_field2d(heat_evolve2d(f, t), np.sqrt(1.0 + t), target, amplitude=1.0 + t)
        coefficient = hermite_coefficients(w, alpha.order)[alpha]
        decay = max(decay, abs(coefficient / np.exp(-0.5 * alpha.order * tau) - 1.0))

    return float(projection), float(biorthogonality), float(decay)


_SMALL = '''
grid.L = 6.283185307179586
grid.N = 16
grid.Nv = 4
physics.Omega = 1
physics.Gamma = 1
init.type = random_baroclinic
init.seed = 11
init.k_max = 9
init.amplitude = 5
time.T = 0.1
time.dt = 0.01
output.series = energy, baroclinic_L2, moment_A
'''


def infrastructure_residuals():
    '''
    Description
    ------------
    Transform round trip, snapshot bit exactness, run determinism and the
    temporal order of the stepper.

    Returns
    ------------
    round_trip : float
    snapshot_equal, deterministic : bool
    order : float
    '''
    scenario = parse_scenario(_SMALL)
    grid = make_grid(scenario.spec)

    rng = np.random.default_rng(5)
    values = rng.standard_normal((4, *grid.shape))
    phys = sample_physical(grid, lambda X1, X2, X3: values, plane=False)
    round_trip = np.abs(to_physical(to_spectral(phys)).values - values).max() / np.abs(values).max()

    state = initial_state(scenario)
    with tempfile.TemporaryDirectory() as folder:
        path = save_snapshot(state, Path(folder) / 'state.bvxl')
        loaded = load_snapshot(path)
    snapshot_equal = (
        loaded.v.coeffs.tobytes() == state.v.coeffs.tobytes()
        and loaded.t == state.t
        and loaded.params == state.params
        )

    first, _, _ = simulate(scenario)
    second, _, _ = simulate(scenario)
    deterministic = all(
        first.values(name).tobytes() == second.values(name).tobytes()
        for name in scenario.series
        )

    cfg = scenario.stepper_config()
    finals = {}
    for dt in (0.01, 0.005, 0.0025, 0.000625):
        finals[dt] = run(state, cfg.with_dt(dt), scenario.T, keep_states=True).final.v
    reference = finals.pop(0.000625)
    dts = sorted(finals)
    errors = [l2_norm(finals[dt] - reference) for dt in dts]
    order = convergence_order(errors, dts)

    return float(round_trip), bool(snapshot_equal), bool(deterministic), float(order)


def verify(out_dir=None, samples=10_000):
    '''
    Description
    ------------
    Runs the acceptance suite that needs no long simulation: eigenframes,
    the propagator oracle, Hermite/scaling identities and infrastructure.

    Parameters
    ------------
    out_dir : str | Path | None
        If given, acceptance.csv is written there.
    samples : int
        Random wavevectors in the eigenstructure check.

    Returns
    ------------
    rows : list[dict]
        One row per check with keys check, value, threshold, passed.
    '''
    rows = [_row('eigenstructure', eigenstructure_residual(samples), 1e-12)]

    oracle, group, isometry = propagator_residuals()
    rows += [
        _row('propagator_vs_expm', oracle, 1e-10),
        _row('propagator_group', group, 1e-10),
        _row('propagator_isometry', isometry, 1e-10),
        ]

    projection, biorthogonality, decay = hermite_residuals()
    rows += [
        _row('hermite_p0_phi0', projection, 1e-8),
        _row('hermite_biorthogonality', biorthogonality, 1e-8),
        _row('heat_eigen_decay', decay, 1e-2),
        ]

    round_trip, snapshot_equal, deterministic, order = infrastructure_residuals()
    rows += [
        _row('transform_round_trip', round_trip, 1e-12),
        _row('snapshot_bit_exact', float(snapshot_equal), 1.0, 'ge'),
        _row('run_determinism', float(deterministic), 1.0, 'ge'),
        _row('stepper_order', abs(order - 4.0), 0.2),
        ]

    if out_dir is not None:
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        write_csv(acceptance_frame(rows), out_dir / 'acceptance.csv')
    return rows
