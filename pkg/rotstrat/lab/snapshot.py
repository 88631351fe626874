import logging
import struct
from fractions import Fraction
from pathlib import Path

import numpy as np

from ..dynamics import FORMULATIONS, SimState
from ..linops import PhysParams
from ..reference import VortexParams
from ..spectral import (
    BOUNDARY_CONDITIONS,
    FRAMES,
    GridSpec,
    SpectralField,
    baroclinic_part,
    divergence_residual,
    energy,
    l2_norm,
    make_grid,
    moments,
    )
from ..text import add_border
from ..validation import (
    CorruptSnapshotError,
    SpecError,
    VersionMismatchError,
    validate_value,
    )
from ._constants import FORMAT_VERSION, SNAPSHOT_HEADER, SNAPSHOT_MAGIC


logger = logging.getLogger(__name__)

HEADER_SIZE = struct.calcsize(SNAPSHOT_HEADER)

PAYLOAD_DTYPE = np.dtype('<c16')


def _to_payload(coeffs):
    # (c, k1, k2, n) in FFT order → (c, n, k2, k1) ascending
    ordered = np.fft.fftshift(coeffs, axes=(1, 2, 3)).transpose(0, 3, 2, 1)
    return np.ascontiguousarray(ordered, dtype=PAYLOAD_DTYPE).tobytes()


def _from_payload(data, N, Nv):
    ordered = np.frombuffer(data, dtype=PAYLOAD_DTYPE).reshape(4, Nv, N, N)
    coeffs = ordered.transpose(0, 3, 2, 1)
    return np.fft.ifftshift(coeffs, axes=(1, 2, 3)).astype(complex)


def save_snapshot(state, path):
    '''
    Description
    ------------
    Writes a state to the binary snapshot format: a little-endian header
    followed by the complex coefficients, component-major, then n, k2 and
    k1 ascending, each as two float64.

    Parameters
    ------------
    state : SimState
        State to write.
    path : str | Path
        Destination file.

    Returns
    ------------
    path : Path
    '''
    validate_value(state, SimState, 'state')
    spec = state.grid.spec
    fraction = Fraction(spec.dealias_fraction)
    background = state.background or VortexParams(Gamma=state.params.Gamma)

    header = struct.pack(
        SNAPSHOT_HEADER,
        SNAPSHOT_MAGIC,
        FORMAT_VERSION,
        spec.N,
        spec.Nv,
        BOUNDARY_CONDITIONS.index(spec.bc),
        fraction.numerator,
        fraction.denominator,
        spec.L,
        state.params.Omega,
        state.params.Gamma,
        state.params.nu,
        state.t,
        FRAMES.index(state.v.frame),
        FORMULATIONS.index(state.formulation),
        int(state.has_background),
        background.A,
        background.B1,
        background.B2,
        )

    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(header + _to_payload(state.v.coeffs))
    logger.debug('wrote snapshot t=%.6g to %s', state.t, path)
    return path


def _lookup(options, code, name):
    if code >= len(options):
        raise CorruptSnapshotError(f'invalid {name} code {code} in snapshot header.')
    return options[code]


def read_header(data):
    '''
    Description
    ------------
    Decodes and checks a snapshot header.

    Parameters
    ------------
    data : bytes
        File contents.

    Returns
    ------------
    header : dict
    '''
    if len(data) < HEADER_SIZE:
        raise CorruptSnapshotError(
            f'file holds {len(data)} bytes, the header alone needs {HEADER_SIZE}.'
            )
    if data[:4] != SNAPSHOT_MAGIC:
        raise CorruptSnapshotError(f'bad magic {data[:4]!r}, expected {SNAPSHOT_MAGIC!r}.')

    (
        _,
        version,
        N,
        Nv,
        bc,
        numerator,
        denominator,
        L,
        Omega,
        Gamma,
        nu,
        t,
        frame,
        formulation,
        has_background,
        A,
        B1,
        B2,
        ) = struct.unpack(SNAPSHOT_HEADER, data[:HEADER_SIZE])

    if version != FORMAT_VERSION:
        raise VersionMismatchError(
            f'snapshot format version {version}, this reader understands {FORMAT_VERSION}.'
            )
    if denominator == 0:
        raise CorruptSnapshotError('zero dealias denominator in snapshot header.')

    return {
        'version': version,
        'N': N,
        'Nv': Nv,
        'bc': _lookup(BOUNDARY_CONDITIONS, bc, 'bc'),
        'dealias': Fraction(numerator, denominator),
        'L': L,
        'Omega': Omega,
        'Gamma': Gamma,
        'nu': nu,
        't': t,
        'frame': _lookup(FRAMES, frame, 'frame'),
        'formulation': _lookup(FORMULATIONS, formulation, 'formulation'),
        'background': (A, B1, B2) if has_background else None,
        }


def load_snapshot(path):
    '''
    Description
    ------------
    Reads a snapshot written by save_snapshot. The round trip is bit exact.

    Parameters
    ------------
    path : str | Path
        Snapshot file.

    Returns
    ------------
    state : SimState

    Raises
    ------------
    CorruptSnapshotError
        Bad magic, invalid header fields, truncated or oversized payload.
    VersionMismatchError
        Unknown format version.
    '''
    data = Path(path).read_bytes()
    header = read_header(data)
    N, Nv = header['N'], header['Nv']

    expected = 4 * N * N * Nv * PAYLOAD_DTYPE.itemsize
    payload = data[HEADER_SIZE:]
    if len(payload) != expected:
        raise CorruptSnapshotError(
            f'payload holds {len(payload)} bytes, expected {expected} for '
            f'N={N}, Nv={Nv}.'
            )

    try:
        spec = GridSpec(header['L'], N, Nv, header['bc'], header['dealias'])
        params = PhysParams(Omega=header['Omega'], Gamma=header['Gamma'], nu=header['nu'])
    except (SpecError, ValueError, TypeError) as e:
        raise CorruptSnapshotError(f'invalid header: {e}') from e

    background = None
    if header['background'] is not None:
        background = VortexParams(*header['background'], Gamma=header['Gamma'])

    v = SpectralField(_from_payload(payload, N, Nv), make_grid(spec), header['frame'])
    return SimState(v, header['t'], params, header['formulation'], background)


def inspect_snapshot(path):
    '''
    Description
    ------------
    Human-readable summary of a snapshot: header fields inside a border
    followed by basic norms.

    Parameters
    ------------
    path : str | Path
        Snapshot file.

    Returns
    ------------
    text : str
    '''
    path = Path(path)
    header = read_header(path.read_bytes())
    state = load_snapshot(path)
    v = state.v
    m = moments(v, state.background, state.t)

    lines = [f'{path.name}']
    lines += [f'{key}: {value}' for key, value in header.items()]
    norms = [
        f'energy: {energy(v):.10e}',
        f'L2: {l2_norm(v):.10e}',
        f'baroclinic L2: {l2_norm(baroclinic_part(v)):.10e}',
        f'divergence residual: {divergence_residual(v):.3e}',
        f'moments (A, B1, B2): ({m.A:.10e}, {m.B1:.10e}, {m.B2:.10e})',
        ]
    return add_border('\n'.join(lines)) + '\n' + '\n'.join(norms)
