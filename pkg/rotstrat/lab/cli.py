import argparse
import logging
import sys
from pathlib import Path

from ..spectral import set_fft_workers
from ..validation import (
    AcceptanceError,
    FitError,
    NumericalError,
    SnapshotError,
    SpecError,
    UnknownExperimentError,
    )
from ._constants import (
    EXIT_ACCEPTANCE,
    EXIT_NUMERICAL,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VALIDATION,
    )
from .catalog import catalog
from .runner import run_experiment
from .snapshot import inspect_snapshot
from .verify import verify


logger = logging.getLogger(__name__)


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f'must be ≥ 1, got: {value}.')
    return value


def parse_args(argv=None):
    parser = argparse.ArgumentParser(
        prog='rotstrat',
        description='Rotating stratified Boussinesq experiments on a periodic box.',
        )
    parser.add_argument('-v', '--verbose', action='store_true', help='log progress to stderr')
    verbs = parser.add_subparsers(dest='verb', required=True)

    run = verbs.add_parser('run', help='run a catalog preset or a scenario file')
    run.add_argument('target', help='preset name or scenario file')
    run.add_argument('--out', type=Path, default=None, help='output directory (default: runs/<experiment>)')
    run.add_argument('--assert', dest='assert_checks', action='store_true', help='exit 4 if a check fails')
    run.add_argument('--seed', type=int, default=None, help='overrides init.seed')
    run.add_argument('--threads', type=_positive_int, default=1, help='FFT threads and sweep workers')

    verbs.add_parser('catalog', help='list the presets')

    check = verbs.add_parser('verify', help='run the acceptance suite')
    check.add_argument('--out', type=Path, default=Path('runs') / 'verify', help='directory of acceptance.csv')
    check.add_argument('--assert', dest='assert_checks', action='store_true', help='exit 4 if a check fails')
    check.add_argument('--threads', type=_positive_int, default=1, help='FFT threads')

    inspect = verbs.add_parser('inspect', help='print a snapshot header and norms')
    inspect.add_argument('snapshot', type=Path)

    return parser.parse_args(argv)


def _print_rows(rows):
    for row in rows:
        status = 'ok' if row['passed'] else 'FAILED'
        print(f"{row['check']:<28} {row['value']:.6g} (threshold {row['threshold']:.3g}) {status}")


def _dispatch(args):
    if args.verb == 'catalog':
        for preset in catalog():
            print(f'{preset.name:<30} {preset.description}')
        return EXIT_OK

    if args.verb == 'inspect':
        print(inspect_snapshot(args.snapshot))
        return EXIT_OK

    if args.verb == 'verify':
        set_fft_workers(args.threads)
        rows = verify(args.out)
        _print_rows(rows)
        failed = [row['check'] for row in rows if not row['passed']]
        if failed and args.assert_checks:
            raise AcceptanceError(failed)
        return EXIT_OK

    result = run_experiment(
        args.target,
        out_dir=args.out,
        seed=args.seed,
        assert_checks=args.assert_checks,
        workers=args.threads,
        )
    _print_rows(result.acceptance)
    print(f'artifacts written to {result.out_dir}')
    return EXIT_OK


def main(argv=None):
    '''
    Description
    ------------
    Command-line entry point.

    Parameters
    ------------
    argv : list[str] | None
        Arguments; defaults to sys.argv[1:].

    Returns
    ------------
    status : int
        0 ok, 1 usage (including unreadable files), 2 validation,
        3 numerical failure, 4 acceptance failure.
    '''
    try:
        args = parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE

    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format='%(levelname)s %(name)s: %(message)s',
        )

    try:
        return _dispatch(args)
    except (UnknownExperimentError, OSError) as exc:
        print(f'[error] {exc}', file=sys.stderr)
        return EXIT_USAGE
    except (SpecError, SnapshotError) as exc:
        print(f'[error] {exc}', file=sys.stderr)
        return EXIT_VALIDATION
    except (FitError, NumericalError) as exc:
        print(f'[error] {exc}', file=sys.stderr)
        return EXIT_NUMERICAL
    except AcceptanceError as exc:
        print(f'[assert] {exc}', file=sys.stderr)
        return EXIT_ACCEPTANCE


if __name__ == '__main__':
    sys.exit(main())
