import argparse
import logging
import logging.config
import sys

from . import __version__, export
from .conf import settings
from .exceptions import InvalidInput
from .extremal import estimate_M, sweep
from .moebius import PoleParam
from .oracle import verify
from .regions import check_omega_in_region, sample_omega_boundary, sample_region_H

logger = logging.getLogger(__name__)

EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3

VERBOSITY_LEVELS = {0: 'ERROR', 1: 'WARNING', 2: 'INFO', 3: 'DEBUG'}


def logging_config(verbosity):
    return {
        'version': 1,
        'disable_existing_loggers': False,
        'formatters': {
            'simple': {'format': '%(levelname)s %(name)s: %(message)s'},
        },
        'handlers': {
            'console': {
                'class': 'logging.StreamHandler',
                'stream': 'ext://sys.stderr',
                'formatter': 'simple',
            },
        },
        'loggers': {
            'concave_hankel': {
                'level': VERBOSITY_LEVELS[verbosity],
                'handlers': ['console'],
                'propagate': False,
            },
        },
    }


def pole(value):
    try:
        p = float(value)
    except ValueError:
        raise argparse.ArgumentTypeError('%r is not a number.' % value) from None
    if not 0 < p < 1:
        raise argparse.ArgumentTypeError('p must lie in (0, 1) (got %s).' % value)
    return p


def pole_list(value):
    return sorted(pole(item) for item in value.split(',') if item.strip())


def cmd_bounds(args, p_values=None):
    reports = sweep(p_values or args.p, grid=args.grid, refine_iters=args.iters, seed=args.seed)
    export.write_output(export.bounds_table(reports))
    if args.out:
        export.write_output(export.bounds_csv(reports), args.out)
    return 0


def cmd_sweep(args):
    return cmd_bounds(args, p_values=settings.P_SWEEP)


def cmd_region(args):
    pp = PoleParam(args.p)
    omega = sample_omega_boundary(pp, args.n_theta) if args.what in ('omega', 'both') else None
    hankel = None
    if args.what in ('hankel', 'both'):
        hankel = sample_region_H(pp, args.samples, args.seed, n_theta=args.n_theta)
    if omega is not None and hankel is not None and not check_omega_in_region(pp, hankel, args.n_theta):
        logger.warning('Omega_%s is not contained in the sampled H(Co_p); raise --samples.', args.p)
    render = {'csv': export.region_csv, 'json': export.region_json, 'svg': export.region_svg}[args.format]
    export.write_output(render(omega=omega, hankel=hankel), args.out)
    return 0


def cmd_verify(args):
    report = verify(args.p, n_random=args.samples, seed=args.seed)
    export.write_output(export.dumps_json(report.as_dict()), args.out)
    if not report.passed:
        logger.error('Verification failed: %s.', ', '.join(report.failures()))
        return EXIT_VERIFY_FAILED
    return 0


def cmd_extremal(args):
    report = estimate_M(PoleParam(args.p), grid=args.grid, refine_iters=args.iters, seed=args.seed)
    export.write_output(export.dumps_json(report.as_dict()), args.out)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog='concave-hankel',
        description='Second Hankel determinant of concave functions with a pole at p.',
    )
    parser.add_argument('--version', action='version', version='%(prog)s ' + __version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--seed', type=int, default=settings.SEED)
    common.add_argument('--out', help='Output file (default: stdout).')
    common.add_argument(
        '-v', '--verbosity', type=int, choices=sorted(VERBOSITY_LEVELS), default=1,
        help='0=errors only, 1=warnings, 2=progress, 3=debug.',
    )
    search = argparse.ArgumentParser(add_help=False)
    search.add_argument('--grid', type=int, default=settings.GRID)
    search.add_argument('--iters', type=int, default=settings.ITERS)

    subparsers = parser.add_subparsers(dest='command', required=True)

    bounds = subparsers.add_parser('bounds', parents=[common, search], help='Bounds and estimates of M(p).')
    bounds.add_argument('--p', type=pole_list, default=[0.5], help='Comma-separated poles in (0, 1).')
    bounds.set_defaults(handler=cmd_bounds)

    sweep_parser = subparsers.add_parser('sweep', parents=[common, search], help='The bounds table over P_SWEEP.')
    sweep_parser.set_defaults(handler=cmd_sweep)

    region = subparsers.add_parser('region', parents=[common], help='Export Omega_p and H(Co_p) samples.')
    region.add_argument('--p', type=pole, default=0.5)
    region.add_argument('--what', choices=('omega', 'hankel', 'both'), default='both')
    region.add_argument('--format', choices=('csv', 'svg', 'json'), default='csv')
    region.add_argument('--samples', type=int, default=settings.SAMPLES)
    region.add_argument('--n-theta', type=int, default=512)
    region.set_defaults(handler=cmd_region)

    verify_parser = subparsers.add_parser('verify', parents=[common], help='Run every check family.')
    verify_parser.add_argument('--p', type=pole_list, default=[0.2, 0.5, 0.8])
    verify_parser.add_argument('--samples', type=int, default=settings.SAMPLES)
    verify_parser.set_defaults(handler=cmd_verify)

    extremal = subparsers.add_parser('extremal', parents=[common, search], help='Estimate M(p) for one pole.')
    extremal.add_argument('--p', type=pole, default=0.5)
    extremal.set_defaults(handler=cmd_extremal)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.config.dictConfig(logging_config(args.verbosity))
    try:
        return args.handler(args)
    except InvalidInput as e:
        print('Error: %s' % e, file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print('Could not write %s: %s' % (e.filename or args.out, e.strerror or e), file=sys.stderr)
        return EXIT_IO
