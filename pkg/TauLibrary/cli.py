# -*- coding: utf-8 -*-
"""Command line driver: ``taulib tau``, ``taulib verify SUITE`` and ``taulib list``.

Exit codes: 0 when every case passes, 1 when any case fails, 2 for a bad
configuration or an exceeded cap.
"""

import argparse
import logging
import re
import sys

from TauLibrary.config import FORMATS, RunConfig
from TauLibrary.errors import ConfigError, TauError
from TauLibrary.suites import SUITES, list_suites, run_suite
from TauLibrary.tables import new_table, render_rows, table_rows
from TauLibrary.utils import write_text
from TauLibrary.version import VERSION

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2

RANGE_FLAGS = ('--alpha', '--beta', '--window')
_NEGATIVE_VALUE = re.compile(r'^-\d+(\.\.-?\d+)?$')


def _glue_ranges(argv):
    """Joins ``--alpha -1..1`` into ``--alpha=-1..1`` so argparse does not read the value as a flag."""
    glued = []
    index = 0
    while index < len(argv):
        token = argv[index]
        if token in RANGE_FLAGS and index + 1 < len(argv) and _NEGATIVE_VALUE.match(argv[index + 1]):
            glued.append('%s=%s' % (token, argv[index + 1]))
            index += 2
            continue
        glued.append(token)
        index += 1
    return glued


def _common_options():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--window', default='-4..4', help='live coordinate indices, lo..hi (default: -4..4)')
    common.add_argument('--kmax', dest='k_max', type=int, default=2, help='largest k (default: 2)')
    common.add_argument('--lmax', dest='l_max', type=int, default=1, help='largest l for GL3 (default: 1)')
    common.add_argument('--alpha', default='-1..1', help='alpha range, lo..hi (default: -1..1)')
    common.add_argument('--beta', default='0..0', help='beta range, lo..hi (default: 0..0)')
    common.add_argument('--output', help='write to this file instead of standard output')
    common.add_argument('--verbose', action='store_true', help='log debug messages to standard error')
    return common


def build_parser():
    parser = argparse.ArgumentParser(
        prog='taulib', description='Exact GL2/GL3 tau functions and verification of their identities.')
    parser.add_argument('--version', action='version', version='%(prog)s ' + VERSION)
    commands = parser.add_subparsers(dest='command', required=True)
    common = _common_options()

    tau = commands.add_parser('tau', parents=[common], help='write a table of tau functions')
    tau.add_argument('--n', type=int, default=2, choices=(2, 3), help='lattice rank (default: 2)')
    tau.add_argument('--format', default='csv', choices=FORMATS, help='output format (default: csv)')
    tau.set_defaults(handler=cmd_tau)

    verify = commands.add_parser('verify', parents=[common], help='run a verification suite')
    verify.add_argument('suite', help='one of: ' + ', '.join(SUITES))
    verify.add_argument('--truncation', type=int, default=5, help='negative powers of z checked (default: 5)')
    verify.add_argument('--order', type=int, help='expansion order for correlation functions')
    verify.add_argument('--seed', type=int, default=7, help='seed for random rational points (default: 7)')
    verify.add_argument('--samples', type=int, default=2, help='random points per case (default: 2)')
    verify.add_argument('--max', dest='max_size', type=int, help='largest determinant or correlation size')
    verify.add_argument('--workers', type=int, help='worker processes (default: $TAU_WORKERS or 1)')
    verify.add_argument('--format', default='json', choices=FORMATS, help='report format (default: json)')
    verify.add_argument('--timings', action='store_true', help='include wall times in the report')
    verify.set_defaults(handler=cmd_verify)

    listing = commands.add_parser('list', help='list verification suites')
    listing.add_argument('--verbose', action='store_true', help=argparse.SUPPRESS)
    listing.set_defaults(handler=cmd_list)
    return parser


def _emit(text, output):
    if output:
        path = write_text(output, text)
        print('wrote %s' % path, file=sys.stderr)
    else:
        sys.stdout.write(text)


def cmd_tau(args):
    config = RunConfig.from_options(n=args.n, window=args.window, k_max=args.k_max, l_max=args.l_max,
                                    alpha=args.alpha, beta=args.beta, format=args.format,
                                    output=args.output).validate()
    table = new_table(config.n, config.window)
    rows = table_rows(table, config.k_max, config.l_max, config.alphas, config.betas)
    _emit(render_rows(rows, config.n, config.window, config.format), config.output)
    return EXIT_OK


def cmd_verify(args):
    config = RunConfig.from_options(
        suite=args.suite, window=args.window, k_max=args.k_max, l_max=args.l_max, alpha=args.alpha,
        beta=args.beta, truncation=args.truncation, order=args.order, seed=args.seed,
        samples=args.samples, max_size=args.max_size, workers=args.workers, format=args.format,
        output=args.output, timings=args.timings)
    report = run_suite(config)
    _emit(report.render(config.format, config.timings), config.output)
    print(report.summary(), file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_list(args):
    for name, description in list_suites():
        print('%-18s %s' % (name, description))
    return EXIT_OK


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(_glue_ranges(sys.argv[1:] if argv is None else list(argv)))
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format='%(levelname)s %(message)s', stream=sys.stderr)
    try:
        return args.handler(args)
    except ConfigError as err:
        print('error: %s' % err, file=sys.stderr)
        return EXIT_CONFIG
    except TauError as err:
        print('failed: %s' % err, file=sys.stderr)
        return EXIT_FAILED


if __name__ == '__main__':
    sys.exit(main())
