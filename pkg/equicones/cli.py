"""
Command line front end.

    equicones barss --presentation K_sigma --tmax 3 --region 0:12:0:8 --format json
    equicones twistss --presentation F2 --tmax 10 --region -2:12:-4:8
    equicones verify-bw --space 2sigma --degmax 12
    equicones chart --input page.json --format ascii

Exit codes: 0 ok, 1 usage or configuration error, 2 failed verification.

Date: October 2026
Author: equicones developers
"""

import argparse
import json
import logging
import os
import sys
import warnings
from dataclasses import dataclass
from functools import wraps
from typing import Optional

from equicones import barss, bases, config, hopf, paths, plot_utils, twistss
from equicones.coeffs import Region


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY = 2

COMMANDS = ('tor', 'barss', 'twistss', 'basis', 'verify-bw', 'axioms', 'chart', 'conf', 'dirs')
EXTENSIONS = {'json': 'json', 'csv': 'csv', 'svg': 'svg', 'ascii': 'txt'}


class UsageError(Exception):
    """Invalid command line or configuration."""


class VerificationFailed(Exception):
    """A verification command produced a FAIL report."""

    def __init__(self, document):
        super().__init__('verification failed')
        self.document = document


class ArgumentParser(argparse.ArgumentParser):

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, '{}: error: {}\n'.format(self.prog, message))


@dataclass(frozen=True)
class RunConfig:
    command: str
    presentation: str
    region: Region
    t_max: int
    output_format: str
    out_path: Optional[str] = None
    deg_max: int = 12
    space: str = '2sigma'
    max_index: int = 3
    threads: int = 1
    input_path: Optional[str] = None
    save_to_disk: bool = False

    @classmethod
    def from_conf(cls, command, conf, out_path=None, input_path=None):
        comp, out = conf['computation'], conf['output']
        return cls(command=command,
                   presentation=comp['presentation'],
                   region=Region.parse(comp['region']),
                   t_max=comp['tmax'],
                   output_format=out['format'],
                   out_path=out_path,
                   deg_max=comp['degmax'],
                   space=comp['space'],
                   max_index=comp['max_index'],
                   threads=config.get_threads(conf),
                   input_path=input_path,
                   save_to_disk=out['save_to_disk'])


def get_parser():
    parser = ArgumentParser(prog='equicones', description='RO(C2)-graded Hopf ring computations.')
    parser.add_argument('command', choices=COMMANDS)
    parser.add_argument('--presentation',
                        help='Hopf algebra presentation, e.g. K_sigma, F2, K_2sigma, K_sigma+1')
    parser.add_argument('--tmax', help='Largest bar filtration (or homological degree for tor)')
    parser.add_argument('--region', help='Window pMin:pMax:qMin:qMax')
    parser.add_argument('--degmax', help='Largest topological degree for tor, basis and verify-bw')
    parser.add_argument('--space', help='Representation V, e.g. 2sigma or sigma+1')
    parser.add_argument('--max-index', dest='max_index', help='Largest generator index of the presentation')
    parser.add_argument('--format', dest='format', help='json, csv, svg or ascii')
    parser.add_argument('--out', help='Output file (stdout by default)')
    parser.add_argument('--input', help='Page or module JSON (or SVG chart) for the chart command')
    parser.add_argument('--verbose', '-v', action='count', default=0)
    return parser


def catch_error(f):
    """Map verification failures and usage errors of a command to exit codes; anything else propagates."""
    @wraps(f)
    def wrap(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except VerificationFailed as e:
            logger.error('Verification failed')
            return EXIT_VERIFY, e.document
        except UsageError as e:
            print('equicones: error: {}'.format(e), file=sys.stderr)
            return EXIT_USAGE, None
    return wrap


def _presentation(rc: RunConfig):
    try:
        return hopf.make_presentation(rc.presentation, rc.max_index)
    except (NameError, ValueError) as e:
        raise UsageError(str(e)) from e


def _space(rc: RunConfig):
    try:
        return bases.parse_space(rc.space)
    except ValueError as e:
        raise UsageError(str(e)) from e


def _dump(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + '\n'


def _candidates(V, bound):
    """Generators of H K_V from the signed or the sigma + i families."""
    n, i = V.q, V.p - V.q
    if i == 0:
        return bases.gen_signed_basis(n, bound)
    if n == 1:
        return bases.gen_sigma_plus_basis(i, bound)
    raise UsageError('No generator family is known for {}.'.format(bases.format_space(V)))


def cmd_tor(rc: RunConfig):
    result = barss.tor_f2(_presentation(rc), rc.t_max, rc.deg_max, rc.threads)
    if rc.output_format == 'csv':
        lines = ['s,t,dim'] + ['{},{},{}'.format(s, t, n) for (s, t), n in sorted(result.dims.items())]
        return '\n'.join(lines) + '\n'
    return _dump({'algebra': result.algebra,
                  'dims': [{'s': s, 't': t, 'dim': n} for (s, t), n in sorted(result.dims.items())],
                  'classes': [{'class': str(c), 'witness': c.witness.label(str)} for c in result.classes]})


def cmd_barss(rc: RunConfig):
    A = _presentation(rc)
    page = barss.bar_d1(barss.bar_e1_equivariant(A, rc.t_max, rc.region))
    if rc.output_format in ('svg', 'ascii'):
        return plot_utils.emit_chart(page, rc.output_format, rc.region)
    table = barss.bar_e2(page, rc.region, rc.threads)
    if rc.output_format == 'csv':
        return table.to_csv()
    trivial, sign = A.generators[0].space if A.generators else (0, 0)
    catalog = bases.circle_catalog(trivial + 1, sign, rc.region.p_max)
    found = barss.identify_permanent_cycles(table, catalog)
    return _dump({'e1': page.to_json(), 'e2': table.to_json(), 'identification': found.to_json()})


def cmd_twistss(rc: RunConfig):
    A = _presentation(rc)
    page = twistss.twisted_d1(twistss.twisted_e1(A, rc.t_max, rc.region))
    if rc.output_format in ('svg', 'ascii'):
        return plot_utils.emit_chart(page, rc.output_format, rc.region)
    table = twistss.twisted_e2_dims(page, rc.region, rc.threads)
    if rc.output_format == 'csv':
        return table.to_csv()
    ledger = []
    for entry in twistss.must_die_ledger(page):
        row = entry.to_json()
        try:
            row['candidates'] = [c.to_json() for c in twistss.norm_candidate(entry)]
        except twistss.NoCandidate as e:
            row['candidates'] = []
            row['note'] = str(e)
        ledger.append(row)
    generators = {str(t): [s.to_json() for s in rec.module]
                  for t, rec in sorted(table.reconstruction.items())}
    return _dump({'e1': page.to_json(), 'e2': table.to_json(), 'generators': generators, 'ledger': ledger})


def cmd_basis(rc: RunConfig):
    V = _space(rc)
    gens = _candidates(V, rc.deg_max)
    monos = bases.star_monomials(gens, rc.deg_max)
    counts = bases.degree_counts(monos)
    if rc.output_format == 'csv':
        lines = ['p,count'] + ['{},{}'.format(p, n) for p, n in sorted(counts.items())]
        return '\n'.join(lines) + '\n'
    return _dump({'space': bases.format_space(V),
                  'generators': [{'name': str(m), 'bidegree': m.bidegree.to_json()} for m in gens],
                  'degree_counts': {str(p): n for p, n in sorted(counts.items())}})


def cmd_verify_bw(rc: RunConfig):
    V = _space(rc)
    report = bases.verify_bw(_candidates(V, bases.candidate_region(V, rc.deg_max)), V, rc.deg_max)
    document = _dump(report.to_json())
    if not report.ok:
        raise VerificationFailed(document)
    return document


def cmd_axioms(rc: RunConfig):
    report = hopf.verify_hopf_axioms(_presentation(rc), rc.region)
    document = _dump(report.to_json())
    if not report.ok:
        raise VerificationFailed(document)
    return document


def cmd_chart(rc: RunConfig):
    if not rc.input_path:
        raise UsageError('chart needs --input.')
    try:
        page = plot_utils.load_page(rc.input_path)
    except (OSError, ValueError, KeyError) as e:
        raise UsageError('cannot read {}: {}'.format(rc.input_path, e)) from e
    return plot_utils.emit_chart(page, rc.output_format)


HANDLERS = {'tor': cmd_tor, 'barss': cmd_barss, 'twistss': cmd_twistss, 'basis': cmd_basis,
            'verify-bw': cmd_verify_bw, 'axioms': cmd_axioms, 'chart': cmd_chart}


def write_output(rc: RunConfig, document: str):
    path = rc.out_path
    if path is None and rc.save_to_disk:
        paths.create_dir_tree()
        name = '{}.{}'.format(rc.command, EXTENSIONS[rc.output_format])
        path = os.path.join(paths.get_artifact_dir(rc.output_format), name)
    if path is None:
        sys.stdout.write(document)
        return
    with open(path, 'w') as f:
        f.write(document)
    logger.info('Wrote %s', path)


@catch_error
def _run(command: str, rc: RunConfig):
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter('always')
        document = HANDLERS[command](rc)
    for w in caught:
        print('{}: {}'.format(w.category.__name__, w.message), file=sys.stderr)
    return EXIT_OK, document


def run(command: str, rc: RunConfig) -> int:
    """Run a computing command and write its artifact; returns the exit status."""
    status, document = _run(command, rc)
    if document is not None:
        try:
            write_output(rc, document)
        except OSError as e:
            print('equicones: error: {}'.format(e), file=sys.stderr)
            return EXIT_USAGE
    return status


def main(argv=None) -> int:
    args = get_parser().parse_args(argv)
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(stream=sys.stderr, level=level, format='%(levelname)s %(name)s: %(message)s')

    if args.command == 'conf':
        if args.verbose:
            config.print_full_conf()
        else:
            config.print_conf_table()
        return EXIT_OK
    if args.command == 'dirs':
        paths.print_dirs()
        return EXIT_OK

    user_args = {'presentation': args.presentation, 'tmax': args.tmax, 'region': args.region,
                 'degmax': args.degmax, 'space': args.space, 'max_index': args.max_index,
                 'format': args.format}
    try:
        conf = config.get_conf_dict(config.update_with_query_conf(user_args))
        rc = RunConfig.from_conf(args.command, conf, out_path=args.out, input_path=args.input)
    except (TypeError, ValueError) as e:
        print('equicones: error: {}'.format(e), file=sys.stderr)
        return EXIT_USAGE
    return run(args.command, rc)


if __name__ == '__main__':
    sys.exit(main())
