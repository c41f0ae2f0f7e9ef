#!/usr/bin/env python
# -*- coding: utf-8 -*-
'''
Command Line Interface for Wreath Macdonald Computations
'''

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass, fields
from typing import Dict, List, Optional

from batch_processor import run_grid, summarize, verify_theorem, write_reports, load_grid
from eigen import EigenError, EvaluationConfig, certify_orientation, eigenvalue_tuples, solve_P_by_eigen
from operators import OperatorError, OperatorKind, apply_operator, format_term_trace, operator_terms
from partitions import (
    DimVector, Partition, PartitionError, fiber, kappa, kappa_cl, minimal_compatible, r_core, r_quotient,
    reversed_quotient,
)
from polynomials import PolynomialError
from scalars import ScalarError, ScalarParseError, format_scalar
from utils import (
    GridValidator, ParseError, PolynomialComparator, dump_json, format_partition, parse_dim_vector,
    parse_partition, parse_polynomial,
)
from wreath_macdonald import DefinitionError, compute_Hhat, compute_P, compute_P_finite, fiber_of, wreath_family

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = os.path.join(os.path.dirname(os.path.abspath(__file__)), "config.json")

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


@dataclass
class CliConfig:
    """Settings for one invocation; config.json supplies defaults, flags override"""
    subcommand: str = ""
    r: int = 1

    # Output
    output_format: str = "text"
    verbosity: int = 0
    trace: bool = False

    # Computation
    route: str = "eigen"
    N: str = "auto"
    floor: Optional[int] = None
    jobs: int = 1
    method: str = "symbolic"

    # Exact evaluation of operator matrices
    seed: int = 20240611
    extra_points: int = 2

    def evaluation(self) -> EvaluationConfig:
        return EvaluationConfig(seed=self.seed, extra_points=self.extra_points)


def load_config(path: Optional[str] = None) -> CliConfig:
    '''Read the "defaults" object of a JSON config file into CliConfig'''
    config = CliConfig()
    path = path or DEFAULT_CONFIG_PATH
    if not os.path.exists(path):
        return config
    with open(path, 'r', encoding='utf-8') as f:
        data = json.load(f)
    known = {field.name for field in fields(CliConfig)}
    for key, value in data.get("defaults", {}).items():
        if key in known:
            setattr(config, key, value)
        else:
            logger.warning(f"Ignoring unknown config key {key!r} in {path}")
    return config


def validate_r(value):
    '''r must be a positive integer'''
    try:
        r = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"r must be a positive integer, got {value!r}")
    if r < 1:
        raise argparse.ArgumentTypeError(f"r must be a positive integer, got {r}")
    return r


def validate_partition(value):
    '''Comma-separated weakly decreasing positive parts'''
    try:
        return parse_partition(value)
    except ParseError as e:
        raise argparse.ArgumentTypeError(str(e))


def validate_N(value):
    '''"auto" or a comma-separated dimension vector'''
    if value.strip().lower() == "auto":
        return "auto"
    try:
        return parse_dim_vector(value)
    except (ParseError, PartitionError) as e:
        raise argparse.ArgumentTypeError(str(e))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('-r', type=validate_r, default=None, help='Order of the cyclic group (default: 1)')
    common.add_argument('--N', type=validate_N, default=None,
                        help='Dimension vector "N_0,...,N_{r-1}" or "auto" (default: auto)')
    common.add_argument('--floor', type=int, default=None,
                        help='Smallest entry of the automatic dimension vector (default: quotient size n)')
    common.add_argument('--format', dest='output_format', choices=['text', 'json'], default=None,
                        help='Output format (default: text)')
    common.add_argument('--jobs', type=int, default=None, help='Worker processes for verification (default: 1)')
    common.add_argument('--trace', action='store_true', default=None, help='Print operator terms')
    common.add_argument('-v', '--verbose', action='count', default=0, help='-v for INFO, -vv for DEBUG logging')
    common.add_argument('--config', default=None, help='Config file (default: config.json next to run.py)')

    parser = argparse.ArgumentParser(
        prog='wreath-macdonald',
        description='Exact wreath Macdonald polynomials, operators and eigen-equation checks',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog='''
Examples:
  python run.py core -r 2 "2,1"
  python run.py pgamma -r 3 "2,1" --route both
  python run.py hhat -r 2 "2"
  python run.py operator -r 1 --N 2 "x_0_1 + x_0_2"
  python run.py operator --N 2,2,2 -i 1 --trace "x_0_1 + x_0_2"
  python run.py eig -r 2 --core "" --boxes 2
  python run.py verify -r 2 --core "" --max-boxes 2 --N auto --jobs 4
  python run.py verify --grid acceptance_grid.json
        '''
    )
    subparsers = parser.add_subparsers(dest='subcommand', required=True)

    core = subparsers.add_parser('core', parents=[common], help='r-core, r-quotient and gamma of a partition')
    core.add_argument('partition', type=validate_partition, help='Partition, e.g. "3,1,1" ("" for empty)')

    pgamma = subparsers.add_parser('pgamma', parents=[common], help='P_gamma in finitely many variables')
    pgamma.add_argument('partition', type=validate_partition)
    pgamma.add_argument('--route', choices=['eigen', 'definition', 'both'], default=None,
                        help='Eigenvector route, definition route, or both with a comparison')
    pgamma.add_argument('--schur', action='store_true', help='Also print P in the tensor Schur basis')

    hhat = subparsers.add_parser('hhat', parents=[common], help='H~ (or P) in the tensor Schur basis')
    hhat.add_argument('partition', type=validate_partition)
    hhat.add_argument('--kind', choices=['Hhat', 'P'], default='Hhat')
    hhat.add_argument('--family', action='store_true', help='Every member of the fiber of the partition')

    operator = subparsers.add_parser('operator', parents=[common], help='Apply M^(i), classic M or Shoji S')
    operator.add_argument('polynomial', help='Symmetric polynomial in x_i_k over Q(q,t)')
    operator.add_argument('-i', '--vertex', type=int, default=0, help='Vertex i of M^(i) (default: 0)')
    operator.add_argument('--mode', choices=[kind.value for kind in OperatorKind], default='wreath')
    operator.add_argument('--raw', action='store_true', help='Skip the ((q-t)/q)^(r-1) normalization')
    operator.add_argument('--diff', action='store_true', help='Print the wreath output minus the Shoji output')

    eig = subparsers.add_parser('eig', parents=[common], help='Eigenvalues and joint eigenvectors on a fiber')
    eig.add_argument('--core', type=validate_partition, default=Partition(), help='r-core (default: empty)')
    eig.add_argument('--boxes', '-n', type=int, default=1, help='Quotient size n (default: 1)')
    eig.add_argument('--certify', action='store_true', help='Also check which support orientation matches')

    verify = subparsers.add_parser('verify', parents=[common], help='Check M^(i) P = e^(i) P over fibers')
    verify.add_argument('--core', type=validate_partition, default=Partition(), help='r-core (default: empty)')
    verify.add_argument('--max-boxes', type=int, default=2, help='Largest quotient size (default: 2)')
    verify.add_argument('--method', choices=['symbolic', 'matrix'], default=None,
                        help='symbolic: exact apply_M (default); matrix: screen with the evaluated matrix first')
    verify.add_argument('--grid', help='JSON list of grid entries to run instead of a single grid')
    verify.add_argument('-o', '--output', help='Also write the JSON-lines report to this file')
    return parser


def resolve_config(args) -> CliConfig:
    config = load_config(args.config)
    config.subcommand = args.subcommand
    overrides = {
        'r': args.r,
        'N': args.N,
        'floor': args.floor,
        'output_format': args.output_format,
        'jobs': args.jobs,
        'trace': args.trace,
        'route': getattr(args, 'route', None),
        'method': getattr(args, 'method', None),
    }
    for key, value in overrides.items():
        if value is not None:
            setattr(config, key, value)
    config.verbosity = max(config.verbosity, args.verbose)
    return config


def setup_logging(verbosity: int):
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(
        level=level,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        stream=sys.stderr
    )


def explicit_N(config: CliConfig) -> Optional[DimVector]:
    '''The dimension vector given on the command line or in config.json, None for "auto"'''
    if isinstance(config.N, DimVector):
        return config.N
    if isinstance(config.N, (list, tuple)):
        return DimVector(tuple(config.N))
    if isinstance(config.N, str) and config.N.strip().lower() != "auto":
        return parse_dim_vector(config.N)
    return None


def resolve_N(config: CliConfig, lam: Partition) -> DimVector:
    '''Explicit vector, or the minimal compatible one for the core of lam'''
    N = explicit_N(config)
    if N is not None:
        return N
    info = fiber_of(lam, config.r)
    floor = info.n if config.floor is None else config.floor
    return minimal_compatible(kappa_cl(info.core, config.r), config.r, floor)


def format_multipartition(quot) -> str:
    return ";".join(format_partition(component) for component in quot.components)


def emit(config: CliConfig, lines: List[str], payload: Dict):
    if config.output_format == 'json':
        print(dump_json(payload))
    else:
        for line in lines:
            print(line)


def cmd_core(args, config: CliConfig) -> int:
    lam, r = args.partition, config.r
    core = r_core(lam, r)
    n = (lam.size - core.size) // r
    N = minimal_compatible(kappa_cl(core, r), r, n if config.floor is None else config.floor)
    payload = {
        "partition": str(lam),
        "r": r,
        "core": str(core),
        "quotient": str(r_quotient(lam, r)),
        "reversed_quotient": str(reversed_quotient(lam, r)),
        "n": n,
        "gamma": list(kappa_cl(core, r).coeffs),
        "kappa": list(kappa(lam, r)),
        "N": list(N.entries),
    }
    lines = [
        f"partition: {format_partition(lam)}",
        f"r: {r}",
        f"core: {format_partition(core)}",
        f"quotient: {format_multipartition(r_quotient(lam, r))}",
        f"reversed quotient: {format_multipartition(reversed_quotient(lam, r))}",
        f"n: {n}",
        f"gamma: {kappa_cl(core, r)}",
        f"kappa: ({','.join(str(c) for c in kappa(lam, r))})",
        f"minimal compatible N: ({N})",
    ]
    emit(config, lines, payload)
    return EXIT_OK


def cmd_pgamma(args, config: CliConfig) -> int:
    lam, r = args.partition, config.r
    N = resolve_N(config, lam)
    results = {}
    if config.route in ('eigen', 'both'):
        results['eigen'] = solve_P_by_eigen(lam, r, N, config=config.evaluation())
    if config.route in ('definition', 'both'):
        results['definition'] = compute_P_finite(lam, r, N)

    chosen = results['eigen'] if 'eigen' in results else results['definition']
    payload = {"lambda": str(lam), "r": r, "N": list(N.entries), "route": config.route,
               "polynomial": chosen.to_json_dict()}
    lines = [f"P for ({format_partition(lam)}), r={r}, N=({N}):", f"  {chosen}"]

    status = EXIT_OK
    if config.route == 'both':
        agree = PolynomialComparator.agree(results['eigen'], results['definition'])
        payload["routes_agree"] = agree
        lines.append(f"routes agree: {'true' if agree else 'false'}")
        if not agree:
            difference = PolynomialComparator.compare(results['definition'], results['eigen'])
            payload["difference"] = difference
            lines.append(f"  difference: {json.dumps(difference, sort_keys=True)}")
            status = EXIT_FAILURE
    if args.schur:
        P = compute_P(lam, r)
        payload["schur"] = P.to_json_dict()
        lines.append(f"P in the tensor Schur basis: {P}")
    emit(config, lines, payload)
    return status


def cmd_hhat(args, config: CliConfig) -> int:
    lam, r = args.partition, config.r
    builder = compute_Hhat if args.kind == 'Hhat' else compute_P
    if args.family:
        info = fiber_of(lam, r)
        family = wreath_family(info.core, r, info.n, args.kind)
        payload = {"r": r, "core": str(info.core), "n": info.n, "kind": args.kind,
                   "members": {str(mu): f.to_json_dict() for mu, f in family.members.items()}}
        emit(config, str(family).splitlines(), payload)
        return EXIT_OK
    f = builder(lam, r)
    payload = {"lambda": str(lam), "r": r, "kind": args.kind, "function": f.to_json_dict()}
    emit(config, [f"{args.kind} for ({format_partition(lam)}), r={r}:", f"  {f}"], payload)
    return EXIT_OK


def cmd_operator(args, config: CliConfig) -> int:
    N = explicit_N(config)
    if N is None:
        raise ParseError("operator needs an explicit --N; \"auto\" requires a partition")
    if args.r is not None and args.r != N.r:
        raise ParseError(f"-r {args.r} does not match N=({N})")
    kind = OperatorKind(args.mode)
    p = parse_polynomial(args.polynomial, N)
    p.require_symmetric()

    normalized = not args.raw
    output = apply_operator(kind, args.vertex, N, p, normalized)
    payload = {"mode": kind.value, "vertex": args.vertex, "N": list(N.entries),
               "input": p.to_json_dict(), "output": output.to_json_dict()}
    lines = [f"{kind.value} operator, i={args.vertex}, N=({N}):", f"  {output}"]

    if config.trace:
        trace = []
        for term in operator_terms(kind, args.vertex, N):
            trace.extend(format_term_trace(term, args.vertex if kind == OperatorKind.WREATH else None))
        payload["trace"] = trace
        lines.extend(trace)

    if args.diff:
        wreath = output if kind == OperatorKind.WREATH else apply_operator(OperatorKind.WREATH, args.vertex, N, p,
                                                                           normalized)
        shoji = apply_operator(OperatorKind.SHOJI, args.vertex, N, p)
        difference = wreath - shoji
        payload["difference"] = difference.to_json_dict()
        lines.append(f"difference (wreath - shoji): {difference}")
    emit(config, lines, payload)
    return EXIT_OK


def cmd_eig(args, config: CliConfig) -> int:
    r, core, n = config.r, args.core, args.boxes
    members = fiber(core, r, n)
    if not members:
        raise PartitionError(f"no partitions with core ({core}) and {n} quotient boxes")
    N = resolve_N(config, members[0])
    tuples = eigenvalue_tuples(core, r, n, N)
    payload = {"r": r, "core": str(core), "n": n, "N": list(N.entries), "members": []}
    lines = [f"fiber of core ({format_partition(core)}), r={r}, n={n}, N=({N}):"]
    for lam in members:
        P = solve_P_by_eigen(lam, r, N, config=config.evaluation())
        values = [format_scalar(e) for e in tuples[lam]]
        payload["members"].append({"lambda": str(lam), "eigenvalues": values, "polynomial": P.to_json_dict()})
        lines.append(f"  ({format_partition(lam)}): e = [{'; '.join(values)}]")
        lines.append(f"    P = {P}")
    if args.certify:
        orientation = certify_orientation(core, r, n, N, config=config.evaluation())
        payload["orientation"] = orientation.value if orientation else None
        lines.append(f"orientation: {orientation.value if orientation else 'none agrees'}")
        if orientation is None:
            emit(config, lines, payload)
            return EXIT_FAILURE
    emit(config, lines, payload)
    return EXIT_OK


def cmd_verify(args, config: CliConfig) -> int:
    evaluation = config.evaluation()
    if args.grid:
        entries = load_grid(args.grid)
        valid, errors = GridValidator.validate_structure(entries)
        if not valid:
            raise ParseError("; ".join(errors))
        reports = run_grid(entries, config.jobs, config.method, evaluation)
    else:
        N = explicit_N(config)
        reports = verify_theorem(config.r, args.core, args.max_boxes, config.floor, N,
                                 config.jobs, config.method, evaluation)

    summary = summarize(reports)
    if config.output_format == 'json':
        for report in reports:
            print(report.to_json())
        print(json.dumps(summary, sort_keys=True))
    else:
        for report in reports:
            line = (f"{report.status.upper()} r={report.r} core=({report.core}) lambda=({report.lam}) "
                    f"N=({report.N}) i={report.i}")
            print(line if report.passed else f"{line}: {report.witness}")
        print(f"{summary['passed']}/{summary['checks']} checks passed")
    if args.output:
        write_reports(reports, args.output)
    return EXIT_OK if summary["failed"] == 0 else EXIT_FAILURE


COMMANDS = {
    'core': cmd_core,
    'pgamma': cmd_pgamma,
    'hhat': cmd_hhat,
    'operator': cmd_operator,
    'eig': cmd_eig,
    'verify': cmd_verify,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = resolve_config(args)
    except (OSError, json.JSONDecodeError) as e:
        print(f"Error: cannot read config: {str(e)}", file=sys.stderr)
        return EXIT_USAGE
    setup_logging(config.verbosity)

    try:
        return COMMANDS[args.subcommand](args, config)
    except (ParseError, ScalarParseError, PartitionError, PolynomialError) as e:
        print(f"Error: {str(e)}", file=sys.stderr)
        return EXIT_USAGE
    except (DefinitionError, EigenError, OperatorError, ScalarError) as e:
        print(f"Error: {str(e)}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
