# -*- coding:utf-8 -*-
__all__ = ['EXIT_OK', 'EXIT_PARSE_ERROR', 'EXIT_INTERNAL', 'build_parser', 'main']

import argparse
import sys
from pathlib import Path
from typing import List, Optional

from .bench import gen_random_regular, ingest, load_bench_config, run_suite, write_dimacs
from .config import init_config
from .errors import IngestError, InfeasibleDegree, MPSError
from .export import export_lp, export_opb
from .formulations import FORMULATIONS
from .formulations.kuratowski import separate_kuratowski
from .logger import LOG
from .mps import build_model, solve_mps
from .oracle import oracle_skewness
from .pbsolver import Limits
from .types import EdgeSelection

EXIT_OK = 0
EXIT_PARSE_ERROR = 1
EXIT_INTERNAL = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='mps', description="exact maximum planar subgraph")
    verbs = parser.add_subparsers(dest='verb', required=True)

    solve = verbs.add_parser('solve', help="solve one instance")
    solve.add_argument('file', type=Path)
    solve.add_argument('--formulation', '-f', choices=sorted(FORMULATIONS), default='kuratowski')
    solve.add_argument('--format', choices=['edgelist', 'gml', 'dimacs'])
    solve.add_argument('--config', type=Path, help="toml or flat key=value settings")
    solve.add_argument('--time-limit', type=float)
    solve.add_argument('--memory-limit', type=int)
    solve.add_argument('--export-opb', type=Path)
    solve.add_argument('--export-lp', type=Path)

    bench = verbs.add_parser('bench', help="run a corpus and write CSV records")
    bench.add_argument('corpus', type=Path)
    bench.add_argument('--config', type=Path)
    bench.add_argument('--jobs', type=int)
    bench.add_argument('--output', '-o', type=Path)

    oracle = verbs.add_parser('oracle', help="brute-force skewness")
    oracle.add_argument('file', type=Path)
    oracle.add_argument('--format', choices=['edgelist', 'gml', 'dimacs'])
    oracle.add_argument('--max-edges', type=int)

    gen = verbs.add_parser('gen', help="random regular graph in DIMACS format")
    gen.add_argument('--n', type=int, required=True)
    gen.add_argument('--d', type=int, required=True)
    gen.add_argument('--seed', type=int, default=0)
    gen.add_argument('--output', '-o', type=Path)

    verbs.add_parser('init', help="copy config examples next to the script")

    return parser


def _export(args: argparse.Namespace, settings: dict, g) -> None:
    model = build_model(args.formulation, g, settings)
    if args.formulation == 'kuratowski':
        for constraint in separate_kuratowski(g, EdgeSelection.all_ones(g).bits):
            model.add_constraint(constraint.terms, constraint.sense, constraint.rhs, constraint.name)

    if args.export_opb is not None:
        args.export_opb.write_text(export_opb(model), encoding='utf-8', newline='\n')
        LOG.info(f"Wrote {args.export_opb}")
    if args.export_lp is not None:
        args.export_lp.write_text(export_lp(model), encoding='utf-8', newline='\n')
        LOG.info(f"Wrote {args.export_lp}")


def _solve(args: argparse.Namespace) -> int:
    g = ingest(args.file, args.format)
    settings = load_bench_config(args.config)
    limits = Limits.from_config(settings['Solver'])
    if args.time_limit is not None:
        limits.time = args.time_limit
    if args.memory_limit is not None:
        limits.memory = args.memory_limit

    if args.export_opb is not None or args.export_lp is not None:
        _export(args, settings, g)

    res = solve_mps(g, args.formulation, settings, limits)
    print(f"status {res.status.value}")
    print(f"weight {res.weight}")
    print(f"dual_bound {res.dual_bound}")
    print(f"skewness {res.skewness}")
    for idx in res.selection.selected():
        u, v = g.edges[idx]
        print(f"e {u} {v} {g.weights[idx]}")
    return EXIT_OK


def _oracle(args: argparse.Namespace) -> int:
    g = ingest(args.file, args.format)
    k, witness = oracle_skewness(g, args.max_edges)
    print(f"skewness {k}")
    print(f"weight {g.total_weight - k}")
    for idx in witness.selected():
        u, v = g.edges[idx]
        print(f"e {u} {v} {g.weights[idx]}")
    return EXIT_OK


def _gen(args: argparse.Namespace) -> int:
    g = gen_random_regular(args.n, args.d, args.seed)
    text = write_dimacs(g, args.output)
    if args.output is None:
        sys.stdout.write(text)
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    """
    Returns:
        int: 0成功 1解析失败 2内部错误
    """

    args = build_parser().parse_args(argv)

    try:
        if args.verb == 'solve':
            return _solve(args)
        if args.verb == 'bench':
            sys.stdout.write(run_suite(args.corpus, args.config, args.output, args.jobs))
            return EXIT_OK
        if args.verb == 'oracle':
            return _oracle(args)
        if args.verb == 'gen':
            return _gen(args)
        LOG.info(f"Config examples copied to {init_config()}")
        return EXIT_OK

    except IngestError as err:
        LOG.warning(f"Failed to read input. reason:{err}")
        return EXIT_PARSE_ERROR
    except InfeasibleDegree as err:
        LOG.warning(f"Failed to generate graph. reason:{err}")
        return EXIT_PARSE_ERROR
    except (MPSError, AssertionError) as err:
        LOG.critical(f"Unhandled error. reason:{err}", exc_info=True)
        return EXIT_INTERNAL
