"""Command-line front end.

    pbwmc instance.opb [--weights instance.weights] [--pre full] [--mode rational]

Prints ``s wmc <value>``; exit codes are listed in ``EXIT_*`` below.
"""
from __future__ import annotations

import argparse
import logging
import sys
from fractions import Fraction

from .dd import CountTimeout, ResourceLimit
from .encode import encode, to_dimacs
from .engine import CLUSTER_ORDERS, DIAGRAM_ORDERS, CountConfig, count
from .opb import OpbSyntaxError, WeightError, read_instance
from .oracle import BudgetExceeded, brute_force_count
from .preprocess import DEFAULT_MAX_LITERALS, MODES

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_TIMEOUT = 3
EXIT_RESOURCE = 4
EXIT_ORACLE_MISMATCH = 5


def format_value(value, exact: bool) -> str:
    if exact:
        return str(Fraction(value))
    return format(float(value), ".12g")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pbwmc", description="Exact weighted model counting on OPB files.")
    p.add_argument("input", help="OPB file, or - for stdin")
    p.add_argument("-w", "--weights", help="weights file with 'w <var> <pos> <neg>' lines")
    p.add_argument("--pre", choices=MODES, default="full", help="preprocessing (default: full)")
    p.add_argument("--order", choices=DIAGRAM_ORDERS, default="mcs", help="diagram variable order")
    p.add_argument("--cluster", choices=CLUSTER_ORDERS, default="lexp", help="cluster variable order")
    p.add_argument("--mode", choices=("float", "rational"), default="float", help="terminal arithmetic")
    p.add_argument("--max-literals", type=int, default=DEFAULT_MAX_LITERALS,
                   help="skip entailment checks on longer constraints")
    p.add_argument("--timeout", type=float, help="seconds")
    p.add_argument("--max-nodes", type=int, help="diagram node budget")
    p.add_argument("--emit-cnf", metavar="PATH", help="also write a counting-safe weighted DIMACS file")
    p.add_argument("--oracle", action="store_true", help="cross-check against brute-force enumeration")
    p.add_argument("--stats", action="store_true", help="print run statistics")
    p.add_argument("-v", "--verbose", action="store_true", help="report preprocessing results")
    return p


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING, format="c %(levelname)s %(message)s")
    exact = args.mode == "rational"
    try:
        instance = read_instance(args.input, args.weights)
    except (OpbSyntaxError, WeightError, OSError) as exc:
        print(f"c error: {exc}", file=sys.stderr)
        return EXIT_PARSE

    if args.emit_cnf:
        with open(args.emit_cnf, "w") as fh:
            fh.write(to_dimacs(encode(instance.formula, instance.weights)))

    config = CountConfig(preprocess=args.pre, diagram_order=args.order, cluster_order=args.cluster,
                         exact=exact, max_literals=args.max_literals, timeout=args.timeout,
                         max_nodes=args.max_nodes)
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 10000))
    try:
        result = count(instance.formula, instance.weights, config)
    except CountTimeout as exc:
        print(f"c timeout: {exc}", file=out)
        return EXIT_TIMEOUT
    except (ResourceLimit, MemoryError, RecursionError) as exc:
        print(f"c resource limit: {exc}", file=out)
        return EXIT_RESOURCE

    if args.verbose:
        rep = result.report
        print(f"c backbone {len(rep.backbone)}", file=out)
        print(f"c deleted {rep.deleted}", file=out)
        print(f"c unsat {int(rep.unsat)}", file=out)
    if args.stats:
        for key in sorted(result.stats):
            value = result.stats[key]
            if key.startswith("time_"):
                value = f"{value:.6f}"
            print(f"c stat {key}={value}", file=out)
    print(f"s wmc {format_value(result.value, exact)}", file=out)
    if exact:
        print(f"c approx {format(float(result.value), '.12g')}", file=out)

    if args.oracle:
        try:
            truth = brute_force_count(instance.formula, instance.weights)
        except BudgetExceeded as exc:
            print(f"c oracle skipped: {exc}", file=out)
            return EXIT_OK
        if exact:
            agree = truth == result.value
        else:
            agree = abs(float(truth) - result.value) <= 1e-9 * abs(float(truth))
        print(f"c oracle {format_value(truth, exact)} {'agree' if agree else 'MISMATCH'}", file=out)
        if not agree:
            return EXIT_ORACLE_MISMATCH
    return EXIT_OK


def main() -> None:
    sys.exit(run())
