"""Command-line entry points.

    heilbronn bound --n 5 --p 10 --variant interior
    heilbronn verify --config points.json --compare 10

Exit codes: 0 success, 1 usage or input error, 2 search incomplete (node
budget exhausted), 3 a lower-bound certificate exceeded the computed upper
bound, which can only mean a bug.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .checkpoint import CheckpointMismatch
from .geometry import Grid, GridSpec, Variant
from .oracle import TripleCache
from .search import (DEFAULT_NODE_BUDGET, MAX_N, SearchIncomplete, SearchParams,
                     WarmStartError, solve)
from .svg import emit_svg
from .verify import KNOWN_CONSTANTS, ConfigError, load_config, min_area, scale_to_grid

EXIT_OK, EXIT_USAGE, EXIT_INCOMPLETE, EXIT_ORDER = 0, 1, 2, 3

log = logging.getLogger("heilbronn")


class UsageError(Exception):
    pass


def _frac(f: Fraction) -> dict:
    return {"num": f.numerator, "den": f.denominator}


def _none_or(value: str):
    return None if value.lower() == "none" else value


def bound_report(result, argv, grid, checkpoint=None) -> dict:
    """JSON-ready report for a finished search; exact integers first."""
    return {
        "command": argv,
        "n": result.N,
        "p": result.P,
        "variant": result.variant.value,
        "bound": _frac(result.bound),
        "k": result.k,
        "bound_decimal": float(result.bound),
        "bound_decimal_note": "approximate",
        "witness_cells": list(result.witness),
        "witness_vertices": [[list(v) for v in grid[c].vertices] for c in result.witness],
        "argmin_triple": list(result.argmin_triple()),
        "nodes_explored": result.nodes_explored,
        "elapsed_ms": round(result.elapsed * 1000),
        "complete": True,
        "checkpoint": checkpoint,
        "tasks_resumed": result.tasks_resumed,
        "version": __version__,
    }


def incomplete_report(args, argv, exc: SearchIncomplete, checkpoint) -> dict:
    return {
        "command": argv,
        "n": args.n,
        "p": args.p,
        "variant": args.variant,
        "bound": None,
        "bound_decimal": None,
        "witness_cells": None,
        "nodes_explored": exc.nodes_explored,
        "elapsed_ms": None,
        "complete": False,
        "status": "INCOMPLETE",
        "message": str(exc),
        "checkpoint": checkpoint,
        "version": __version__,
    }


CSV_FIELDS = ["n", "p", "variant", "num", "den", "bound_decimal", "witness_cells",
              "nodes_explored", "elapsed_ms", "complete", "version"]


def render_bound(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2) + "\n"
    bound = report["bound"]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_FIELDS)
        w.writerow([
            report["n"], report["p"], report["variant"],
            bound["num"] if bound else "", bound["den"] if bound else "",
            "" if report["bound_decimal"] is None else repr(report["bound_decimal"]),
            " ".join(map(str, report["witness_cells"] or [])),
            report["nodes_explored"],
            "" if report["elapsed_ms"] is None else report["elapsed_ms"],
            "true" if report["complete"] else "false",
            report["version"],
        ])
        return buf.getvalue()
    if not report["complete"]:
        return (f"INCOMPLETE: {report['message']}\n"
                f"no bound is certified for N={report['n']}, P={report['p']} "
                f"({report['variant']})\n")
    lines = [
        f"N={report['n']}  P={report['p']}  variant={report['variant']}",
        f"proven upper bound: sigma({report['n']}) <= {bound['num']}/{bound['den']}"
        f"  (~{report['bound_decimal']:.6f}, approximate)",
        f"grid value k={report['k']} over P^2={report['p'] ** 2}",
        f"witness cells: {' '.join(map(str, report['witness_cells']))}",
    ]
    for cid, verts in zip(report["witness_cells"], report["witness_vertices"]):
        lines.append(f"  cell {cid}: " + " ".join(f"({x},{y})" for x, y in verts))
    lines.append(f"nodes explored: {report['nodes_explored']}")
    lines.append(f"elapsed: {report['elapsed_ms']} ms")
    if report.get("checkpoint"):
        lines.append(f"checkpoint: {report['checkpoint']} "
                     f"({report['tasks_resumed']} tasks resumed)")
    lines.append(f"version: {report['version']}")
    return "\n".join(lines) + "\n"


def cmd_bound(args, argv) -> int:
    if not 3 <= args.n <= MAX_N:
        raise UsageError(f"--n must be in [3, {MAX_N}]")
    if args.p < 1:
        raise UsageError("--p must be >= 1")
    if args.threads < 1:
        raise UsageError("--threads must be >= 1")
    warm = None
    if args.warm_start:
        config = load_config(args.warm_start)
        if len(config) < args.n:
            raise UsageError(f"warm-start config has {len(config)} points, need >= {args.n}")
        warm = scale_to_grid(config, args.p)
        log.info("warm start from %s: k >= %d", args.warm_start, warm)
    grid = Grid(GridSpec(args.p, Variant(args.variant)))
    params = SearchParams(grid.spec, args.n, use_symmetry=not args.no_symmetry,
                          thread_count=args.threads, initial_bound=warm)
    try:
        result = solve(params, TripleCache(grid), node_budget=args.node_budget,
                       checkpoint=args.checkpoint)
    except SearchIncomplete as exc:
        sys.stdout.write(render_bound(incomplete_report(args, argv, exc, args.checkpoint),
                                      args.format))
        print("INCOMPLETE: node budget exhausted; no bound certified", file=sys.stderr)
        return EXIT_INCOMPLETE
    report = bound_report(result, argv, grid, args.checkpoint)
    sys.stdout.write(render_bound(report, args.format))
    if args.emit_svg:
        Path(args.emit_svg).write_text(emit_svg(result, grid))
    return EXIT_OK


def verify_report(config, cert, argv, upper=None) -> dict:
    n = len(config)
    report = {
        "command": argv,
        "n": n,
        "points": [[str(x), str(y)] for x, y in config.points],
        "min_area": _frac(cert.min_area),
        "min_area_decimal": float(cert.min_area),
        "min_area_decimal_note": "approximate",
        "argmin_triple": list(cert.argmin_triple),
        "version": __version__,
    }
    if n in KNOWN_CONSTANTS:
        status, value = KNOWN_CONSTANTS[n]
        report["reference"] = {"status": status, "value": _frac(value)}
    if upper is not None:
        report["upper_bound"] = {"p": upper.P, "bound": _frac(upper.bound),
                                 "witness_cells": list(upper.witness)}
        report["sandwich_holds"] = cert.min_area <= upper.bound
    return report


def render_verify(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2) + "\n"
    lo = report["min_area"]
    up = report.get("upper_bound")
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "min_num", "min_den", "min_decimal", "argmin_triple",
                    "upper_p", "upper_num", "upper_den", "sandwich_holds", "version"])
        w.writerow([report["n"], lo["num"], lo["den"], repr(report["min_area_decimal"]),
                    " ".join(map(str, report["argmin_triple"])),
                    up["p"] if up else "", up["bound"]["num"] if up else "",
                    up["bound"]["den"] if up else "",
                    "" if up is None else str(report["sandwich_holds"]).lower(),
                    report["version"]])
        return buf.getvalue()
    i, j, k = report["argmin_triple"]
    lines = [
        f"N={report['n']} points",
        f"certified lower bound: sigma({report['n']}) >= {lo['num']}/{lo['den']}"
        f"  (~{report['min_area_decimal']:.6f}, approximate)",
        f"smallest triangle: points {i}, {j}, {k}",
    ]
    if "reference" in report:
        ref = report["reference"]
        lines.append(f"published {ref['status']} value: "
                     f"{ref['value']['num']}/{ref['value']['den']}")
    if up:
        b = up["bound"]
        rel = "<=" if report["sandwich_holds"] else "> (VIOLATION)"
        lines.append(f"{lo['num']}/{lo['den']} {rel} sigma({report['n']}) <= "
                     f"{b['num']}/{b['den']}  (upper bound at P={up['p']})")
    return "\n".join(lines) + "\n"


def cmd_verify(args, argv) -> int:
    config = load_config(args.config)
    cert = min_area(config)
    upper = None
    if args.compare is not None:
        n = len(config)
        if n > MAX_N:
            raise UsageError(f"--compare supports at most {MAX_N} points")
        upper = solve(SearchParams(GridSpec(args.compare), n, thread_count=args.threads))
    report = verify_report(config, cert, argv, upper)
    sys.stdout.write(render_verify(report, args.format))
    if upper is not None and not report["sandwich_holds"]:
        print("ERROR: lower-bound certificate exceeds the computed upper bound",
              file=sys.stderr)
        return EXIT_ORDER
    return EXIT_OK


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    default_threads = int(os.environ.get("HEILBRONN_THREADS", "1"))
    parser = argparse.ArgumentParser(
        prog="heilbronn",
        description="Certified bounds for the Heilbronn triangle problem.")
    parser.add_argument("-v", "--verbose", action="store_true")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bound", help="upper bound by exhaustive grid search")
    b.add_argument("--n", type=int, required=True, help="number of points")
    b.add_argument("--p", type=int, required=True, help="subdivisions per side")
    b.add_argument("--variant", choices=[v.value for v in Variant], default="interior")
    b.add_argument("--threads", type=_positive_int, default=default_threads)
    b.add_argument("--warm-start", type=_none_or, default=None, metavar="CONFIG|none")
    b.add_argument("--checkpoint", type=_none_or, default=None, metavar="PATH|none")
    b.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET)
    b.add_argument("--format", choices=["json", "csv", "text"], default="text")
    b.add_argument("--emit-svg", type=_none_or, default=None, metavar="PATH|none")
    b.add_argument("--no-symmetry", action="store_true",
                   help="disable root symmetry reduction")
    b.set_defaults(func=cmd_bound)

    v = sub.add_parser("verify", help="exact min-area certificate for a configuration")
    v.add_argument("--config", required=True, help='JSON array of ["num/den", "num/den"]')
    v.add_argument("--format", choices=["json", "csv", "text"], default="text")
    v.add_argument("--compare", type=lambda s: None if s.lower() == "none" else _positive_int(s),
                   default=None, metavar="P|none")
    v.add_argument("--threads", type=_positive_int, default=default_threads)
    v.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args, argv)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, CheckpointMismatch, WarmStartError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
