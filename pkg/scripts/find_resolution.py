"""Scan grid resolutions until the certified bound drops to a target.

    python scripts/find_resolution.py --n 6 --target 3/20
    python scripts/find_resolution.py --n 7 --target 23/200 --max-p 24

The bound is not monotone in P, so every P from --min-p upward is tried and
the first one reaching the target is reported.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from heilbronn.geometry import GridSpec, Variant
from heilbronn.search import SearchParams, solve


def scan(n, target, min_p=3, max_p=30, variant=Variant.INTERIOR, threads=1, log=None):
    """Return (first P with bound <= target or None, list of per-P rows)."""
    rows = []
    for P in range(min_p, max_p + 1):
        r = solve(SearchParams(GridSpec(P, variant), n, thread_count=threads))
        row = {"p": P, "k": r.k, "bound": str(r.bound), "bound_decimal": float(r.bound),
               "witness_cells": list(r.witness), "nodes_explored": r.nodes_explored,
               "elapsed_s": round(r.elapsed, 2)}
        rows.append(row)
        if log:
            log(row)
        if r.bound <= target:
            return P, rows
    return None, rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, required=True)
    ap.add_argument("--target", type=Fraction, required=True)
    ap.add_argument("--min-p", type=int, default=3)
    ap.add_argument("--max-p", type=int, default=30)
    ap.add_argument("--variant", choices=[v.value for v in Variant], default="interior")
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args(argv)
    found, _ = scan(args.n, args.target, args.min_p, args.max_p, Variant(args.variant),
                    args.threads, log=lambda row: print(json.dumps(row), flush=True))
    if found is None:
        print(f"no P in [{args.min_p}, {args.max_p}] reaches {args.target}")
        return 1
    print(f"N={args.n}: P={found} certifies sigma({args.n}) <= target {args.target}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
