#!/usr/bin/env python3
"""Time the solver across graph families and write one combined CSV.

Every instance is verified after solving; a verification failure aborts
the sweep. Disconnected random draws are skipped and noted on stderr.

Example:
    python3 scripts/bench_sweep.py --families path,complete --sizes 50,100,200
    python3 scripts/bench_sweep.py --families gnp --sizes 100..120 --seeds 5 --p 0.1
"""

from __future__ import annotations

import argparse
import csv
import sys
import time

from treesign.cli import BENCH_FAMILIES, CSV_HEADER, BenchConfig, parse_sizes, run_bench


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--families",
        default="path,cycle,complete",
        help=f"comma-separated subset of: {', '.join(BENCH_FAMILIES)}",
    )
    parser.add_argument("--sizes", default="50,100,200", help="e.g. 10,20 or 10..100")
    parser.add_argument("--seeds", type=int, default=3, help="gnp draws per size")
    parser.add_argument("--p", type=float, default=0.3, help="gnp edge probability")
    parser.add_argument("--csv", default=None, help="destination (default stdout)")
    args = parser.parse_args()

    families = tuple(f.strip() for f in args.families.split(",") if f.strip())
    unknown = [f for f in families if f not in BENCH_FAMILIES]
    if unknown:
        parser.error(f"unknown families: {', '.join(unknown)}")
    sizes = parse_sizes(args.sizes)

    out = open(args.csv, "w", encoding="utf-8", newline="") if args.csv else sys.stdout
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    try:
        for family in families:
            started = time.perf_counter()
            rows, skipped = run_bench(
                BenchConfig(family=family, sizes=sizes, seeds=args.seeds, p=args.p)
            )
            writer.writerows(rows)
            elapsed = time.perf_counter() - started
            print(
                f"{family}: {len(rows)} instance(s), {skipped} skipped, {elapsed:.2f}s",
                file=sys.stderr,
            )
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
