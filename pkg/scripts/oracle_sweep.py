#!/usr/bin/env python3
"""Exhaustively validate the solver on every connected graph up to a size.

Writes one JSON report line per graph (the same shape as `treesign
oracle --jsonl`) and a per-size summary to stderr. Exits non-zero if any
graph fails a check, with the first witness serialized next to the
output file.

Example:
    python3 scripts/oracle_sweep.py --sizes 2,3,4,5 --out oracle.jsonl
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass

from treesign import enumerate_connected_graphs, exhaustive_check
from treesign.cli import canonical_json, parse_sizes


@dataclass(frozen=True)
class SweepConfig:
    sizes: tuple[int, ...] = (2, 3, 4, 5)
    root: int = 0
    out: str | None = None
    max_trees: int = 1_000_000


def run(config: SweepConfig) -> int:
    lines: list[str] = []
    failing: list[dict] = []
    for n in config.sizes:
        checked = 0
        started = time.perf_counter()
        for g in enumerate_connected_graphs(n):
            report = exhaustive_check(g, config.root, config.max_trees)
            checked += 1
            lines.append(json.dumps(report.to_json_dict(), sort_keys=True))
            if not report.ok:
                failing.append(report.to_json_dict())
        elapsed = time.perf_counter() - started
        print(f"n={n}: {checked} graph(s) in {elapsed:.2f}s", file=sys.stderr)
    text = "\n".join(lines) + "\n"
    if config.out is None:
        sys.stdout.write(text)
    else:
        with open(config.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    if failing:
        witness = (config.out or "oracle-sweep") + ".witness.json"
        with open(witness, "w", encoding="utf-8") as handle:
            handle.write(canonical_json({"failing": failing}))
        print(f"{len(failing)} graph(s) FAILED; witness in {witness}", file=sys.stderr)
        return 1
    print("all checks passed", file=sys.stderr)
    return 0


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="2,3,4,5", help="vertex counts, e.g. 2..5")
    parser.add_argument("--root", type=int, default=0)
    parser.add_argument("--out", default=None, help="JSONL destination (default stdout)")
    parser.add_argument("--max-trees", type=int, default=1_000_000)
    args = parser.parse_args()
    config = SweepConfig(
        sizes=parse_sizes(args.sizes),
        root=args.root,
        out=args.out,
        max_trees=args.max_trees,
    )
    return run(config)


if __name__ == "__main__":
    raise SystemExit(main())
