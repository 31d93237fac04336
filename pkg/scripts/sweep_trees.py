"""Classify every free tree in an order range and write the CSV report.

    python scripts/sweep_trees.py 4 12 --out results/trees_4_12.csv --workers 4
"""

import argparse
import json
import sys
import time

from royalcolor.cli import run_sweep
from royalcolor.graphs import enumerate_trees


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("lo", type=int)
    ap.add_argument("hi", type=int)
    ap.add_argument("--out", default="-")
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--timeout", type=float, default=300.0, help="seconds per tree")
    args = ap.parse_args()

    trees = [t for n in range(args.lo, args.hi + 1) for t in enumerate_trees(n)]
    t0 = time.monotonic()
    rep = run_sweep(trees, f"trees n={args.lo}..{args.hi}", "trees",
                    timeout=args.timeout, workers=args.workers)
    if args.out == "-":
        sys.stdout.write(rep.to_csv())
    else:
        with open(args.out, "w") as fh:
            fh.write(rep.to_csv())
    summary = rep.summary()
    summary["seconds"] = round(time.monotonic() - t0, 2)
    print(json.dumps(summary), file=sys.stderr)
    return 3 if rep.counterexamples else 0 if rep.complete else 2


if __name__ == "__main__":
    sys.exit(main())
