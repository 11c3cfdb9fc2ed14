"""Regenerate the exception table from dp values and diff it against the embedded copy.

    python scripts/regenerate_exceptions.py --max 160000 --out regenerated.csv

At --max 160000 (past the largest exception, 149,894) this re-derives the whole
table; it needs about 360 MiB and under a minute.
"""

import argparse
import logging
import sys
import time

from isoperim import analysis, dp
from isoperim.fast import ExceptionTable, default_table

log = logging.getLogger("regenerate")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max", type=int, default=25_000)
    ap.add_argument("--out", default=None, help="write the regenerated table as CSV")
    ap.add_argument("--memory-budget", type=float, default=4096)
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(message)s")

    t = time.perf_counter()
    values = dp.compute_values(args.max, args.memory_budget)
    log.info("dp values to %d in %.1fs", args.max, time.perf_counter() - t)
    regen = analysis.regenerate_exceptions(args.max, values)
    diff = analysis.diff_exceptions(regen, default_table(), args.max)
    log.info("%d records; extra=%d missing=%d changed=%d", len(regen),
             len(diff["extra"]), len(diff["missing"]), len(diff["changed"]))
    if args.out:
        table = ExceptionTable({r.n: r for r in regen}, "regenerated")
        with open(args.out, "w") as fh:
            fh.write(table.to_csv())
    return 1 if any(diff.values()) else 0


if __name__ == "__main__":
    sys.exit(main())
