"""Time and size the dp tables, and time the fast engine, over a ladder of N."""

import argparse
import time

import numpy as np

from isoperim import dp
from isoperim.fast import fast_P, fast_range


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", type=int, nargs="+", default=[1000, 2000, 5000, 10_000, 25_000])
    ap.add_argument("--store", action="store_true", help="keep helper tables (higher memory)")
    args = ap.parse_args()

    print(f"{'N':>8} {'dp s':>8} {'est MiB':>8} {'fast s':>8} {'agree':>6}")
    for N in args.sizes:
        t = time.perf_counter()
        tabs = dp.build_helper_tables(N, store=args.store, memory_budget_mb=1e6)
        t_dp = time.perf_counter() - t
        t = time.perf_counter()
        fr = fast_range(N)
        t_fast = time.perf_counter() - t
        agree = np.array_equal(fr.P, tabs.P) and np.array_equal(fr.Q, tabs.Q)
        mib = dp.estimate_footprint(N, args.store) / 2**20
        print(f"{N:>8} {t_dp:>8.2f} {mib:>8.1f} {t_fast:>8.3f} {str(agree):>6}")

    t = time.perf_counter()
    for e in range(4, 18):
        fast_P(10**e)
    print(f"fast_P at 10^4..10^17: {1e3 * (time.perf_counter() - t):.2f} ms total")


if __name__ == "__main__":
    main()
