"""Write a b-file (n value) for P or Q and the n,value,drift series used for plots."""

import argparse
from pathlib import Path

from isoperim import analysis
from isoperim.fast import fast_range


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max", type=int, default=10_000)
    ap.add_argument("--outdir", default="out")
    args = ap.parse_args()

    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    values = fast_range(args.max)
    for name, col in (("P", values.P), ("Q", values.Q)):
        (out / f"b_{name}.txt").write_text("".join(f"{n} {v}\n" for n, v in enumerate(col.tolist())))
        (out / f"drift_{name}.csv").write_text(analysis.emit_drift_series(args.max, name, values))
    print(f"wrote b-files and drift series for 0..{args.max} to {out}/")


if __name__ == "__main__":
    main()
