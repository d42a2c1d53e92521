"""Sweep the cost/QoS frontier for a few offered loads and emit CSVs.

One file per load, columns as produced by frontier_csv_rows. The
--bound flag picks which curve the constraint is solved on; solving on
the upper bound gives a staffing guaranteed to meet the target on the
exact curve as well.
"""

import argparse
import csv
from pathlib import Path

from qstaff import frontier_csv_rows, sweep_frontier


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--lams", type=float, nargs="+",
                        default=[50.0, 100.0, 500.0])
    parser.add_argument("--bound", default="exact",
                        choices=("exact", "upper", "lower", "hw"))
    parser.add_argument("--points", type=int, default=19)
    parser.add_argument("--outdir", default="results")
    args = parser.parse_args()

    grid = [0.05 + i * 0.9 / (args.points - 1) for i in range(args.points)]
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)

    for lam in args.lams:
        sweep = sweep_frontier(lam, grid, bound=args.bound)
        rows = frontier_csv_rows(lam, sweep, bound=args.bound)
        path = outdir / f"frontier_lam{lam:g}_{args.bound}.csv"
        with path.open("w", newline="") as handle:
            writer = csv.DictWriter(handle, fieldnames=list(rows[0]))
            writer.writeheader()
            writer.writerows(rows)
        print(f"{path}: {len(rows)} points, "
              f"beta {rows[0]['beta']:.4f} down to {rows[-1]['beta']:.4f}")


if __name__ == "__main__":
    main()
