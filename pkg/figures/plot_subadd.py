#!/usr/bin/env python3
"""Subadditivity-violation frequency against dimension: per-rep scatter
plus the mean line.

Usage: plot_subadd.py --in <csv> --out <png>

Input follows the subadd CSV schema (leading '#' comment lines are
skipped).  Missing columns abort with the column named.
"""

import argparse
import csv
import sys
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

COLUMNS = ["d", "rep", "frequency"]


def read_rows(path, required):
    with open(path, newline="") as fh:
        lines = [ln for ln in fh if not ln.startswith("#")]
    rows = list(csv.DictReader(lines))
    if not rows:
        sys.exit(f"error: {path}: no data rows")
    for col in required:
        if col not in rows[0]:
            sys.exit(f"error: {path}: missing column '{col}'")
    return rows


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--in", required=True, dest="in_csv", help="subadd schema CSV")
    parser.add_argument("--out", required=True, help="output image path")
    args = parser.parse_args(argv)

    rows = read_rows(args.in_csv, COLUMNS)
    by_d = defaultdict(list)
    for r in rows:
        by_d[int(r["d"])].append(float(r["frequency"]))
    dims = sorted(by_d)
    means = [sum(by_d[d]) / len(by_d[d]) for d in dims]

    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    for d in dims:
        ax.plot([d] * len(by_d[d]), by_d[d], ".", color="tab:gray", alpha=0.5,
                ms=5, zorder=1)
    ax.plot(dims, means, "o-", color="tab:red", label="mean over reps", zorder=2)
    ax.set_xlabel("dimension d")
    ax.set_ylabel("violation frequency")
    ax.set_xticks(dims)
    ax.legend()
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(args.out, dpi=150, metadata={"Software": "figures"})
    return 0


if __name__ == "__main__":
    sys.exit(main())
