#!/usr/bin/env python3
"""Average-vs-maximum figure: Monte Carlo mean with error bars, the
analytic mean, and the numerically found maximum, against dimension.

Usage: plot_avg_max.py --haar <csv> --max <csv> --out <png>

Inputs follow the haar-avg and maximize CSV schemas (leading '#' comment
lines are skipped).  Missing columns abort with the column named.
"""

import argparse
import csv
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

HAAR_COLUMNS = ["d", "mc_mean", "mc_stderr", "analytic"]
MAX_COLUMNS = ["d", "best_H2"]


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
    parser.add_argument("--haar", required=True, help="haar-avg schema CSV")
    parser.add_argument("--max", required=True, dest="max_csv",
                        help="maximize schema CSV")
    parser.add_argument("--out", required=True, help="output image path")
    args = parser.parse_args(argv)

    haar = sorted(read_rows(args.haar, HAAR_COLUMNS), key=lambda r: int(r["d"]))
    mx = sorted(read_rows(args.max_csv, MAX_COLUMNS), key=lambda r: int(r["d"]))

    hd = [int(r["d"]) for r in haar]
    mc = [float(r["mc_mean"]) for r in haar]
    se = [float(r["mc_stderr"]) for r in haar]
    an = [float(r["analytic"]) for r in haar]
    md = [int(r["d"]) for r in mx]
    best = [float(r["best_H2"]) for r in mx]

    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    ax.plot(hd, an, "-", color="tab:blue", label="analytic mean", zorder=1)
    ax.errorbar(
        hd, mc, yerr=se, fmt="o", ms=4, color="tab:orange",
        capsize=3, label="Monte Carlo mean", zorder=2,
    )
    ax.plot(md, best, "s--", ms=4, color="tab:green", label="numerical maximum",
            zorder=3)
    ax.set_xlabel("dimension d")
    ax.set_ylabel("2-entropy")
    ax.set_xticks(sorted(set(hd) | set(md)))
    ax.legend()
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(args.out, dpi=150, metadata={"Software": "figures"})
    return 0


if __name__ == "__main__":
    sys.exit(main())
