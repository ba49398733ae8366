#!/usr/bin/env python3
"""Reference plot for `entroute simulate` / `entroute sweep` reports.

Documentation-grade helper, not a supported component:

    entroute sweep --config configs/steady_grid.json --seed 1 --out report.csv
    python3 scripts/plot_benchmark.py report.csv p_gen report.png
"""
import csv
import sys
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def main() -> None:
    if len(sys.argv) != 4:
        sys.exit(__doc__)
    axis = sys.argv[2]
    rows = list(csv.DictReader(open(sys.argv[1], newline="")))
    if not rows:
        sys.exit("empty csv")

    fig, (left, right) = plt.subplots(1, 2, figsize=(9, 3.5))
    series = defaultdict(list)
    ratios = defaultdict(list)
    for row in rows:
        x = float(row[axis])
        series[(row["algorithm"], row["mode"])].append(
            (x, float(row["atwt_mean"]), float(row["atwt_se"]))
        )
        if row["mode"] == "OPP":
            ratios[row["algorithm"]].append((x, float(row["improvement"])))

    for (algorithm, mode), points in sorted(series.items()):
        points.sort()
        left.errorbar(
            [x for x, _, _ in points],
            [y for _, y, _ in points],
            yerr=[e for _, _, e in points],
            label=f"{algorithm} {mode}",
            marker="o",
            ms=3,
            lw=1,
        )
    for algorithm, points in sorted(ratios.items()):
        points.sort()
        right.plot([x for x, _ in points], [y for _, y in points], marker="o", ms=3,
                   label=algorithm)

    left.set_xlabel(axis)
    left.set_ylabel("average total waiting time (slots)")
    left.legend(fontsize=6)
    right.set_xlabel(axis)
    right.set_ylabel("improvement ratio")
    right.legend(fontsize=6)
    fig.savefig(sys.argv[3], dpi=160, bbox_inches="tight")


if __name__ == "__main__":
    main()
