#!/usr/bin/env python3
"""Reference plot for `entroute rate` output (curves or trajectories).

Documentation-grade helper, not a supported component:

    entroute rate --config configs/line_rates.json --seed 1 --out rates.csv
    python3 scripts/plot_rates.py rates.csv rates.png
"""
import csv
import sys
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def main() -> None:
    if len(sys.argv) != 3:
        sys.exit(__doc__)
    rows = list(csv.DictReader(open(sys.argv[1], newline="")))
    if not rows:
        sys.exit("empty csv")

    if "trial" in rows[0]:
        # Trajectory mode: one line per trial.
        series = defaultdict(list)
        for row in rows:
            series[(row["m"], row["p"], row["trial"])].append(
                (int(row["t"]), float(row["rate"]))
            )
        for points in series.values():
            points.sort()
            plt.plot([t for t, _ in points], [r for _, r in points], alpha=0.4, lw=0.8)
        plt.ylabel("delivered / t")
    else:
        curves = defaultdict(lambda: defaultdict(list))
        for row in rows:
            key = (row["m"], row["p"])
            for column in ("rate", "rate_lower", "rate_upper", "rate_wait_based"):
                curves[key][column].append((int(row["t"]), float(row[column])))
        for (m, p), columns in curves.items():
            for column, points in columns.items():
                points.sort()
                plt.plot(
                    [t for t, _ in points],
                    [v for _, v in points],
                    label=f"M={m} p={p} {column}",
                )
        plt.ylabel("requests per slot")
        plt.legend(fontsize=6)
    plt.xlabel("slot")
    plt.savefig(sys.argv[2], dpi=160, bbox_inches="tight")


if __name__ == "__main__":
    main()
