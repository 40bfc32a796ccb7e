"""Discrepancy of point families against a disk or circle measure.

Families: primitive roots of unity (cyclotomic), all roots of unity (unity)
and the roots of 2x^n - 1 (lehmer). One CSV row per n.
"""

import argparse
import csv
from pathlib import Path

from areal_heights.equidist import (
    angular_imbalance,
    discrepancy_family,
    empirical_discrepancy,
    parse_int_range,
    radial_ks,
    radial_wasserstein,
)
from areal_heights.measures import parse_measure


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--family", default="cyclotomic", choices=("cyclotomic", "unity", "lehmer"))
    parser.add_argument("--n", default="3:100")
    parser.add_argument("--target", default="circle:1")
    parser.add_argument("--out", type=Path, default=None)
    args = parser.parse_args()

    target = parse_measure(args.target)
    out = args.out or Path(f"results/discrepancy_{args.family}.csv")
    out.parent.mkdir(parents=True, exist_ok=True)
    worst_ratio = 0.0
    with open(out, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["n", "points", "discrepancy", "radial_ks", "angular", "wasserstein"])
        for n in parse_int_range(args.n):
            z = discrepancy_family(args.family, n)
            d = empirical_discrepancy(z, target)
            worst_ratio = max(worst_ratio, d * n / 16)
            w.writerow([n, len(z)] + [f"{v:.12g}" for v in
                        (d, radial_ks(z, target), angular_imbalance(z), radial_wasserstein(z, target))])
    print(f"wrote {out}; max discrepancy / (16/n) = {worst_ratio:.4f}")


if __name__ == "__main__":
    main()
