"""Gap decay for the p-th roots of a rational base.

Writes a CSV with columns p, degree, height, gap, scaled_gap, p2_gap and
optionally cross-checks the closed-form heights against the full root
pipeline on the explicit polynomials b x^p - a.
"""

import argparse
import csv
import math
from fractions import Fraction
from pathlib import Path

from areal_heights import RadiusProfile, areal_height
from areal_heights.equidist import lehmer_failure_sequence, parse_int_range, primes_in
from areal_heights.polyalg import IntPolynomial


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--alpha", default="1/2")
    parser.add_argument("--primes", default="5:499")
    parser.add_argument("--radii", default="inf:1")
    parser.add_argument("--out", type=Path, default=Path("results/lehmer.csv"))
    parser.add_argument("--check-upto", type=int, default=61, help="verify with root solving for p <= this")
    args = parser.parse_args()

    base = Fraction(args.alpha)
    r = RadiusProfile.parse(args.radii)
    recs = lehmer_failure_sequence(primes_in(parse_int_range(args.primes)), r, base)
    args.out.parent.mkdir(parents=True, exist_ok=True)
    with open(args.out, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["p", "degree", "height", "gap", "scaled_gap", "p2_gap"])
        for rec in recs:
            w.writerow([rec.index, rec.degree] + [f"{v:.12g}" for v in
                        (rec.height, rec.gap, rec.scaled_gap, rec.index**2 * rec.gap)])
    print(f"wrote {len(recs)} rows to {args.out}")

    worst = 0.0
    for rec in recs:
        if rec.index > args.check_upto:
            break
        P = IntPolynomial((-base.numerator,) + (0,) * (rec.index - 1) + (base.denominator,))
        worst = max(worst, abs(areal_height(P, r).total - rec.height))
    print(f"max |root pipeline - closed form| for p <= {args.check_upto}: {worst:.2e}")
    if base == Fraction(1, 2) and r == RadiusProfile.single(1.0):
        ratios = [rec.index**2 * rec.gap / math.log(2) ** 2 for rec in recs if rec.index >= 101]
        if ratios:
            print(f"p^2 gap / log^2 2 over p >= 101: [{min(ratios):.6f}, {max(ratios):.6f}]")


if __name__ == "__main__":
    main()
