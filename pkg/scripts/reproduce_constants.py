"""Print the numerical constants for the archimedean-only (S = {inf}) case.

Each line shows the computed value, an independent reference value and the
absolute difference.
"""

import argparse
import math

import mpmath

from areal_heights import (
    ArealDisk,
    ChebyshevEquilibrium,
    Circle,
    RadiusProfile,
    areal_height,
    az_chebyshev,
    az_closed_form,
    dirichlet_L2_chi3,
    essential_minimum,
    optimize_radius,
)
from areal_heights.equidist import arithmetic_measure_check, limiting_height_for_uniform
from areal_heights.measures import SQRT_E, areal_height_at_infinity
from areal_heights.pairings import az_lambda


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--nodes", type=int, default=2**16)
    args = parser.parse_args()

    L2 = float((mpmath.psi(1, mpmath.mpf(1) / 3) - mpmath.psi(1, mpmath.mpf(2) / 3)) / 9)
    cheb1 = 7 / 24 - math.sqrt(3) / (2 * math.pi) + 3 * math.sqrt(3) / (4 * math.pi) * L2
    rows = [
        ("L(2, chi_3)", dirichlet_L2_chi3(), L2),
        ("AZ(rho_1, lambda)", az_lambda(1.0), 0.125),
        ("AZ(rho_sqrt2, lambda)", az_lambda(math.sqrt(2)), 0.25 * math.log(2) - 0.125),
        ("argmin_r AZ(rho_r, lambda)", optimize_radius(Circle(1.0)).r_star, math.sqrt(2)),
        ("AZ(rho_1, mu_cheb)", az_chebyshev(1.0, args.nodes).value, cheb1),
        ("AZ(rho_2, mu_cheb)", az_chebyshev(2.0, args.nodes).value, 0.5 * math.log(2) - 0.125),
        ("argmin_r AZ(rho_r, mu_cheb)", optimize_radius(ChebyshevEquilibrium()).r_star, 2.0),
        ("-h_rho_2(inf)", -areal_height_at_infinity(RadiusProfile.single(2.0)), 0.5 * math.log(2) - 0.125),
        ("L(rho_2) essential minimum", essential_minimum(RadiusProfile.single(2.0)), 0.5 * math.log(2) - 0.375 + 0.125),
        ("h_rho_1(golden ratio)", areal_height("-1,-1,1", RadiusProfile.single(1.0)).total,
         0.125 + 0.5 * (math.log((1 + 5**0.5) / 2) + ((5**0.5 - 1) / 2) ** 2 / 2 - 0.5)),
        ("arithmetic threshold e^(1/2)", SQRT_E, math.exp(0.5)),
        ("limit height at r = e^(1/2)", limiting_height_for_uniform(SQRT_E).limit, 0.125),
    ]
    width = max(len(name) for name, _, _ in rows)
    print(f"{'quantity':<{width}}  {'computed':>20}  {'reference':>20}  {'|diff|':>9}")
    for name, got, ref in rows:
        print(f"{name:<{width}}  {got:>20.15f}  {ref:>20.15f}  {abs(got - ref):>9.2e}")
    print(f"arithmetic_measure_check(e^(1/2) - 1e-9) = {arithmetic_measure_check(SQRT_E - 1e-9).arithmetic}")
    print(f"arithmetic_measure_check(e^(1/2))        = {arithmetic_measure_check(SQRT_E).arithmetic}")


if __name__ == "__main__":
    main()
