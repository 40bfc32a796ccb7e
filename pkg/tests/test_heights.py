import json
import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from areal_heights.errors import DomainError, InvalidInputError
from areal_heights.heights import (
    HeightReport,
    KroneckerVerdict,
    areal_height,
    areal_mahler_measure,
    comparison_bounds,
    essential_minimum,
    kronecker_classify,
    lambda_height,
    mahler_measure,
    unit_capacity_scaling,
    weil_height,
)
from areal_heights.measures import RadiusProfile, areal_height_at_infinity, f_r, gamma
from areal_heights.pairings import az_closed_form
from areal_heights.places import INF, Place, Point, normalize_input
from areal_heights.polyalg import IntPolynomial, cyclotomic

from conftest import int_polys, radius_profiles

R1 = RadiusProfile.single(1.0)
GOLDEN = IntPolynomial.parse("-1,-1,1")
LEHMER = IntPolynomial.parse("1,1,0,-1,-1,-1,-1,-1,0,1,1")


def mp_mahler(P, dps=30):
    with mpmath.workdps(dps):
        rts = mpmath.polyroots(list(reversed(P.coeffs)), maxsteps=300, extraprec=300)
        return float(mpmath.log(abs(P.leading)) + sum(mpmath.log(max(1, abs(z))) for z in rts))


def mp_areal_mahler(P, dps=30):
    with mpmath.workdps(dps):
        rts = mpmath.polyroots(list(reversed(P.coeffs)), maxsteps=300, extraprec=300)
        val = mpmath.log(abs(P.leading))
        for z in rts:
            a = abs(z)
            val += mpmath.log(a) if a >= 1 else (a * a - 1) / 2
        return float(val)


# --- Mahler measures -------------------------------------------------------

def test_lehmer_mahler_measure():
    assert mahler_measure(LEHMER) == pytest.approx(mp_mahler(LEHMER), abs=1e-12)
    assert mahler_measure(LEHMER) == pytest.approx(0.162357612007738, abs=1e-12)


def test_mahler_counts_multiplicity():
    P = IntPolynomial.parse("-2,1") * IntPolynomial.parse("-2,1")
    assert mahler_measure(P) == pytest.approx(2 * math.log(2), abs=1e-14)
    assert areal_mahler_measure(IntPolynomial.parse("0,0,1")) == -1.0


@given(int_polys(max_degree=10, bound=50, nonzero_constant=False))
def test_mahler_measures_match_mpmath(P):
    assume(P.constant != 0)
    assert mahler_measure(P) == pytest.approx(mp_mahler(P), abs=1e-9)
    assert areal_mahler_measure(P) == pytest.approx(mp_areal_mahler(P), abs=1e-9)


@given(int_polys(max_degree=12, bound=50, nonzero_constant=False))
def test_areal_mahler_bounds(P):
    m, md = mahler_measure(P), areal_mahler_measure(P)
    assert m - P.degree / 2 - 1e-10 <= md <= m + 1e-10


# --- heights ---------------------------------------------------------------

def test_weil_height_examples():
    assert weil_height(IntPolynomial((-1, 2))).total == pytest.approx(math.log(2))
    assert weil_height(GOLDEN).total == pytest.approx(0.5 * math.log((1 + 5**0.5) / 2), abs=1e-15)
    assert weil_height(Point.ZERO).total == 0.0
    assert weil_height(cyclotomic(12)).total == pytest.approx(0.0, abs=1e-15)


def test_golden_ratio_areal_height():
    phi = (1 + 5**0.5) / 2
    expect = 0.125 + 0.5 * (f_r(1.0, phi) + f_r(1.0, 1 / phi))
    assert areal_height(GOLDEN, R1).total == pytest.approx(expect, abs=1e-15)
    assert areal_height(GOLDEN, R1).total == pytest.approx(0.211097415342, abs=1e-11)


def test_points_zero_and_infinity():
    r = RadiusProfile.parse("inf:2,3:1/3")
    h_inf = areal_height_at_infinity(r)
    assert areal_height(Point.INFINITY, r).total == h_inf
    assert areal_height(Point.ZERO, r).total == pytest.approx(h_inf + f_r(2, 0) + f_r(1 / 3, 0))
    assert areal_height(Point.ZERO, R1).total == -0.375


@given(int_polys(max_degree=10, bound=40))
def test_areal_height_single_place_is_areal_mahler_over_degree(P):
    alpha = normalize_input(P, force=True)
    assume(not isinstance(alpha, Point))
    expected = 0.125 + areal_mahler_measure(alpha) / alpha.degree
    assert areal_height(alpha, R1, force=True).total == pytest.approx(expected, abs=1e-10)
    assert weil_height(alpha, force=True).total == pytest.approx(mahler_measure(alpha) / alpha.degree, abs=1e-10)


def test_refuses_reducible_without_force():
    with pytest.raises(InvalidInputError):
        areal_height(IntPolynomial.parse("1,2,1"), R1)
    assert areal_height(IntPolynomial.parse("1,2,1"), R1, force=True).total == pytest.approx(0.125)


def test_lambda_heights():
    t = RadiusProfile.parse("inf:2,2:1/2")
    assert lambda_height(IntPolynomial((-2, 1)), t).total == 0.0
    assert lambda_height(IntPolynomial((-1, 2)), R1).total == pytest.approx(math.log(2))
    assert lambda_height(cyclotomic(7), R1).total == pytest.approx(0.0, abs=1e-15)
    assert lambda_height(Point.INFINITY, t).total == 0.0


@given(int_polys(max_degree=8, bound=40), radius_profiles())
def test_lambda_height_minimum_when_capacity_one(P, r):
    _, t = unit_capacity_scaling(r)
    alpha = normalize_input(P, force=True)
    assume(not isinstance(alpha, Point))
    assert lambda_height(alpha, t, force=True).total >= -1e-10


def test_report_round_trip():
    rep = areal_height(IntPolynomial((-1, 2)), RadiusProfile.parse("inf:1,3:2"))
    back = HeightReport.from_dict(json.loads(json.dumps(rep.to_dict())))
    assert back == rep


# --- essential minimum and Kronecker ---------------------------------------

@pytest.mark.parametrize("r", [1.0, 1.3, 2.0, 5.0])
def test_single_place_essential_minimum(r):
    # r > 1: t = 1, AZ(rho_r, lambda) = log(r)/2 - 3/8 + 1/(2 r^2)
    expect = 0.5 * math.log(r) - 0.375 + 0.5 / r**2 if r > 1 else 0.125 - 0.5 * math.log(r)
    assert essential_minimum(RadiusProfile.single(r)) == pytest.approx(expect, abs=1e-14)


def test_essential_minimum_small_capacity():
    r = RadiusProfile.parse("inf:0.5,5:0.3")
    assert essential_minimum(r) == areal_height_at_infinity(r)


@given(radius_profiles())
def test_zero_and_infinity_below_essential_minimum(r):
    assume(gamma(r) > 1 + 1e-9)
    L = essential_minimum(r)
    assert areal_height(Point.ZERO, r).total < L
    assert areal_height(Point.INFINITY, r).total < L


@pytest.mark.parametrize("alpha, r, expect", [
    (cyclotomic(5), R1, True),
    (cyclotomic(12), R1, True),
    (IntPolynomial((-1, 2)), R1, False),
    (IntPolynomial((-2, 1)), R1, False),
    (GOLDEN, R1, False),
    (IntPolynomial((-2, 1)), RadiusProfile.parse("inf:2,2:1/2"), True),
    (IntPolynomial((-2, 0, 1)), RadiusProfile.parse("inf:2,2:1"), True),
    (GOLDEN, RadiusProfile.single(0.5), True),
    (GOLDEN, RadiusProfile.single(0.7), False),
])
def test_kronecker_verdicts(alpha, r, expect):
    verdict = kronecker_classify(alpha, r)
    assert verdict.attains_minimum is expect
    h = areal_height(alpha, r).total
    assert (abs(h - essential_minimum(r)) <= 1e-10) is expect


def test_kronecker_certificate_and_round_trip():
    verdict = kronecker_classify(IntPolynomial((-1, 2)), R1)
    rows = {str(row.place): row for row in verdict.certificate}
    assert rows["inf"].relation == "==" and not rows["inf"].satisfied
    assert rows["2"].value == 2.0
    back = KroneckerVerdict.from_dict(json.loads(json.dumps(verdict.to_dict())))
    assert back.attains_minimum == verdict.attains_minimum
    assert len(back.certificate) == len(verdict.certificate)


def test_kronecker_rejects_points():
    with pytest.raises(DomainError):
        kronecker_classify(Point.ZERO, R1)
    with pytest.raises(DomainError):
        kronecker_classify(Point.INFINITY, R1)


# --- inequalities ----------------------------------------------------------

@given(int_polys(max_degree=8, bound=40), radius_profiles())
def test_comparison_sandwich(P, r):
    alpha = normalize_input(P, force=True)
    assume(not isinstance(alpha, Point))
    b = comparison_bounds(alpha, r, force=True)
    assert b.lower - 1e-10 <= b.value <= b.upper + 1e-10


def test_upper_bound_attained_by_roots_of_unity():
    r = RadiusProfile.parse("inf:0.8,2:1.5")
    b = comparison_bounds(cyclotomic(9), r)
    assert b.value == pytest.approx(b.upper, abs=1e-12)


@given(int_polys(max_degree=8, bound=40), radius_profiles())
def test_lower_bound_for_nonzero(P, r):
    alpha = normalize_input(P, force=True)
    assume(not isinstance(alpha, Point))
    assert areal_height(alpha, r, force=True).total >= areal_height_at_infinity(r) - 1e-10


@given(int_polys(max_degree=8, bound=40), radius_profiles())
def test_capacity_scaling_inequality(P, r):
    assume(gamma(r) > 1 + 1e-9)
    alpha = normalize_input(P, force=True)
    assume(not isinstance(alpha, Point))
    c, t = unit_capacity_scaling(r)
    lhs = areal_height(alpha, r, force=True).total
    excess = areal_height(alpha, t, force=True).total - areal_height_at_infinity(t)
    rhs = az_closed_form(r, t).value + c * c * excess
    assert lhs >= rhs - 1e-10
    assert (abs(lhs - rhs) <= 1e-10) == (abs(excess) <= 1e-10)
