import json
import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from areal_heights.equidist import (
    EquidistRecord,
    angular_imbalance,
    arithmetic_measure_check,
    discrepancy_family,
    empirical_discrepancy,
    lehmer_failure_sequence,
    lehmer_gap_closed_form,
    limiting_height_for_uniform,
    parse_int_range,
    primes_in,
    radial_ks,
    radial_wasserstein,
    roots_of_unity,
)
from areal_heights.errors import DomainError, InvalidInputError, UnsupportedMeasureError
from areal_heights.heights import areal_height, lambda_height
from areal_heights.measures import SQRT_E, ArealDisk, ChebyshevEquilibrium, Circle, RadiusProfile
from areal_heights.pairings import az_closed_form
from areal_heights.polyalg import IntPolynomial, complex_roots, cyclotomic

R1 = RadiusProfile.single(1.0)


def mp_gap(p):
    with mpmath.workdps(40):
        return float(mpmath.log(2) / p + (mpmath.power(2, mpmath.mpf(-2) / p) - 1) / 2)


@pytest.mark.parametrize("p", [3, 5, 101, 499])
def test_gap_against_high_precision(p):
    (rec,) = lehmer_failure_sequence([p])
    assert rec.gap == pytest.approx(mp_gap(p), rel=1e-9, abs=1e-15)
    assert rec.scaled_gap == pytest.approx(p * mp_gap(p), rel=1e-9)


def test_gap_small_primes():
    (rec,) = lehmer_failure_sequence([3])
    assert rec.gap == pytest.approx(0.0460293226604, abs=1e-12)
    (rec,) = lehmer_failure_sequence([101])
    assert rec.scaled_gap == pytest.approx(0.004735270828, abs=1e-11)


def test_second_order_term():
    # p^2 gap = L^2 - (2/3) L^3 / p + (1/3) L^4 / p^2 + O(1/p^3), L = log 2
    L = math.log(2)
    for p in (101, 211, 499):
        (rec,) = lehmer_failure_sequence([p])
        approx = L**2 - (2 / 3) * L**3 / p + L**4 / (3 * p * p)
        assert p * p * rec.gap == pytest.approx(approx, abs=1.0 / p**3)
        assert p * p * rec.gap < L**2


def test_scaled_gap_decreasing_from_11():
    recs = lehmer_failure_sequence(primes_in(range(11, 500)))
    scaled = [r.scaled_gap for r in recs]
    assert all(a > b for a, b in zip(scaled, scaled[1:]))


@pytest.mark.parametrize("p", [3, 7, 13, 31])
def test_closed_form_matches_explicit_polynomial(p):
    P = IntPolynomial((-1,) + (0,) * (p - 1) + (2,))
    (rec,) = lehmer_failure_sequence([p])
    assert areal_height(P, R1).total == pytest.approx(rec.height, abs=1e-12)


def test_general_base_and_multi_place():
    r = RadiusProfile.parse("inf:1,3:1/2")
    (rec,) = lehmer_failure_sequence([5], r, Fraction(3, 4))
    assert areal_height(IntPolynomial((-3, 0, 0, 0, 0, 4)), r).total == pytest.approx(rec.height, abs=1e-12)


def test_lehmer_preconditions():
    with pytest.raises(DomainError):
        lehmer_failure_sequence([3], R1, Fraction(2))
    with pytest.raises(DomainError):
        lehmer_failure_sequence([3], RadiusProfile.parse("inf:1,3:1"), Fraction(2, 3))
    with pytest.raises(InvalidInputError):
        lehmer_failure_sequence([4])


def test_record_invariants_and_round_trip():
    with pytest.raises(InvalidInputError):
        EquidistRecord(1, 0, 0.0, 0.0, 0.0)
    with pytest.raises(InvalidInputError):
        EquidistRecord(1, 1, 0.0, -1e-9, 0.0)
    rec = lehmer_failure_sequence([7])[0]
    assert EquidistRecord.from_dict(json.loads(json.dumps(rec.to_dict()))) == rec


# --- discrepancy -----------------------------------------------------------

@pytest.mark.parametrize("N", [1, 2, 3, 7, 16, 31, 64, 100])
def test_roots_of_unity_discrepancy(N):
    z = roots_of_unity(N)
    assert radial_ks(z, Circle(1.0)) == 0.0
    assert empirical_discrepancy(z, Circle(1.0)) <= 16 / N


@pytest.mark.parametrize("N", range(3, 101))
def test_cyclotomic_family(N):
    z = discrepancy_family("cyclotomic", N)
    assert len(z) == cyclotomic(N).degree
    solved = complex_roots(cyclotomic(N))
    assert max(min(abs(a - b) for b in z) for a in solved) < 1e-12
    assert empirical_discrepancy(z, Circle(1.0)) <= 16 / N


def test_single_point_at_center():
    assert radial_ks([0j], ArealDisk(1.0)) == 1.0
    assert empirical_discrepancy([0j], ArealDisk(1.0)) == 1.0
    assert radial_wasserstein([0j], ArealDisk(1.0)) == pytest.approx(2 / 3)


def test_lehmer_family_radial_metrics():
    # all roots sit on |z| = 2^(-1/p): the step-CDF KS distance stays at 1,
    # while the Wasserstein distance to the unit circle is 1 - 2^(-1/p)
    for p in (5, 101, 499):
        z = discrepancy_family("lehmer", p)
        assert radial_ks(z, Circle(2 ** (-1 / p))) == 0.0
        assert radial_ks(z, Circle(1.0)) == pytest.approx(1.0)
        assert radial_wasserstein(z, Circle(1.0)) == pytest.approx(1 - 2 ** (-1 / p), rel=1e-9)
        assert angular_imbalance(z) <= 16 / p


def test_uniform_disk_sample_converges():
    rng = np.random.default_rng(3)
    n = 40000
    z = np.sqrt(rng.random(n)) * np.exp(2j * np.pi * rng.random(n))
    assert empirical_discrepancy(z, ArealDisk(1.0)) < 0.02
    assert radial_wasserstein(z, ArealDisk(1.0)) < 0.01


@given(st.lists(st.floats(0.0, 3.0), min_size=1, max_size=30), st.floats(0.3, 3.0))
def test_wasserstein_against_quantile_integral(mods, R):
    z = np.array(mods, dtype=complex)
    u = (np.arange(20000) + 0.5) / 20000
    q_emp = np.sort(np.abs(z))[np.minimum((u * len(z)).astype(int), len(z) - 1)]
    oracle = np.mean(np.abs(q_emp - R * np.sqrt(u)))
    assert radial_wasserstein(z, ArealDisk(R)) == pytest.approx(oracle, abs=2e-3)


@given(st.lists(st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False), min_size=1, max_size=40))
def test_discrepancy_range(pts):
    d = empirical_discrepancy(pts, ArealDisk(1.0))
    assert 0.0 <= d <= math.sqrt(2)


def test_unsupported_target():
    with pytest.raises(UnsupportedMeasureError):
        empirical_discrepancy([1j], ChebyshevEquilibrium())


def test_weights():
    with pytest.raises(InvalidInputError):
        empirical_discrepancy([1, 2], Circle(1.0), weights=[0.5, 0.6])
    assert radial_ks([1, 2], Circle(1.0), weights=[0.75, 0.25]) == 0.25


# --- experiments with cyclotomic sequences ---------------------------------

def test_small_capacity_sequence_reaches_height_at_infinity():
    r, t = RadiusProfile.single(0.5), RadiusProfile.single(1.0)
    floor = az_closed_form(r, t).value
    for N in (5, 12, 30, 97):
        assert lambda_height(cyclotomic(N), t).total == pytest.approx(0.0, abs=1e-15)
        assert areal_height(cyclotomic(N), r).total == pytest.approx(floor, abs=1e-12)
        assert floor == pytest.approx(0.125 - 0.5 * math.log(0.5), abs=1e-15)


def test_cyclotomic_attains_essential_minimum():
    for N in (3, 8, 15, 60, 100):
        assert areal_height(cyclotomic(N), R1).total == pytest.approx(0.125, abs=1e-12)


# --- arithmetic threshold --------------------------------------------------

def test_arithmetic_threshold():
    assert arithmetic_measure_check(1.0).arithmetic is False
    assert arithmetic_measure_check(1.0).certificate == -0.5
    assert arithmetic_measure_check(SQRT_E - 1e-9).arithmetic is False
    edge = arithmetic_measure_check(SQRT_E)
    assert edge.arithmetic is True and edge.certificate == 0.0
    assert arithmetic_measure_check(2.0).certificate == pytest.approx(math.log(2) - 0.5)
    with pytest.raises(InvalidInputError):
        arithmetic_measure_check(0.0)


def test_limiting_height():
    lim = limiting_height_for_uniform(SQRT_E)
    assert lim.arithmetic and lim.limit == pytest.approx(0.125, abs=1e-15) and lim.exceeds_essential_min
    lim2 = limiting_height_for_uniform(2.0)
    assert lim2.limit == pytest.approx(0.5 * math.log(2) - 0.125)
    assert limiting_height_for_uniform(1.0).arithmetic is False
    assert limiting_height_for_uniform(1.0).limit is None


def test_int_ranges():
    assert parse_int_range("5:9") == [5, 6, 7, 8, 9]
    assert parse_int_range("3,5") == [3, 5]
    assert primes_in(range(10)) == [2, 3, 5, 7]
    with pytest.raises(InvalidInputError):
        parse_int_range("a:b")
