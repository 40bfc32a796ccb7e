import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from areal_heights.errors import InvalidInputError, UnsupportedMeasureError
from areal_heights.measures import (
    SQRT_E,
    ArealDisk,
    ChebyshevEquilibrium,
    Circle,
    PointMassSet,
    RadiusProfile,
    areal_height_at_infinity,
    energy,
    f_r,
    f_r_derivative,
    gamma,
    lambda_height_at_infinity,
    parse_measure,
    potential,
    radial_cdf,
)
from areal_heights.places import INF, Place

radii = st.floats(0.05, 20.0)
xs = st.floats(0.0, 50.0)


def disk_potential_oracle(R, z):
    # direct 2-D integral of log|z - w| over the disk, normalised by area
    f = lambda s, t: s * mpmath.log(abs(z - s * mpmath.expj(t)))
    cuts = sorted({0, min(abs(z), R), R})
    arg = float(np.angle(z)) % (2 * math.pi)
    angles = sorted({0.0, arg, math.pi, 2 * math.pi})
    val = mpmath.quad(f, cuts, angles)
    return float(val / (mpmath.pi * R * R))


@pytest.mark.parametrize("R, z", [(1.0, 0.3), (1.0, 2.5), (2.0, 1.0 + 1.0j), (0.5, 0.0), (1.7, -1.7)])
def test_disk_potential_matches_area_integral(R, z):
    assert abs(potential(ArealDisk(R), z) - disk_potential_oracle(R, z)) < 1e-7


@pytest.mark.parametrize("z", [0.0, 1.0, 2.0, 3.0, 1.5j, -2.5 + 0.5j])
def test_chebyshev_potential_matches_integral(z):
    # 2 cos(th) = 2 - 4 sin^2(th/2) keeps precision near th = 0
    f = lambda th: mpmath.log(abs(z - 2 + 4 * mpmath.sin(th / 2) ** 2))
    pts = {0.0, math.pi}
    if isinstance(z, float) and abs(z) <= 2:
        pts.add(math.acos(z / 2))
    oracle = float(mpmath.quad(f, sorted(pts)) / mpmath.pi)
    assert abs(potential(ChebyshevEquilibrium(), z) - oracle) < 1e-9


@given(radii, xs)
def test_f_r_continuous_and_monotone(R, x):
    assert f_r(R, R) == pytest.approx(math.log(R), abs=1e-15)
    assert f_r(R, x + 1e-3) >= f_r(R, x)
    assert f_r_derivative(R, x) >= 0


def test_f_r_vectorised_matches_scalar():
    x = np.linspace(0, 5, 101)
    vec = f_r(1.3, x)
    assert np.allclose(vec, [f_r(1.3, float(v)) for v in x], rtol=0, atol=0)


def test_f_r_domain():
    with pytest.raises(InvalidInputError):
        f_r(0.0, 1.0)
    with pytest.raises(InvalidInputError):
        f_r(1.0, -1.0)


def test_energies():
    assert energy(ArealDisk(1.0)) == 0.25
    assert energy(ArealDisk(math.e)) == pytest.approx(-0.75)
    assert energy(Circle(2.0)) == -math.log(2)
    assert energy(ChebyshevEquilibrium()) == 0.0
    with pytest.raises(UnsupportedMeasureError):
        energy(PointMassSet.uniform([0, 1]))


def test_energy_is_minus_mean_potential():
    # Riesz: I(rho) = -int p_rho d rho; midpoint in u = s^2/R^2
    R = 1.7
    u = (np.arange(4000) + 0.5) / 4000
    mean = np.mean(f_r(R, R * np.sqrt(u)))
    assert -mean == pytest.approx(energy(ArealDisk(R)), abs=1e-7)


def test_radial_cdf():
    assert radial_cdf(ArealDisk(2.0), 1.0) == 0.25
    assert radial_cdf(ArealDisk(2.0), 3.0) == 1.0
    assert radial_cdf(Circle(1.0), 0.999) == 0.0
    assert radial_cdf(Circle(1.0), 1.0) == 1.0


def test_parse_measure(tmp_path):
    assert parse_measure("areal:1/2") == ArealDisk(0.5)
    assert parse_measure("circle:1") == Circle(1.0)
    assert parse_measure("chebyshev") == ChebyshevEquilibrium()
    f = tmp_path / "pts.csv"
    f.write_text("re,im,weight\n1,0,0.5\n0,1,0.5\n")
    pts = parse_measure(f"points:{f}")
    assert pts.atoms == (1 + 0j, 1j)
    with pytest.raises(InvalidInputError):
        parse_measure("disk:1")
    with pytest.raises(InvalidInputError):
        parse_measure("areal:-1")


def test_point_mass_potential_is_minus_inf_on_atom():
    pts = PointMassSet.uniform([1, -1])
    assert potential(pts, 1.0) == -math.inf
    assert potential(pts, 0.0) == pytest.approx(0.0)


def test_radius_profile():
    r = RadiusProfile.parse("inf:1.0, 2:1/2, 5:2")
    assert r.places == (INF, Place(2), Place(5))
    assert gamma(r) == 1.0
    assert r.exponent(Place(2)) == -1
    assert RadiusProfile.parse("3:0.7").exponent(Place(3)) is None
    assert areal_height_at_infinity(RadiusProfile.single(1.0)) == 0.125
    assert lambda_height_at_infinity(RadiusProfile.single(math.e)) == -0.5
    with pytest.raises(InvalidInputError):
        RadiusProfile.parse("inf:0")
    with pytest.raises(InvalidInputError):
        RadiusProfile.parse("4:1")
    with pytest.raises(InvalidInputError):
        RadiusProfile.parse("")


def test_sqrt_e():
    assert SQRT_E == math.exp(0.5)
