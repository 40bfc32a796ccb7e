import numpy as np
import pytest
from hypothesis import settings
from hypothesis import strategies as st

from areal_heights import IntPolynomial, Place, RadiusProfile

settings.register_profile("ci", max_examples=60, deadline=None)
settings.load_profile("ci")

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@st.composite
def int_polys(draw, max_degree=8, bound=30, nonzero_constant=True):
    deg = draw(st.integers(1, max_degree))
    coeffs = draw(st.lists(st.integers(-bound, bound), min_size=deg + 1, max_size=deg + 1))
    if coeffs[-1] == 0:
        coeffs[-1] = draw(st.sampled_from([-3, -1, 1, 2]))
    if nonzero_constant and coeffs[0] == 0:
        coeffs[0] = draw(st.sampled_from([-2, -1, 1, 5]))
    return IntPolynomial(tuple(coeffs))


@st.composite
def radius_profiles(draw, primes=(2, 3, 5)):
    radii = {Place(0): draw(st.floats(0.2, 4.0))}
    for p in primes:
        if draw(st.booleans()):
            radii[Place(p)] = draw(st.floats(0.2, 4.0))
    return RadiusProfile(radii)
