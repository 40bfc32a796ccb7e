"""Areal Weil heights, Mahler measures and Arakelov-Zhang pairings over Q."""

from .equidist import (
    EquidistRecord,
    arithmetic_measure_check,
    empirical_discrepancy,
    lehmer_failure_sequence,
    limiting_height_for_uniform,
    radial_wasserstein,
)
from .errors import (
    ArealHeightsError,
    DiagonalDivergenceError,
    DomainError,
    InvalidInputError,
    NoMinimumError,
    NumericalError,
    UnsupportedMeasureError,
)
from .heights import (
    HeightReport,
    KroneckerVerdict,
    areal_height,
    areal_mahler_measure,
    comparison_bounds,
    essential_minimum,
    kronecker_classify,
    lambda_height,
    mahler_measure,
    weil_height,
)
from .measures import (
    ArealDisk,
    ChebyshevEquilibrium,
    Circle,
    PointMassSet,
    RadiusProfile,
    areal_height_at_infinity,
    f_r,
    gamma,
    parse_measure,
)
from .pairings import (
    PairingResult,
    RadiusOptimum,
    az_chebyshev,
    az_chebyshev_derivative,
    az_closed_form,
    az_pairing,
    dirichlet_L2_chi3,
    mutual_energy_quadrature,
    optimize_radius,
)
from .places import INF, Place, Point, local_profiles, parse_algebraic
from .polyalg import IntPolynomial, complex_roots, cyclotomic, newton_polygon

__version__ = "0.1.0"
