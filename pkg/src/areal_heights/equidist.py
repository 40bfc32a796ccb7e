"""Sequence generators and distribution diagnostics.

* ``lehmer_failure_sequence``: heights of ``alpha^(1/p)`` for a rational base,
  computed from exact local data (every conjugate of ``b x^p - a`` has the
  same absolute value at each place).
* ``empirical_discrepancy``: radial Kolmogorov-Smirnov distance combined with
  a 16-sector angular balance. ``radial_wasserstein`` is a companion metric
  that stays meaningful against the point-mass radial law of a circle.
* ``arithmetic_measure_check`` and ``limiting_height_for_uniform`` for the
  archimedean-only disk measure.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, InvalidInputError, UnsupportedMeasureError
from .heights import areal_height_from_profiles, essential_minimum
from .measures import SQRT_E, ArealDisk, Circle, MeasureSpec, PointMassSet, RadiusProfile, radial_cdf
from .pairings import az_lambda
from .places import INF, LocalValueProfile, Place, ValueEntry
from .polyalg import is_prime, prime_factors, valuation

N_SECTORS = 16
SNAP_RTOL = 1e-12


@dataclass(frozen=True)
class EquidistRecord:
    index: int
    degree: int
    height: float
    gap: float
    scaled_gap: float
    discrepancy: float | None = None

    def __post_init__(self):
        if self.degree < 1:
            raise InvalidInputError("degree must be >= 1")
        if self.gap < -1e-12:
            raise InvalidInputError(f"negative gap {self.gap} below the essential minimum")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "EquidistRecord":
        disc = data.get("discrepancy")
        return cls(
            int(data["index"]),
            int(data["degree"]),
            float(data["height"]),
            float(data["gap"]),
            float(data["scaled_gap"]),
            None if disc is None else float(disc),
        )


# ---------------------------------------------------------------------------
# Lehmer-failure family
# ---------------------------------------------------------------------------

def root_profiles(base: Fraction, p: int) -> dict[Place, LocalValueProfile]:
    """Per-place profiles of the p-th roots of ``base`` (all conjugates share one value)."""
    base = Fraction(base)
    one = Fraction(1)
    profiles = {INF: LocalValueProfile(INF, (ValueEntry(abs(float(base)) ** (1.0 / p), one),))}
    for q in sorted(set(prime_factors(base.numerator)) | set(prime_factors(base.denominator))):
        # |base|_q = q^(-v_q(base))
        e = Fraction(valuation(base.denominator, q) - valuation(base.numerator, q), p)
        profiles[Place(q)] = LocalValueProfile(Place(q), (ValueEntry(float(q) ** float(e), one, e),))
    return profiles


def lehmer_gap_closed_form(p: int) -> float:
    """Gap for base 1/2 and r = {inf: 1}: ``log(2)/p + (2^(-2/p) - 1)/2``."""
    return math.log(2) / p + (2.0 ** (-2.0 / p) - 1.0) / 2.0


def lehmer_failure_sequence(
    primes: Iterable[int],
    r: RadiusProfile | None = None,
    alpha_base=Fraction(1, 2),
) -> list[EquidistRecord]:
    """Records for ``alpha_p = alpha_base^(1/p)`` with minimal polynomial ``b x^p - a``.

    Requires ``|alpha_base|_v < 1`` at every place of S. Irreducibility of
    ``b x^p - a`` is assumed, not checked.
    """
    r = r or RadiusProfile.single(1.0)
    base = Fraction(alpha_base)
    if base == 0:
        raise DomainError("alpha_base must be nonzero")
    for v in r.places:
        if v.is_infinite:
            small = abs(base) < 1
        else:
            small = valuation(base.numerator, v.prime) > valuation(base.denominator, v.prime)
        if not small:
            raise DomainError(f"|alpha_base|_{v} must be < 1 for every place in S")
    floor = essential_minimum(r)
    out = []
    for p in primes:
        if not is_prime(p):
            raise InvalidInputError(f"{p} is not prime")
        h = areal_height_from_profiles(root_profiles(base, p), r, method="closed-form").total
        gap = h - floor
        out.append(EquidistRecord(p, p, h, gap, p * gap))
    return out


# ---------------------------------------------------------------------------
# discrepancy
# ---------------------------------------------------------------------------

def _weighted(roots, weights):
    if isinstance(roots, PointMassSet):
        z = np.asarray(roots.atoms, dtype=complex)
        w = np.asarray(roots.weights, dtype=float)
    else:
        z = np.asarray(list(roots), dtype=complex)
        if z.size == 0:
            raise InvalidInputError("empty point set")
        w = np.full(z.size, 1.0 / z.size) if weights is None else np.asarray(weights, dtype=float)
    if w.shape != z.shape or np.any(w < 0) or abs(w.sum() - 1.0) > 1e-12:
        raise InvalidInputError("weights must be nonnegative, match the points, and sum to 1")
    return z, w


def _check_target(target):
    if not isinstance(target, (ArealDisk, Circle)):
        raise UnsupportedMeasureError(f"discrepancy needs an areal disk or circle target, got {target}")


def radial_ks(roots, target: MeasureSpec, weights=None) -> float:
    _check_target(target)
    z, w = _weighted(roots, weights)
    mod = np.abs(z)
    if isinstance(target, Circle):
        t = target.t
        on = np.abs(mod - t) <= SNAP_RTOL * t
        below = float(w[(mod < t) & ~on].sum())
        above = float(w[(mod > t) & ~on].sum())
        return max(below, above)
    order = np.argsort(mod, kind="stable")
    s, ws = mod[order], w[order]
    cdf_hi = np.cumsum(ws)
    cdf_lo = cdf_hi - ws
    target_cdf = np.array([radial_cdf(target, float(x)) for x in s])
    return float(max(np.max(np.abs(cdf_hi - target_cdf)), np.max(np.abs(cdf_lo - target_cdf))))


def angular_imbalance(roots, weights=None) -> float:
    """max over the sectors [k pi/8, (k+1) pi/8) of |mass - 1/16|."""
    z, w = _weighted(roots, weights)
    theta = np.mod(np.angle(z), 2 * math.pi)
    # points sitting on a sector edge go to the sector that starts there
    k = np.floor(theta * N_SECTORS / (2 * math.pi) + 1e-9).astype(int) % N_SECTORS
    mass = np.bincount(k, weights=w, minlength=N_SECTORS)
    return float(np.max(np.abs(mass - 1.0 / N_SECTORS)))


def empirical_discrepancy(roots, target: MeasureSpec, weights=None) -> float:
    """max(radial KS distance, angular sector imbalance).

    Moduli within a relative 1e-12 of a circle target count as on the circle.
    """
    _check_target(target)
    return max(radial_ks(roots, target, weights), angular_imbalance(roots, weights))


def _int_abs_const_minus_sqrt(c, R, a, b):
    """int_a^b |c - R sqrt(u)| du for 0 <= a <= b."""
    F = lambda u: c * u - (2.0 * R / 3.0) * u ** 1.5
    u_star = min(max((c / R) ** 2, a), b)
    return abs(F(u_star) - F(a)) + abs(F(b) - F(u_star))


def radial_wasserstein(roots, target: MeasureSpec, weights=None) -> float:
    """1-Wasserstein distance between the radial laws (integral of |quantile gap|)."""
    _check_target(target)
    z, w = _weighted(roots, weights)
    mod = np.abs(z)
    if isinstance(target, Circle):
        return math.fsum(w * np.abs(mod - target.t))
    order = np.argsort(mod, kind="stable")
    s, ws = mod[order], w[order]
    edges = np.concatenate([[0.0], np.minimum(np.cumsum(ws), 1.0)])
    return math.fsum(
        _int_abs_const_minus_sqrt(float(c), target.R, float(a), float(b))
        for c, a, b in zip(s, edges[:-1], edges[1:])
    )


def roots_of_unity(N: int, primitive: bool = False) -> np.ndarray:
    if N < 1:
        raise InvalidInputError("N must be >= 1")
    k = np.array([j for j in range(N) if not primitive or math.gcd(j, N) == 1])
    return np.exp(2j * math.pi * k / N)


def discrepancy_family(family: str, n: int) -> np.ndarray:
    """Point sets used by the discrepancy experiments.

    ``cyclotomic``: primitive n-th roots of unity; ``unity``: all n-th roots;
    ``lehmer``: the n roots of ``2 x^n - 1``.
    """
    if family == "cyclotomic":
        return roots_of_unity(n, primitive=True)
    if family == "unity":
        return roots_of_unity(n)
    if family == "lehmer":
        return 2.0 ** (-1.0 / n) * roots_of_unity(n)
    raise InvalidInputError(f"unknown family {family!r}; use cyclotomic, unity or lehmer")


# ---------------------------------------------------------------------------
# arithmetic threshold for the archimedean disk measure
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ArithmeticCheck:
    arithmetic: bool
    certificate: float

    def to_dict(self) -> dict:
        return asdict(self)


def arithmetic_measure_check(r: float) -> ArithmeticCheck:
    """The disk measure of radius r (S = {inf}) is arithmetic iff the minimum
    of its potential, ``f_r(0) = log r - 1/2``, is nonnegative, i.e. r >= e^(1/2)."""
    if not r > 0:
        raise InvalidInputError("r must be positive")
    certificate = 0.0 if r == SQRT_E else math.log(r) - 0.5
    return ArithmeticCheck(r >= SQRT_E, certificate)


@dataclass(frozen=True)
class UniformLimit:
    arithmetic: bool
    limit: float | None
    exceeds_essential_min: bool

    def to_dict(self) -> dict:
        return asdict(self)


def limiting_height_for_uniform(r: float) -> UniformLimit:
    """Limit of ``h_{rho_r}`` along algebraic integers equidistributing to the
    disk measure: ``-h_{rho_r}(inf) = -1/8 + log(r)/2``.

    Returns ``arithmetic=False`` and no limit when r < e^(1/2).
    """
    check = arithmetic_measure_check(r)
    if not check.arithmetic:
        return UniformLimit(False, None, False)
    limit = -0.125 + 0.5 * math.log(r)
    return UniformLimit(True, limit, limit > az_lambda(r))


def parse_int_range(text: str) -> list[int]:
    """``"5:499"`` (inclusive), ``"3,5,7"`` or a single integer."""
    text = text.strip()
    if ":" in text:
        lo, _, hi = text.partition(":")
        try:
            return list(range(int(lo), int(hi) + 1))
        except ValueError:
            raise InvalidInputError(f"bad range {text!r}") from None
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InvalidInputError(f"bad integer list {text!r}") from None


def primes_in(values: Sequence[int]) -> list[int]:
    return [p for p in values if p >= 2 and is_prime(p)]
