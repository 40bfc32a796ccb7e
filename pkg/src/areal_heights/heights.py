"""Weil, Mahler, areal and circle-family heights over Q.

Every height is assembled place by place from :func:`places.local_profiles`:
a constant ``h(inf)`` plus ``sum_w n_w phi_w(|alpha|_w)`` where ``phi_w`` is
``f_{r_v}`` on the radius set S and ``log+`` elsewhere (``log max{t_v, .}`` on
S for the circle family).

Polynomial inputs are validated by :func:`places.normalize_input`; pass
``force=True`` to accept reducible polynomials, in which case each height is
the degree-weighted average over the irreducible factors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType
from typing import NamedTuple

from .errors import DomainError
from .measures import (
    RadiusProfile,
    areal_height_at_infinity,
    f_r,
    gamma,
    lambda_height_at_infinity,
)
from .pairings import az_closed_form
from .places import (
    INF,
    LocalValueProfile,
    Place,
    Point,
    ValueEntry,
    local_profiles,
    normalize_input,
    profile_at,
)
from .polyalg import DEFAULT_ROOT_TOL, as_polynomial, complex_roots, squarefree_decomposition

ARCHIMEDEAN_ATOL = 1e-10
GAMMA_ONE_RTOL = 1e-12


@dataclass(frozen=True)
class HeightReport:
    total: float
    infinity_constant: float
    per_place: tuple[tuple[Place, float], ...]
    method: str

    def to_dict(self) -> dict:
        return {
            "total": self.total,
            "h_infinity": self.infinity_constant,
            "per_place": [[str(p), c] for p, c in self.per_place],
            "method": self.method,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "HeightReport":
        return cls(
            total=float(data["total"]),
            infinity_constant=float(data["h_infinity"]),
            per_place=tuple((Place.parse(p), float(c)) for p, c in data["per_place"]),
            method=data["method"],
        )


@lru_cache(maxsize=4096)
def _cached_profiles(P, tol):
    return MappingProxyType(local_profiles(P, tol))


def _log_value(entry: ValueEntry, place: Place) -> float:
    return entry.log_value(place)


def _local_f(r: float, entry: ValueEntry, place: Place) -> float:
    """f_r(|alpha|_w), evaluated in log scale at finite places."""
    if entry.exponent is None:
        return f_r(r, entry.value)
    log_x = _log_value(entry, place)
    if log_x <= math.log(r):
        return math.log(r) - 0.5 + math.exp(2 * log_x) / (2 * r * r)
    return log_x


def _local_log_plus(entry: ValueEntry, place: Place) -> float:
    if entry.value == 0:
        return 0.0
    return max(0.0, _log_value(entry, place))


def _local_log_max(t: float, entry: ValueEntry, place: Place) -> float:
    if entry.value == 0:
        return math.log(t)
    return max(math.log(t), _log_value(entry, place))


def _assemble(profiles, s_places, on_s, off_s):
    places = sorted(set(profiles) | set(s_places))
    parts = []
    for v in places:
        prof = profile_at(profiles, v)
        if v in s_places:
            contrib = prof.weighted_sum(lambda e, v=v: on_s(v, e))
        else:
            contrib = prof.weighted_sum(lambda e, v=v: off_s(v, e))
        parts.append((v, contrib))
    return parts


def _report(h_inf, parts, method):
    total = h_inf + math.fsum(c for _, c in parts)
    return HeightReport(total, h_inf, tuple(parts), method)


# ---------------------------------------------------------------------------
# polynomial-level measures
# ---------------------------------------------------------------------------

def _roots_with_multiplicity(P, tol):
    P = as_polynomial(P)
    out = []
    k = P.zero_root_order()
    if k:
        out.append((0j, k))
    Q = P.without_zero_roots()
    if Q.degree >= 1:
        for factor, mult in squarefree_decomposition(Q):
            out.extend((z, mult) for z in complex_roots(factor, tol))
    return out


def mahler_measure(P, tol: float = DEFAULT_ROOT_TOL) -> float:
    """m(P) = log|a_n| + sum log+|root| (roots with multiplicity)."""
    P = as_polynomial(P)
    terms = [math.log(abs(P.leading))]
    terms += [m * math.log(abs(z)) for z, m in _roots_with_multiplicity(P, tol) if abs(z) > 1]
    return math.fsum(terms)


def areal_mahler_measure(P, tol: float = DEFAULT_ROOT_TOL) -> float:
    """m_D(P) = m(P) + sum over roots inside the unit disk of (|root|^2 - 1)/2."""
    P = as_polynomial(P)
    terms = [math.log(abs(P.leading))]
    for z, m in _roots_with_multiplicity(P, tol):
        a = abs(z)
        terms.append(m * (math.log(a) if a > 1 else 0.0))
        if a < 1:
            terms.append(m * (a * a - 1) / 2)
    return math.fsum(terms)


# ---------------------------------------------------------------------------
# heights
# ---------------------------------------------------------------------------

def weil_height(alpha, force: bool = False, tol: float = DEFAULT_ROOT_TOL) -> HeightReport:
    """Absolute logarithmic Weil height ``sum_w n_w log+|alpha|_w``; h(0) = h(inf) = 0."""
    alpha = normalize_input(alpha, force)
    if isinstance(alpha, Point):
        return HeightReport(0.0, 0.0, (), "convention")
    profiles = _cached_profiles(alpha, tol)
    parts = _assemble(profiles, (), None, lambda v, e: _local_log_plus(e, v))
    return _report(0.0, parts, "local-profiles")


def areal_height(alpha, r: RadiusProfile, force: bool = False, tol: float = DEFAULT_ROOT_TOL) -> HeightReport:
    """Areal Weil height h_{rho_r}."""
    alpha = normalize_input(alpha, force)
    h_inf = areal_height_at_infinity(r)
    if alpha is Point.INFINITY:
        return HeightReport(h_inf, h_inf, (), "closed-form")
    if alpha is Point.ZERO:
        parts = [(v, math.log(rv) - 0.5) for v, rv in r.radii.items()]
        return _report(h_inf, parts, "closed-form")
    return areal_height_from_profiles(_cached_profiles(alpha, tol), r)


def areal_height_from_profiles(profiles, r: RadiusProfile, method: str = "local-profiles") -> HeightReport:
    """Areal height from precomputed per-place profiles (no root solving)."""
    parts = _assemble(
        profiles,
        r.places,
        lambda v, e: _local_f(r[v], e, v),
        lambda v, e: _local_log_plus(e, v),
    )
    return _report(areal_height_at_infinity(r), parts, method)


def lambda_height(alpha, t: RadiusProfile, force: bool = False, tol: float = DEFAULT_ROOT_TOL) -> HeightReport:
    """Height for the circle-family measure lambda_t.

    ``log+`` is summed only over places off S; S-places use
    ``log max{t_v, |alpha|_w}``.
    """
    alpha = normalize_input(alpha, force)
    h_inf = lambda_height_at_infinity(t)
    if alpha is Point.INFINITY:
        return HeightReport(h_inf, h_inf, (), "closed-form")
    if alpha is Point.ZERO:
        parts = [(v, math.log(tv)) for v, tv in t.radii.items()]
        return _report(h_inf, parts, "closed-form")
    profiles = _cached_profiles(alpha, tol)
    parts = _assemble(
        profiles,
        t.places,
        lambda v, e: _local_log_max(t[v], e, v),
        lambda v, e: _local_log_plus(e, v),
    )
    return _report(h_inf, parts, "local-profiles")


def _gamma_is_one(r: RadiusProfile) -> bool:
    return abs(gamma(r) - 1.0) <= GAMMA_ONE_RTOL


def unit_capacity_scaling(r: RadiusProfile) -> tuple[float, RadiusProfile]:
    """``c = gamma(r)^(-1/|S|)`` and ``t = c r`` with gamma(t) = 1."""
    c = gamma(r) ** (-1.0 / len(r.places))
    return c, r.scaled(c)


def essential_minimum(r: RadiusProfile) -> float:
    """L(rho_r): h_rho_r(inf) when gamma(r) <= 1, else AZ(rho_r, lambda_{c r})."""
    if gamma(r) <= 1.0 or _gamma_is_one(r):
        return areal_height_at_infinity(r)
    _, t = unit_capacity_scaling(r)
    return az_closed_form(r, t).value


# ---------------------------------------------------------------------------
# Kronecker classification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CertificateRow:
    place: Place
    value: float
    relation: str  # ">=" or "=="
    bound: float
    satisfied: bool
    weight: float = 1.0  # share of the conjugates with this absolute value

    def to_dict(self) -> dict:
        return {
            "place": str(self.place),
            "weight": self.weight,
            "value": self.value,
            "relation": self.relation,
            "bound": self.bound,
            "satisfied": self.satisfied,
        }


@dataclass(frozen=True)
class KroneckerVerdict:
    attains_minimum: bool
    certificate: tuple[CertificateRow, ...]
    essential_minimum: float
    reference_radii: RadiusProfile

    def to_dict(self) -> dict:
        return {
            "attains_minimum": self.attains_minimum,
            "essential_minimum": self.essential_minimum,
            "reference_radii": str(self.reference_radii),
            "certificate": [row.to_dict() for row in self.certificate],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "KroneckerVerdict":
        rows = tuple(
            CertificateRow(Place.parse(d["place"]), float(d["value"]), d["relation"], float(d["bound"]), bool(d["satisfied"]),
                           float(d.get("weight", 1.0)))
            for d in data["certificate"]
        )
        return cls(bool(data["attains_minimum"]), rows, float(data["essential_minimum"]), RadiusProfile.parse(data["reference_radii"]))


def _compare(place: Place, entry: ValueEntry, radius: float, radius_exp, relation: str) -> bool:
    if place.is_infinite:
        if relation == "==":
            return abs(entry.value - radius) <= ARCHIMEDEAN_ATOL
        return entry.value >= radius - ARCHIMEDEAN_ATOL
    if radius_exp is not None:
        if relation == "==":
            return entry.exponent == radius_exp
        return entry.exponent >= radius_exp
    # radius is not a rational power of p, so equality is impossible
    if relation == "==":
        return False
    return float(entry.exponent) * math.log(place.prime) > math.log(radius)


def kronecker_classify(alpha, r: RadiusProfile, force: bool = False, tol: float = DEFAULT_ROOT_TOL) -> KroneckerVerdict:
    """Decide whether h_{rho_r}(alpha) equals the essential minimum.

    For gamma(r) <= 1 the rows test ``|alpha|_w >= r_w`` on S and
    ``|alpha|_w >= 1`` off S (equalities when gamma(r) = 1). For gamma(r) > 1
    the same test is run against ``t = c r`` with gamma(t) = 1.
    Finite places compare exact exponents; the archimedean place uses an
    absolute tolerance of 1e-10.
    """
    alpha = normalize_input(alpha, force)
    if isinstance(alpha, Point):
        raise DomainError("Kronecker classification is defined for nonzero algebraic numbers")
    ref = r if not (gamma(r) > 1.0 and not _gamma_is_one(r)) else unit_capacity_scaling(r)[1]
    relation = "==" if _gamma_is_one(ref) else ">="
    profiles = _cached_profiles(alpha, tol)
    rows = []
    for v in sorted(set(profiles) | set(ref.places)):
        radius = ref[v] if v in ref else 1.0
        radius_exp = None
        if not v.is_infinite:
            radius_exp = ref.exponent(v) if v in ref else Fraction(0)
        for entry in profile_at(profiles, v).entries:
            ok = _compare(v, entry, radius, radius_exp, relation)
            rows.append(CertificateRow(v, entry.value, relation, radius, ok, float(entry.weight)))
    return KroneckerVerdict(all(row.satisfied for row in rows), tuple(rows), essential_minimum(r), ref)


# ---------------------------------------------------------------------------
# comparison with the Weil height
# ---------------------------------------------------------------------------

class ComparisonBounds(NamedTuple):
    lower: float
    upper: float
    value: float


def comparison_bounds(alpha, r: RadiusProfile, force: bool = False, tol: float = DEFAULT_ROOT_TOL) -> ComparisonBounds:
    """``h + h_rho(inf) + sum min{0, f_r(0)} <= h_rho <= h + h_rho(1)``."""
    h = weil_height(alpha, force, tol).total
    h_inf = areal_height_at_infinity(r)
    lower = h + h_inf + math.fsum(min(0.0, f_r(rv, 0.0)) for rv in r.radii.values())
    upper = h + h_inf + math.fsum(f_r(rv, 1.0) for rv in r.radii.values())
    value = areal_height(alpha, r, force, tol).total
    return ComparisonBounds(lower, upper, value)
