"""Places of Q and per-place absolute-value profiles of algebraic numbers.

A profile at a place is the weighted multiset of ``|alpha|_w`` over the
places ``w`` of Q(alpha) above it, encoded through the full conjugate set:
each complex root carries weight ``1/n`` at infinity, and at a prime ``p`` each
Newton-polygon slope carries weight ``length/n``. Finite-place values are kept
as exact rational exponents of ``p``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Union

from .errors import InvalidInputError
from .polyalg import (
    DEFAULT_ROOT_TOL,
    IntPolynomial,
    as_polynomial,
    complex_roots,
    is_prime,
    is_squarefree,
    newton_polygon,
    prime_factors,
    rational_roots,
    squarefree_part,
)


@dataclass(frozen=True, order=True)
class Place:
    """A place of Q: ``prime == 0`` is the archimedean place."""

    prime: int = 0

    def __post_init__(self):
        if self.prime != 0 and not is_prime(self.prime):
            raise InvalidInputError(f"{self.prime!r} is not a prime")

    @property
    def is_infinite(self) -> bool:
        return self.prime == 0

    @classmethod
    def parse(cls, text) -> "Place":
        if isinstance(text, Place):
            return text
        text = str(text).strip().lower()
        if text in ("inf", "infinity", "oo", "∞"):
            return INF
        try:
            return cls(int(text))
        except ValueError:
            raise InvalidInputError(f"cannot parse place {text!r}") from None

    def __str__(self):
        return "inf" if self.is_infinite else str(self.prime)


INF = Place(0)


class Point(enum.Enum):
    """The two points of P^1 that have no minimal polynomial of degree >= 1."""

    ZERO = "0"
    INFINITY = "inf"


AlgebraicNumber = Union[IntPolynomial, Point]


def parse_algebraic(text: str) -> AlgebraicNumber:
    """``"0"``, ``"inf"``, a rational ``"p/q"``, or ascending coefficients."""
    text = text.strip()
    if text.lower() in ("inf", "infinity", "oo"):
        return Point.INFINITY
    if "," not in text:
        try:
            value = Fraction(text)
        except ValueError:
            raise InvalidInputError(f"cannot parse algebraic number {text!r}") from None
        return Point.ZERO if value == 0 else IntPolynomial.from_rational(value)
    return IntPolynomial.parse(text)


def normalize_input(alpha, force: bool = False) -> AlgebraicNumber:
    """Validate a height input.

    Polynomials must look like minimal polynomials: primitive, squarefree, and
    (for degree >= 2) free of rational roots; irreducibility is not verified
    beyond that. With ``force`` the primitive squarefree part is used instead,
    and every height becomes the degree-weighted average over its roots.
    ``c*x`` is read as the point zero.
    """
    if isinstance(alpha, Point):
        return alpha
    P = as_polynomial(alpha)
    if P.degree < 1:
        raise InvalidInputError("a constant polynomial does not define an algebraic number")
    if P.degree == 1 and P.constant == 0:
        return Point.ZERO
    if force:
        P = squarefree_part(P)
        if P.constant == 0:
            P = P.without_zero_roots()
            if P.degree == 0:
                return Point.ZERO
        return P
    if P.constant == 0:
        raise InvalidInputError(f"{P} vanishes at 0, so it is reducible (use force to average)")
    if P.content() != 1:
        raise InvalidInputError(f"{P} is not primitive, so it is not a minimal polynomial over Z")
    if not is_squarefree(P):
        raise InvalidInputError(f"{P} is not squarefree, so it is not a minimal polynomial")
    if P.degree >= 2:
        rr = rational_roots(P)
        if rr:
            raise InvalidInputError(f"{P} has the rational root {rr[0]}, so it is reducible")
    return P


@dataclass(frozen=True)
class ValueEntry:
    """One weighted absolute value. ``exponent`` is set at finite places,
    where ``value == p ** exponent`` exactly."""

    value: float
    weight: Fraction
    exponent: Fraction | None = None

    def log_value(self, place: Place) -> float:
        if self.exponent is not None:
            return float(self.exponent) * math.log(place.prime)
        if self.value == 0:
            return -math.inf
        return math.log(self.value)


@dataclass(frozen=True)
class LocalValueProfile:
    place: Place
    entries: tuple[ValueEntry, ...]

    def __post_init__(self):
        total = sum((e.weight for e in self.entries), Fraction(0))
        if total != 1:
            raise InvalidInputError(f"weights at {self.place} sum to {total}, not 1")

    @classmethod
    def trivial(cls, place: Place) -> "LocalValueProfile":
        exp = None if place.is_infinite else Fraction(0)
        return cls(place, (ValueEntry(1.0, Fraction(1), exp),))

    def weighted_sum(self, func) -> float:
        """sum of weight * func(entry) in a fixed order."""
        return math.fsum(float(e.weight) * func(e) for e in self.entries)


ProfileMap = Mapping[Place, LocalValueProfile]


def local_profiles(alpha, tol: float = DEFAULT_ROOT_TOL) -> dict[Place, LocalValueProfile]:
    """Per-place profiles of a polynomial input (no validation is done here).

    Only the archimedean place and primes dividing ``a_0 * a_n`` appear; every
    other prime has the trivial profile ``{(1, 1)}``.
    """
    if isinstance(alpha, Point):
        raise InvalidInputError("local_profiles needs a polynomial; 0 and infinity are handled by the height functions")
    P = as_polynomial(alpha)
    if P.constant == 0:
        raise InvalidInputError("local_profiles needs a_0 != 0; split off zero roots first")
    n = P.degree
    weight = Fraction(1, n)
    roots = complex_roots(P, tol)
    profiles = {INF: LocalValueProfile(INF, tuple(ValueEntry(abs(z), weight) for z in roots))}
    primes = sorted(set(prime_factors(P.constant)) | set(prime_factors(P.leading)))
    for p in primes:
        poly = newton_polygon(P, p)
        entries = tuple(
            ValueEntry(float(p) ** float(s), Fraction(m, n), Fraction(s)) for s, m in poly.slopes
        )
        profiles[Place(p)] = LocalValueProfile(Place(p), entries)
    return profiles


def profile_at(profiles: ProfileMap, place: Place) -> LocalValueProfile:
    return profiles.get(place) or LocalValueProfile.trivial(place)


def product_formula_sum(profiles: ProfileMap) -> float:
    """sum over places of sum weight * log(value); zero for a_0 != 0."""
    return math.fsum(prof.weighted_sum(lambda e, pl=pl: e.log_value(pl)) for pl, prof in profiles.items())


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------

def profiles_to_json(profiles: ProfileMap) -> dict:
    out = {}
    for place in sorted(profiles):
        prof = profiles[place]
        if place.is_infinite:
            out["inf"] = [[e.value, e.weight.numerator, e.weight.denominator] for e in prof.entries]
        else:
            out[str(place)] = [
                [e.exponent.numerator, e.exponent.denominator, e.weight.numerator, e.weight.denominator]
                for e in prof.entries
            ]
    return out


def profiles_from_json(data: dict) -> dict[Place, LocalValueProfile]:
    out = {}
    for key, rows in data.items():
        place = Place.parse(key)
        if place.is_infinite:
            entries = tuple(ValueEntry(float(v), Fraction(wn, wd)) for v, wn, wd in rows)
        else:
            entries = tuple(
                ValueEntry(float(place.prime) ** (en / ed), Fraction(wn, wd), Fraction(en, ed))
                for en, ed, wn, wd in rows
            )
        out[place] = LocalValueProfile(place, entries)
    return out
