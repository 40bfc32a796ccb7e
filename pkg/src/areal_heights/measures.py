"""Archimedean measures on the projective line and their log potentials.

Four measure types appear: the normalised area measure on a disk of radius R,
normalised arc length on a circle of radius t, the equilibrium measure of
[-2, 2], and finite weighted point sets. Non-archimedean disk measures are only
ever used through ``f_r`` applied to exact p-adic absolute values, so they
have no object here.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Mapping, Union

import numpy as np

from .errors import InvalidInputError, UnsupportedMeasureError
from .places import INF, Place

SQRT_E = math.exp(0.5)


def f_r(R, x):
    """Potential profile of the area measure on a disk of radius ``R``.

    ``log R - 1/2 + x^2 / (2 R^2)`` for ``x <= R`` and ``log x`` beyond.
    Works elementwise on arrays.
    """
    if np.ndim(x) == 0 and np.ndim(R) == 0:
        if R <= 0:
            raise InvalidInputError("radius must be positive")
        if x < 0:
            raise InvalidInputError("f_r is defined for x >= 0")
        if x <= R:
            return math.log(R) - 0.5 + x * x / (2.0 * R * R)
        return math.log(x)
    x = np.asarray(x, dtype=float)
    R = np.asarray(R, dtype=float)
    inside = x <= R
    with np.errstate(divide="ignore"):
        outside_val = np.log(np.where(inside, 1.0, x))
    return np.where(inside, np.log(R) - 0.5 + x * x / (2.0 * R * R), outside_val)


def f_r_derivative(R, x):
    """d/dx f_r(x): ``x / R^2`` inside the disk, ``1/x`` outside."""
    return x / (R * R) if x <= R else 1.0 / x


def log_plus(x):
    return math.log(x) if x > 1 else 0.0


# ---------------------------------------------------------------------------
# measure descriptors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ArealDisk:
    R: float

    def __post_init__(self):
        if not self.R > 0:
            raise InvalidInputError("ArealDisk radius must be positive")

    def __str__(self):
        return f"areal:{self.R:g}"


@dataclass(frozen=True)
class Circle:
    t: float

    def __post_init__(self):
        if not self.t > 0:
            raise InvalidInputError("Circle radius must be positive")

    def __str__(self):
        return f"circle:{self.t:g}"


@dataclass(frozen=True)
class ChebyshevEquilibrium:
    """dx / (pi sqrt(4 - x^2)) on [-2, 2]."""

    def __str__(self):
        return "chebyshev"


@dataclass(frozen=True)
class PointMassSet:
    atoms: tuple[complex, ...]
    weights: tuple[float, ...]

    def __post_init__(self):
        if len(self.atoms) != len(self.weights) or not self.atoms:
            raise InvalidInputError("PointMassSet needs matching, nonempty atoms and weights")
        if any(w <= 0 for w in self.weights):
            raise InvalidInputError("PointMassSet weights must be positive")
        if abs(math.fsum(self.weights) - 1.0) > 1e-12:
            raise InvalidInputError("PointMassSet weights must sum to 1")

    @classmethod
    def uniform(cls, points: Iterable[complex]) -> "PointMassSet":
        pts = tuple(complex(z) for z in points)
        return cls(pts, tuple([1.0 / len(pts)] * len(pts)))

    @classmethod
    def from_csv(cls, path) -> "PointMassSet":
        atoms, weights = [], []
        with open(path, newline="") as fh:
            for row in csv.reader(fh):
                if not row or row[0].strip().startswith("#"):
                    continue
                try:
                    re_, im_, w = (float(v) for v in row[:3])
                except ValueError:
                    # header line
                    continue
                atoms.append(complex(re_, im_))
                weights.append(w)
        return cls(tuple(atoms), tuple(weights))

    def __str__(self):
        return f"points[{len(self.atoms)}]"


MeasureSpec = Union[ArealDisk, Circle, ChebyshevEquilibrium, PointMassSet]


def parse_measure(text: str) -> MeasureSpec:
    """``areal:R``, ``circle:t``, ``chebyshev`` or ``points:FILE``."""
    kind, _, arg = text.strip().partition(":")
    kind = kind.lower()
    try:
        if kind == "areal":
            return ArealDisk(float(Fraction(arg)))
        if kind == "circle":
            return Circle(float(Fraction(arg)))
    except (ValueError, ZeroDivisionError):
        raise InvalidInputError(f"bad radius in measure {text!r}") from None
    if kind == "chebyshev" and not arg:
        return ChebyshevEquilibrium()
    if kind == "points":
        if not Path(arg).is_file():
            raise InvalidInputError(f"points file {arg!r} not found")
        return PointMassSet.from_csv(arg)
    raise InvalidInputError(f"unknown measure {text!r}")


# ---------------------------------------------------------------------------
# potentials and energies
# ---------------------------------------------------------------------------

def _chebyshev_green(z):
    z = np.asarray(z, dtype=complex)
    s = np.sqrt(z * z - 4.0)
    u = np.where(np.abs(z + s) >= np.abs(z - s), z + s, z - s)
    return np.log(np.abs(u) / 2.0)


def potential(spec: MeasureSpec, z):
    """``int log|z - w| d spec(w)``; arrays are evaluated elementwise.

    At an atom of a point set the value is ``-inf``.
    """
    scalar = np.ndim(z) == 0
    z = np.asarray(z, dtype=complex)
    az = np.abs(z)
    if isinstance(spec, ArealDisk):
        out = f_r(spec.R, az) if not scalar else f_r(spec.R, float(az))
    elif isinstance(spec, Circle):
        out = np.log(np.maximum(spec.t, az))
    elif isinstance(spec, ChebyshevEquilibrium):
        out = _chebyshev_green(z)
    elif isinstance(spec, PointMassSet):
        out = np.zeros(z.shape)
        with np.errstate(divide="ignore"):
            for a, w in zip(spec.atoms, spec.weights):
                out = out + w * np.log(np.abs(z - a))
    else:
        raise UnsupportedMeasureError(f"unknown measure {spec!r}")
    return float(out) if scalar else out


def energy(spec: MeasureSpec) -> float:
    """Self-energy ``-int int log|z - w|`` (diagonal excluded)."""
    if isinstance(spec, ArealDisk):
        return 0.25 - math.log(spec.R)
    if isinstance(spec, Circle):
        return -math.log(spec.t)
    if isinstance(spec, ChebyshevEquilibrium):
        return 0.0
    raise UnsupportedMeasureError(f"self-energy of {spec} is not supported")


def radial_cdf(spec: MeasureSpec, s: float) -> float:
    """Mass of the closed disk of radius ``s`` about 0."""
    if s < 0:
        raise InvalidInputError("radial_cdf needs s >= 0")
    if isinstance(spec, ArealDisk):
        return min(1.0, s * s / (spec.R * spec.R))
    if isinstance(spec, Circle):
        return 0.0 if s < spec.t else 1.0
    raise UnsupportedMeasureError(f"radial_cdf is not available for {spec}")


# ---------------------------------------------------------------------------
# radius profiles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RadiusProfile:
    """Radii ``r_v`` on a nonempty finite set S of places of Q."""

    radii: Mapping[Place, float]

    def __post_init__(self):
        radii = {Place.parse(k): float(v) for k, v in dict(self.radii).items()}
        if not radii:
            raise InvalidInputError("a radius profile needs at least one place")
        for place, r in radii.items():
            if not (r > 0 and math.isfinite(r)):
                raise InvalidInputError(f"radius at {place} must be positive and finite, got {r}")
        object.__setattr__(self, "radii", dict(sorted(radii.items())))

    @classmethod
    def parse(cls, text: str) -> "RadiusProfile":
        """``"inf:1.0,2:0.5"``; radii may also be written ``p/q``."""
        radii = {}
        for item in text.replace(" ", "").split(","):
            if not item:
                continue
            key, sep, val = item.partition(":")
            if not sep:
                raise InvalidInputError(f"radius entry {item!r} is not place:radius")
            try:
                radii[Place.parse(key)] = float(Fraction(val))
            except (ValueError, ZeroDivisionError):
                raise InvalidInputError(f"bad radius {val!r}") from None
        return cls(radii)

    @classmethod
    def single(cls, r: float) -> "RadiusProfile":
        return cls({INF: r})

    @property
    def places(self) -> tuple[Place, ...]:
        return tuple(self.radii)

    def __contains__(self, place) -> bool:
        return place in self.radii

    def __getitem__(self, place) -> float:
        return self.radii[place]

    def scaled(self, c: float) -> "RadiusProfile":
        return RadiusProfile({v: c * r for v, r in self.radii.items()})

    def exponent(self, place: Place, max_den: int = 1000) -> Fraction | None:
        """For a finite place, the rational ``q`` with ``r_p == p**q`` when it
        exists (up to 1e-12 in log scale, denominator <= ``max_den``)."""
        if place.is_infinite:
            return None
        q = math.log(self.radii[place]) / math.log(place.prime)
        frac = Fraction(q).limit_denominator(max_den)
        return frac if abs(float(frac) - q) <= 1e-12 * max(1.0, abs(q)) else None

    def __str__(self):
        return ",".join(f"{v}:{r:.12g}" for v, r in self.radii.items())


def gamma(r: RadiusProfile) -> float:
    """Capacity ``prod r_v`` (all local degrees are 1 over Q)."""
    return math.prod(r.radii.values())


def areal_height_at_infinity(r: RadiusProfile) -> float:
    """h_rho(inf) = sum over S of (1/8 - log(r_v)/2), i.e. half the total energy."""
    return math.fsum(0.125 - 0.5 * math.log(x) for x in r.radii.values())


def lambda_height_at_infinity(t: RadiusProfile) -> float:
    return math.fsum(-0.5 * math.log(x) for x in t.radii.values())
