"""Mutual energies and Arakelov-Zhang pairings.

Closed forms for AZ(rho_r, lambda_t) and for the Chebyshev pairing, with
independent quadrature routes, the value L(2, chi) for the nontrivial
character mod 3, and a one-dimensional radius optimiser.

All quadratures use midpoint nodes in ascending order and ``math.fsum``, so a
fixed node count gives bit-identical results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DiagonalDivergenceError, InvalidInputError, NoMinimumError, NumericalError
from .measures import (
    ArealDisk,
    ChebyshevEquilibrium,
    Circle,
    MeasureSpec,
    PointMassSet,
    RadiusProfile,
    areal_height_at_infinity,
    energy,
    f_r,
    gamma,
    log_plus,
    potential,
)
from .places import INF, Place

DEFAULT_NODES = 2**16
MAX_NODES = 2**22
CHEBYSHEV_DOUBLING_TOL = 1e-9
CLOSED_FORM_AGREEMENT = 1e-7


@dataclass(frozen=True)
class PairingResult:
    value: float
    method: str  # "closed-form" | "quadrature" | "hybrid"
    error_estimate: float = 0.0
    nodes: int | None = None
    breakdown: tuple[tuple[Place, float], ...] = ()

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "method": self.method,
            "nodes": self.nodes,
            "error_estimate": self.error_estimate,
            "breakdown": [[str(p), c] for p, c in self.breakdown],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "PairingResult":
        return cls(
            value=float(data["value"]),
            method=data["method"],
            error_estimate=float(data["error_estimate"]),
            nodes=data.get("nodes"),
            breakdown=tuple((Place.parse(p), float(c)) for p, c in data.get("breakdown", [])),
        )


# ---------------------------------------------------------------------------
# quadrature
# ---------------------------------------------------------------------------

def _midpoints(n):
    return (np.arange(n) + 0.5) / n


def _mean(values) -> float:
    return math.fsum(values) / len(values)


def _integrate(spec: MeasureSpec, g, nodes: int) -> float:
    """Midpoint rule for ``int g d spec`` with ``nodes`` points.

    Disk: ``u = |z|^2 / R^2`` is uniform on [0, 1] and only radial ``g`` is
    allowed. Circle: uniform angle. Chebyshev: ``x = 2 cos(theta)`` with
    theta uniform on [0, pi], which removes the endpoint singularity.
    """
    u = _midpoints(nodes)
    if isinstance(spec, ArealDisk):
        z = spec.R * np.sqrt(u)
    elif isinstance(spec, Circle):
        z = spec.t * np.exp(2j * np.pi * u)
    elif isinstance(spec, ChebyshevEquilibrium):
        z = 2.0 * np.cos(np.pi * u)
    else:
        raise InvalidInputError(f"cannot integrate against {spec}")
    return _mean(np.asarray(g(z), dtype=float))


def _radial(spec) -> bool:
    return isinstance(spec, (ArealDisk, Circle))


def _atom_pairing(a: MeasureSpec, pts: PointMassSet) -> float:
    vals = []
    for atom, w in zip(pts.atoms, pts.weights):
        pot = potential(a, atom)
        if not math.isfinite(pot):
            raise DiagonalDivergenceError(f"atom {atom} of {pts} lies on an atom of {a}")
        vals.append(w * pot)
    return -math.fsum(vals)


def _quadrature_once(a, b, nodes):
    if isinstance(b, ArealDisk) and not _radial(a):
        # disk integration needs a radial integrand; use symmetry of the pairing
        a, b = b, a
    return -_integrate(b, lambda z: potential(a, z), nodes)


def mutual_energy_quadrature(a: MeasureSpec, b: MeasureSpec, nodes: int = DEFAULT_NODES) -> PairingResult:
    """``(a, b) = -int int log|z - w| da(w) db(z)`` as ``-int p_a db``.

    The error estimate is the Richardson difference against ``nodes/2``.
    Point sets are summed exactly; two point sets sharing an atom (or a point
    set paired with itself) raise :class:`DiagonalDivergenceError`.
    """
    if nodes < 16:
        raise InvalidInputError("quadrature needs at least 16 nodes")
    if isinstance(a, PointMassSet) or isinstance(b, PointMassSet):
        if a == b:
            raise DiagonalDivergenceError("self-pairing of a point set is not defined")
        if isinstance(b, PointMassSet):
            value = _atom_pairing(a, b)
        else:
            value = _atom_pairing(b, a)
        return PairingResult(value, "closed-form", 0.0, None)
    fine = _quadrature_once(a, b, nodes)
    coarse = _quadrature_once(a, b, nodes // 2)
    return PairingResult(fine, "quadrature", abs(fine - coarse) / 3.0, nodes)


# ---------------------------------------------------------------------------
# AZ(rho_r, lambda_t)
# ---------------------------------------------------------------------------

def _check_unit_capacity(t: RadiusProfile):
    if abs(gamma(t) - 1.0) > 1e-12:
        raise InvalidInputError(f"gamma(t) = {gamma(t)!r}; the closed form needs gamma(t) = 1")


def az_closed_form(r: RadiusProfile, t: RadiusProfile) -> PairingResult:
    """AZ(rho_r, lambda_t) for gamma(t) = 1.

    ``h_rho_r(inf) + sum_S f_{r_v}(t_v) + sum_{S' - S} log+ t_v``. Places of
    ``r`` absent from ``t`` use ``t_v = 1``. The breakdown lists the local
    halves ``(rho - lambda, rho - lambda)_v / 2``.
    """
    _check_unit_capacity(t)
    places = sorted(set(r.places) | set(t.places))
    parts = []
    for v in places:
        tv = t.radii.get(v, 1.0)
        if v in r:
            rv = r[v]
            local = 0.125 - 0.5 * math.log(rv) + f_r(rv, tv) - 0.5 * math.log(tv)
        else:
            local = log_plus(tv) - 0.5 * math.log(tv)
        parts.append((v, local))
    value = areal_height_at_infinity(r) + math.fsum(
        f_r(r[v], t.radii.get(v, 1.0)) for v in r.places
    ) + math.fsum(log_plus(t[v]) for v in t.places if v not in r)
    return PairingResult(value, "closed-form", 0.0, None, tuple(parts))


def az_by_energies(r: RadiusProfile, t: RadiusProfile, nodes: int = DEFAULT_NODES) -> PairingResult:
    """AZ(rho_r, lambda_t) assembled from local energies ``(mu - nu, mu - nu)_v / 2``.

    The archimedean energies come from :func:`mutual_energy_quadrature`;
    finite places use the closed-form energies ``1/4 - log R`` and ``-log t``
    and the cross term ``-f_R(t)``. Valid for any ``gamma(t)``.
    """
    places = sorted(set(r.places) | set(t.places) | {INF})
    parts = []
    err = 0.0
    for v in places:
        rv, tv = r.radii.get(v), t.radii.get(v, 1.0)
        if v.is_infinite:
            rho = ArealDisk(rv) if rv is not None else Circle(1.0)
            lam = Circle(tv)
            e_rr = mutual_energy_quadrature(rho, rho, nodes)
            e_rl = mutual_energy_quadrature(lam, rho, nodes)
            e_ll = mutual_energy_quadrature(lam, lam, nodes)
            local = 0.5 * (e_rr.value - 2 * e_rl.value + e_ll.value)
            err += e_rr.error_estimate + 2 * e_rl.error_estimate + e_ll.error_estimate
        elif rv is not None:
            local = 0.5 * ((0.25 - math.log(rv)) + 2 * f_r(rv, tv) - math.log(tv))
        else:
            local = 0.5 * (2 * log_plus(tv) - math.log(tv))
        parts.append((v, local))
    return PairingResult(math.fsum(c for _, c in parts), "hybrid", err, nodes, tuple(parts))


def az_lambda(r: float) -> float:
    """AZ(rho_r, lambda) with S = {inf}."""
    return az_closed_form(RadiusProfile.single(r), RadiusProfile.single(1.0)).value


def az_lambda_derivative(r: float) -> float:
    return -0.5 / r if r <= 1 else 0.5 / r - 1.0 / r**3


# ---------------------------------------------------------------------------
# L(2, chi_3)
# ---------------------------------------------------------------------------

def dirichlet_L2_chi3(terms: int = 10**6) -> float:
    """L(2, chi) for the nontrivial character mod 3.

    Pairs ``1/(3k+1)^2 - 1/(3k+2)^2`` over ``k < K = terms // 3`` and adds the
    Euler-Maclaurin tail (integral, half endpoint and first derivative term);
    the neglected remainder is below 1e-20 for the default ``terms``.
    """
    K = max(terms // 3, 1000)
    k = np.arange(K, dtype=float)
    paired = 1.0 / (3 * k + 1) ** 2 - 1.0 / (3 * k + 2) ** 2
    head = math.fsum(paired)

    def f(x):
        return 1.0 / (3 * x + 1) ** 2 - 1.0 / (3 * x + 2) ** 2

    def fprime(x):
        return -6.0 / (3 * x + 1) ** 3 + 6.0 / (3 * x + 2) ** 3

    integral = 1.0 / (3 * (3 * K + 1)) - 1.0 / (3 * (3 * K + 2))
    tail = integral + 0.5 * f(K) - fprime(K) / 12.0
    return head + tail


def az_chebyshev_r1_closed_form(terms: int = 10**6) -> float:
    """7/24 - sqrt(3)/(2 pi) + 3 sqrt(3)/(4 pi) L(2, chi)."""
    s3 = math.sqrt(3.0)
    return 7.0 / 24.0 - s3 / (2 * math.pi) + 3 * s3 / (4 * math.pi) * dirichlet_L2_chi3(terms)


# ---------------------------------------------------------------------------
# AZ(rho_r, mu_Chebyshev)
# ---------------------------------------------------------------------------

def _chebyshev_mean_fr(r: float, nodes: int) -> float:
    theta = np.pi * _midpoints(nodes)
    return _mean(f_r(r, np.abs(2.0 * np.cos(theta))))


def az_chebyshev(r: float, nodes: int = DEFAULT_NODES, terms: int = 10**6) -> PairingResult:
    """AZ(rho_r, mu) for the adelic measure of T(x) = x^2 - 2.

    ``(1/8 - log(r)/2) + (1/pi) int_0^pi f_r(|2 cos theta|) d theta`` with the
    node count doubled until two successive values agree within 1e-9. At
    ``r = 1`` the closed form in L(2, chi) is returned after checking the
    quadrature against it.
    """
    if not r > 0:
        raise InvalidInputError("radius must be positive")
    if nodes < 16:
        raise InvalidInputError("quadrature needs at least 16 nodes")
    h_inf = 0.125 - 0.5 * math.log(r)
    prev = _chebyshev_mean_fr(r, nodes)
    n = nodes
    while True:
        cur = _chebyshev_mean_fr(r, 2 * n)
        n *= 2
        if abs(cur - prev) < CHEBYSHEV_DOUBLING_TOL:
            break
        if n >= MAX_NODES:
            raise NumericalError(f"Chebyshev quadrature did not settle by {n} nodes", abs(cur - prev))
        prev = cur
    quad = h_inf + cur
    err = abs(cur - prev) / 3.0
    if r == 1.0:
        closed = az_chebyshev_r1_closed_form(terms)
        if abs(closed - quad) > CLOSED_FORM_AGREEMENT:
            raise NumericalError(f"quadrature {quad!r} disagrees with closed form {closed!r}", abs(closed - quad))
        return PairingResult(closed, "closed-form", abs(closed - quad), n, ((INF, closed),))
    return PairingResult(quad, "quadrature", err, n, ((INF, quad),))


def az_chebyshev_large_r(r: float) -> float:
    """Exact value for r >= 2, where [-2, 2] lies inside the disk:
    ``log(r)/2 - 3/8 + 1/r^2``."""
    if r < 2:
        raise InvalidInputError("the polynomial closed form needs r >= 2")
    return 0.5 * math.log(r) - 0.375 + 1.0 / r**2


def az_chebyshev_derivative(r: float) -> float:
    """d/dr AZ(rho_r, mu) from differentiating under the integral."""
    if not r > 0:
        raise InvalidInputError("radius must be positive")
    if r > 2:
        return (r * r - 4) / (2 * r**3)
    a = math.asin(r / 2)
    return (
        -0.5 / r
        + 2 * a / (math.pi * r)
        + math.sqrt(4 - r * r) / (math.pi * r * r)
        - 4 * a / (math.pi * r**3)
    )


def az_pairing(a: MeasureSpec, b: MeasureSpec, nodes: int = DEFAULT_NODES) -> PairingResult:
    """Archimedean-only pairing ``(a - b, a - b) / 2``.

    Uses the closed forms where they exist (disk against the unit circle,
    disk against the Chebyshev measure) and otherwise closed-form self
    energies with a quadrature cross term.
    """
    if isinstance(b, ArealDisk) and not isinstance(a, ArealDisk):
        a, b = b, a
    if isinstance(a, ArealDisk):
        if isinstance(b, ChebyshevEquilibrium):
            return az_chebyshev(a.R, nodes)
        if isinstance(b, Circle) and b.t == 1.0:
            return az_closed_form(RadiusProfile.single(a.R), RadiusProfile.single(1.0))
    if a == b:
        return PairingResult(0.0, "closed-form")
    cross = mutual_energy_quadrature(a, b, nodes)
    value = 0.5 * (energy(a) + energy(b)) - cross.value
    return PairingResult(value, "quadrature", cross.error_estimate, nodes, ((INF, value),))


# ---------------------------------------------------------------------------
# radius optimisation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RadiusOptimum:
    r_star: float
    value: float
    at_boundary: bool
    target: str

    def to_dict(self) -> dict:
        return {"r_star": self.r_star, "value": self.value, "at_boundary": self.at_boundary, "target": self.target}

    @classmethod
    def from_dict(cls, data: dict) -> "RadiusOptimum":
        return cls(float(data["r_star"]), float(data["value"]), bool(data["at_boundary"]), data["target"])


_INV_PHI = (math.sqrt(5) - 1) / 2


def _golden_section(func, lo, hi, width):
    a, b = lo, hi
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = func(c), func(d)
    while b - a > width:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = func(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = func(d)
    return a, b


def _objective(target: MeasureSpec):
    if isinstance(target, Circle):
        if target.t != 1.0:
            raise InvalidInputError("only circle:1 (the standard measure) is a supported target")
        return az_lambda, az_lambda_derivative, az_lambda
    if isinstance(target, ChebyshevEquilibrium):
        return (
            lambda r: 0.125 - 0.5 * math.log(r) + _chebyshev_mean_fr(r, 2**12),
            az_chebyshev_derivative,
            lambda r: az_chebyshev(r).value,
        )
    raise InvalidInputError(f"unsupported optimisation target {target}")


def optimize_radius(target: MeasureSpec, interval=(0.1, 10.0), tol: float = 1e-8) -> RadiusOptimum:
    """Minimise ``r -> AZ(rho_r, target)`` over ``interval``.

    Golden-section search on values narrows the bracket, then bisection on
    the analytic derivative pins the minimiser to ``tol``. A minimum at an end
    of the interval is reported with ``at_boundary=True``.
    """
    lo, hi = (float(x) for x in interval)
    if not (0 < lo < hi and math.isfinite(hi)):
        raise NoMinimumError(f"interval ({lo}, {hi}) cannot bracket a minimum; need 0 < lo < hi")
    if not tol > 0:
        raise InvalidInputError("tol must be positive")
    func, deriv, exact = _objective(target)
    if deriv(lo) >= 0:
        return RadiusOptimum(lo, exact(lo), True, str(target))
    if deriv(hi) <= 0:
        return RadiusOptimum(hi, exact(hi), True, str(target))
    a, b = _golden_section(func, lo, hi, 1e-3 * (hi - lo))
    # the coarse bracket may miss the sign change when the objective is flat
    while not (deriv(a) < 0 < deriv(b)) and deriv(a) != 0 and deriv(b) != 0:
        w = b - a
        a, b = max(lo, a - w), min(hi, b + w)
    if deriv(a) == 0:
        b = a
    elif deriv(b) == 0:
        a = b
    while b - a > 0.01 * tol:
        mid = 0.5 * (a + b)
        dm = deriv(mid)
        if dm == 0:
            a = b = mid
        elif dm < 0:
            a = mid
        else:
            b = mid
    r_star = 0.5 * (a + b)
    return RadiusOptimum(r_star, exact(r_star), False, str(target))
