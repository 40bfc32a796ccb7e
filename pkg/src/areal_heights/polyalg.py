"""Exact integer polynomials, complex roots and p-adic Newton polygons.

Coefficients are stored in ascending order (``coeffs[i]`` multiplies ``x**i``)
as Python ints, so there is no overflow at any size. Everything numerical
(the root solver) works on a float copy normalised by the largest coefficient.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np
import sympy

from .errors import InvalidInputError, NumericalError

DEFAULT_ROOT_TOL = 1e-13
MAX_ROOT_ITERATIONS = 500
_EPS = np.finfo(float).eps


# ---------------------------------------------------------------------------
# coefficient-list helpers (ascending lists of int or Fraction)
# ---------------------------------------------------------------------------

def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _derivative(coeffs):
    return [i * c for i, c in enumerate(coeffs)][1:]


def _sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim(x - y for x, y in zip(a, b))


def _mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _divmod_q(a, b):
    """Long division over the rationals. ``b`` must be nonzero."""
    a = [Fraction(c) for c in _trim(a)]
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    lead = Fraction(b[-1])
    if len(a) < len(b):
        return [], a
    quot = [Fraction(0)] * (len(a) - len(b) + 1)
    for shift in range(len(a) - len(b), -1, -1):
        coef = a[shift + len(b) - 1] / lead
        quot[shift] = coef
        if coef:
            for j, bj in enumerate(b):
                a[shift + j] -= coef * bj
    return _trim(quot), _trim(a[: len(b) - 1])


def _content(coeffs):
    g = 0
    for c in coeffs:
        g = math.gcd(g, int(c))
    return g


def _primitive(coeffs):
    """Primitive integer polynomial proportional to ``coeffs`` (ints or
    Fractions), normalised to a positive leading coefficient."""
    coeffs = _trim(coeffs)
    if not coeffs:
        return []
    den = 1
    for c in coeffs:
        if isinstance(c, Fraction):
            den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    g = _content(ints)
    if ints[-1] < 0:
        g = -g
    return [c // g for c in ints]


def _pseudo_rem(a, b):
    """Pseudo-remainder of integer polynomials: lc(b)^k a mod b, kept in Z."""
    a = list(a)
    db = len(b) - 1
    lead = b[-1]
    while len(a) - 1 >= db and a:
        coef = a[-1]
        shift = len(a) - 1 - db
        a = [lead * c for c in a]
        for j, bj in enumerate(b):
            a[shift + j] -= coef * bj
        a = _trim(a)
    return a


def _gcd_primitive(a, b):
    """Primitive gcd of two integer polynomials (primitive PRS)."""
    a, b = _primitive(a), _primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _pseudo_rem(a, b)
        a, b = b, _primitive(r)
    return a


# ---------------------------------------------------------------------------
# IntPolynomial
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntPolynomial:
    """Nonzero polynomial with exact integer coefficients, ascending order."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        coeffs = []
        for c in self.coeffs:
            if isinstance(c, bool) or int(c) != c:
                raise InvalidInputError(f"coefficient {c!r} is not an integer")
            coeffs.append(int(c))
        coeffs = _trim(coeffs)
        if not coeffs:
            raise InvalidInputError("the zero polynomial is not allowed")
        object.__setattr__(self, "coeffs", tuple(coeffs))

    @classmethod
    def parse(cls, text: str) -> "IntPolynomial":
        """Parse ``"-1,-1,1"`` (ascending coefficients) into x^2 - x - 1."""
        try:
            coeffs = [int(tok) for tok in text.replace(" ", "").split(",") if tok != ""]
        except ValueError as exc:
            raise InvalidInputError(f"cannot parse polynomial {text!r}: {exc}") from None
        return cls(tuple(coeffs))

    @classmethod
    def from_rational(cls, value) -> "IntPolynomial":
        """Minimal polynomial ``q x - p`` of the nonzero rational ``p/q``."""
        value = Fraction(value)
        if value == 0:
            raise InvalidInputError("zero has no minimal polynomial of this form")
        return cls((-value.numerator, value.denominator))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1]

    @property
    def constant(self) -> int:
        return self.coeffs[0]

    def content(self) -> int:
        return _content(self.coeffs)

    def primitive_part(self) -> "IntPolynomial":
        return IntPolynomial(tuple(_primitive(self.coeffs)))

    def derivative(self) -> "IntPolynomial":
        if self.degree == 0:
            raise InvalidInputError("derivative of a constant is zero")
        return IntPolynomial(tuple(_derivative(self.coeffs)))

    def zero_root_order(self) -> int:
        """Multiplicity of 0 as a root."""
        k = 0
        while self.coeffs[k] == 0:
            k += 1
        return k

    def without_zero_roots(self) -> "IntPolynomial":
        return IntPolynomial(self.coeffs[self.zero_root_order():])

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        return IntPolynomial(tuple(_mul(self.coeffs, other.coeffs)))

    def __floordiv__(self, other: "IntPolynomial") -> "IntPolynomial":
        """Exact division; raises if ``other`` does not divide ``self`` in Z[x]."""
        quot, rem = _divmod_q(self.coeffs, other.coeffs)
        if rem or any(q.denominator != 1 for q in quot):
            raise InvalidInputError("polynomial division is not exact over Z")
        return IntPolynomial(tuple(int(q) for q in quot))

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.coeffs)


def as_polynomial(obj) -> IntPolynomial:
    if isinstance(obj, IntPolynomial):
        return obj
    if isinstance(obj, str):
        return IntPolynomial.parse(obj)
    return IntPolynomial(tuple(obj))


# ---------------------------------------------------------------------------
# exact operations
# ---------------------------------------------------------------------------

def content_and_leading(P) -> tuple[int, int]:
    """Return ``(gcd of coefficients, leading coefficient)``."""
    P = as_polynomial(P)
    return P.content(), P.leading


def poly_gcd(P, Q) -> IntPolynomial:
    """Primitive gcd in Z[x] with positive leading coefficient."""
    return IntPolynomial(tuple(_gcd_primitive(as_polynomial(P).coeffs, as_polynomial(Q).coeffs)))


def squarefree_part(P) -> IntPolynomial:
    """``P / gcd(P, P')`` made primitive with a positive leading coefficient."""
    P = as_polynomial(P)
    if P.degree < 1:
        raise InvalidInputError("squarefree_part needs degree >= 1")
    g = _gcd_primitive(P.coeffs, _derivative(P.coeffs))
    quot, _ = _divmod_q(P.coeffs, g)
    return IntPolynomial(tuple(_primitive(quot)))


def is_squarefree(P) -> bool:
    P = as_polynomial(P)
    if P.degree < 1:
        return True
    return len(_gcd_primitive(P.coeffs, _derivative(P.coeffs))) == 1


def squarefree_decomposition(P) -> list[tuple[IntPolynomial, int]]:
    """Yun's algorithm: primitive squarefree factors with their multiplicities.

    The product of ``f**m`` over the output equals the primitive part of ``P``
    up to sign. Constant factors are dropped.
    """
    P = as_polynomial(P)
    if P.degree < 1:
        return []
    a = [Fraction(c) for c in _primitive(P.coeffs)]
    da = _derivative(a)
    b = _gcd_primitive(a, da)
    c, _ = _divmod_q(a, b)
    d, _ = _divmod_q(da, b)
    d = _sub(d, _derivative(c))
    out = []
    i = 1
    while len(c) > 1:
        g = _gcd_primitive(c, d) if d else _primitive(c)
        if len(g) > 1:
            out.append((IntPolynomial(tuple(g)), i))
        c, _ = _divmod_q(c, g)
        d, _ = _divmod_q(d, g)
        d = _sub(d, _derivative(c))
        i += 1
    return out


def is_prime(p) -> bool:
    return isinstance(p, (int, np.integer)) and not isinstance(p, bool) and p >= 2 and bool(sympy.isprime(int(p)))


def prime_factors(n: int) -> list[int]:
    """Sorted primes dividing the nonzero integer ``n``."""
    n = abs(int(n))
    if n == 0:
        raise InvalidInputError("0 has no finite prime factorisation")
    return sorted(sympy.factorint(n))


def valuation(n: int, p: int) -> int:
    if n == 0:
        raise InvalidInputError("valuation of 0 is infinite")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def rational_roots(P, max_candidates: int = 20000) -> list[Fraction] | None:
    """Rational roots of ``P`` by the rational root test.

    Returns ``None`` when the candidate set would exceed ``max_candidates``,
    i.e. the check is skipped rather than run slowly.
    """
    P = as_polynomial(P)
    roots = [Fraction(0)] if P.constant == 0 else []
    Q = P.without_zero_roots()
    if Q.degree == 0:
        return roots
    a0, an = abs(Q.constant), abs(Q.leading)
    if 2 * sympy.divisor_count(a0) * sympy.divisor_count(an) > max_candidates:
        return None
    num_divs = sympy.divisors(a0)
    den_divs = sympy.divisors(an)
    n = Q.degree
    seen = set()
    for p in num_divs:
        for q in den_divs:
            for s in (p, -p):
                cand = Fraction(s, q)
                if cand in seen:
                    continue
                seen.add(cand)
                # q^n P(p/q), kept in integers
                num, den = cand.numerator, cand.denominator
                if sum(c * num**i * den ** (n - i) for i, c in enumerate(Q.coeffs)) == 0:
                    roots.append(cand)
    return sorted(roots)


@lru_cache(maxsize=None)
def cyclotomic(N: int) -> IntPolynomial:
    """The N-th cyclotomic polynomial by exact division of x^N - 1."""
    if N < 1:
        raise InvalidInputError("cyclotomic index must be >= 1")
    poly = IntPolynomial((-1,) + (0,) * (N - 1) + (1,))
    for d in range(1, N):
        if N % d == 0:
            poly = poly // cyclotomic(d)
    return poly


# ---------------------------------------------------------------------------
# Newton polygons
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NewtonPolygon:
    """Lower convex hull of the points ``(i, v_p(a_i))``.

    ``slopes`` pairs each hull slope with its horizontal length; a root
    attached to slope ``s`` has ``v_p(root) = -s`` and ``|root|_p = p**s``.
    Roots at zero are not on the hull and are counted in ``zero_roots``.
    """

    prime: int
    vertices: tuple[tuple[int, Fraction], ...]
    slopes: tuple[tuple[Fraction, int], ...]
    zero_roots: int = 0

    def root_valuations(self) -> list[tuple[Fraction, int]]:
        return [(-s, m) for s, m in self.slopes]

    def absolute_values(self) -> list[tuple[float, int]]:
        return [(float(self.prime) ** float(s), m) for s, m in self.slopes]


def newton_polygon(P, p: int) -> NewtonPolygon:
    P = as_polynomial(P)
    if not is_prime(p):
        raise InvalidInputError(f"{p!r} is not a prime")
    p = int(p)
    pts = [(i, Fraction(valuation(c, p))) for i, c in enumerate(P.coeffs) if c != 0]
    hull: list[tuple[int, Fraction]] = []
    for pt in pts:
        # pop while the last turn is not strictly convex from below
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    slopes = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        slopes.append((Fraction(y2 - y1) / (x2 - x1), x2 - x1))
    return NewtonPolygon(p, tuple(hull), tuple(slopes), zero_roots=pts[0][0])


# ---------------------------------------------------------------------------
# complex roots (Aberth-Ehrlich)
# ---------------------------------------------------------------------------

def _horner_ratio(c, z):
    """Newton correction P/P' and backward error |P| / sum |c_i||z|^i.

    Points with |z| > 1 are evaluated through the reversed polynomial so
    high degrees do not overflow.
    """
    m = len(c) - 1
    inside = np.abs(z) <= 1.0
    w = np.where(inside, z, 1.0 / np.where(inside, 1.0, z))
    # forward coefficients for |z| <= 1, reversed otherwise
    cf = c[::-1]  # descending
    cr = c        # descending coefficients of the reversed polynomial
    p = np.zeros_like(z)
    dp = np.zeros_like(z)
    scale = np.zeros(z.shape)
    aw = np.abs(w)
    for k in range(m + 1):
        coef = np.where(inside, cf[k], cr[k])
        dp = dp * w + p
        p = p * w + coef
        scale = scale * aw + np.abs(coef)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio_in = p / dp
        # P(z) = z^m Q(1/z)  =>  P/P' = 1 / (w (m - w Q'/Q))
        ratio_out = 1.0 / (w * (m - w * dp / p))
    ratio = np.where(inside, ratio_in, ratio_out)
    back = np.abs(p) / scale
    return ratio, back


def _fujiwara_bound(c):
    an = c[-1]
    m = len(c) - 1
    terms = [abs(c[m - i] / an) ** (1.0 / i) for i in range(1, m)]
    terms.append(abs(c[0] / (2 * an)) ** (1.0 / m))
    return 2.0 * max(terms)


def _enforce_conjugates(z, thr):
    upper = [x for x in z if x.imag > thr * max(1.0, abs(x))]
    lower = [x for x in z if x.imag < -thr * max(1.0, abs(x))]
    real = [complex(x.real, 0.0) for x in z if abs(x.imag) <= thr * max(1.0, abs(x))]
    if len(upper) != len(lower):
        return list(z)
    out = list(real)
    remaining = list(lower)
    for u in sorted(upper, key=lambda x: (x.real, x.imag)):
        j = min(range(len(remaining)), key=lambda k: abs(remaining[k].conjugate() - u))
        l = remaining.pop(j)
        avg = (u + l.conjugate()) / 2
        out.extend([avg, avg.conjugate()])
    return out


def _sort_key(x: complex):
    return (round(x.real, 12) + 0.0, round(x.imag, 12) + 0.0)


def complex_roots(P, tol: float = DEFAULT_ROOT_TOL, max_iter: int = MAX_ROOT_ITERATIONS) -> list[complex]:
    """All ``deg(P)`` complex roots, sorted by (real, imag).

    ``P`` should be squarefree apart from a power of ``x``; zero roots are
    split off exactly. Raises :class:`NumericalError` if the simultaneous
    iteration does not reach backward error ``tol``.
    """
    P = as_polynomial(P)
    if P.degree < 1:
        raise InvalidInputError("complex_roots needs degree >= 1")
    k = P.zero_root_order()
    roots = [0j] * k
    Q = P.without_zero_roots()
    m = Q.degree
    if m == 1:
        roots.append(complex(Fraction(-Q.constant, Q.leading)))
    elif m >= 2:
        roots.extend(_aberth(Q, tol, max_iter))
    return sorted(roots, key=_sort_key)


def _aberth(Q: IntPolynomial, tol, max_iter):
    big = max(abs(c) for c in Q.coeffs)
    c = np.array([x / big for x in Q.coeffs], dtype=complex)
    m = len(c) - 1
    radius = _fujiwara_bound(np.abs(c))
    angles = 2 * np.pi * np.arange(m) / m + 0.4
    z = radius * np.exp(1j * angles)
    done = np.zeros(m, dtype=bool)
    back = np.full(m, np.inf)
    for _ in range(max_iter):
        ratio, back = _horner_ratio(c, z)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        inv = 1.0 / diff
        np.fill_diagonal(inv, 0.0)
        s = inv.sum(axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            w = ratio / (1.0 - ratio * s)
        w = np.where(np.isfinite(w), w, 0.0)
        step_small = np.abs(w) <= 4 * _EPS * np.maximum(np.abs(z), 1e-300)
        done = step_small | (back <= 4 * _EPS) | (ratio == 0)
        z = np.where(done, z, z - w)
        if done.all():
            break
    _, back = _horner_ratio(c, z)
    worst = float(np.max(back))
    if not np.all(np.isfinite(z)) or worst > tol:
        raise NumericalError(
            f"root solver did not converge for degree {m}: backward error {worst:.3e} > {tol:.1e}",
            residual=worst,
        )
    roots = [complex(x) for x in z]
    return _enforce_conjugates(roots, 1e-10)


def root_residuals(P, roots) -> list[float]:
    """Backward error |P(z)| / sum |a_i||z|^i for each root (float)."""
    P = as_polynomial(P)
    out = []
    for z in roots:
        val = abs(sum(complex(c) * z**i for i, c in enumerate(P.coeffs)))
        scale = sum(abs(c) * abs(z) ** i for i, c in enumerate(P.coeffs))
        out.append(val / scale if scale else 0.0)
    return out


def verify_roots_mp(P, roots, dps: int = 40) -> float:
    """Extended-precision pass: Newton-polish each root in mpmath and return the
    largest distance between the double-precision root and its polished value."""
    import mpmath

    P = as_polynomial(P)
    coeffs = list(reversed(P.coeffs))
    worst = 0.0
    with mpmath.workdps(dps):
        for z in roots:
            x = mpmath.mpc(z)
            for _ in range(8):
                val, der = mpmath.polyval(coeffs, x, derivative=True)
                if der == 0:
                    break
                x -= val / der
            worst = max(worst, float(abs(x - mpmath.mpc(z))))
    return worst
