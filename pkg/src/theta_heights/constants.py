"""Certified evaluation of the tree-count singularity and growth constants.

The generating function y(z) of the tree counts has radius of convergence rho,
the unique root in [1/4, 1/2] of 2 r + y(r^2) = 1, and the height and
asymptotic laws are governed by

    lambda = sqrt(2 rho + 2 rho^2 y'(rho^2)).

Everything here is computed with exact rational arithmetic plus explicit
series tail bounds, so each result is an interval guaranteed to contain the
true value.  Tail bounds used:

  * coarse, for x < 1/4:  y_n <= 4^n (the plane-tree bound), giving the
    geometric tail (4x)^(T+1) / (1 - 4x);
  * refined, for x < rho:  y_n <= rho^(-n) n^(-3/2) / 2, giving a summable
    tail even as x approaches the radius.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .enumeration import count_trees
from .errors import DomainError, ToleranceUnreachable

_MAX_TERMS = 1 << 14


@dataclass(frozen=True)
class CertifiedReal:
    """A value with a rigorous absolute error bound: truth is in value +- err."""

    value: Fraction
    err: Fraction

    def __post_init__(self):
        if self.err < 0:
            raise ValueError("error bound must be nonnegative")

    @property
    def lower(self) -> Fraction:
        return self.value - self.err

    @property
    def upper(self) -> Fraction:
        return self.value + self.err

    def __float__(self) -> float:
        return float(self.value)

    def contains(self, x) -> bool:
        x = Fraction(x)
        return self.lower <= x <= self.upper

    def overlaps(self, other: "CertifiedReal") -> bool:
        return self.lower <= other.upper and other.lower <= self.upper


@lru_cache(maxsize=8)
def _coeffs(n_terms: int) -> tuple[int, ...]:
    return count_trees(n_terms).counts


def _as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def eval_y_at(x, n_terms: int = 120) -> CertifiedReal:
    """Certified y(x) for 0 <= x < 1/4 using the coarse geometric tail."""
    x = _as_fraction(x)
    if x < 0 or 4 * x >= 1:
        raise DomainError("eval_y_at needs 0 <= x < 1/4")
    ys = _coeffs(n_terms)
    value = Fraction(0)
    xp = Fraction(1)
    for n in range(1, n_terms + 1):
        xp *= x
        value += ys[n - 1] * xp
    tail = (4 * x) ** (n_terms + 1) / (1 - 4 * x)
    return CertifiedReal(value, tail)


def eval_y_prime_at(x, n_terms: int = 160) -> CertifiedReal:
    """Certified y'(x) for 0 <= x < 1/4; the tail is the differentiated geometric."""
    x = _as_fraction(x)
    if x < 0 or 4 * x >= 1:
        raise DomainError("eval_y_prime_at needs 0 <= x < 1/4")
    ys = _coeffs(n_terms)
    value = Fraction(0)
    xp = Fraction(1)
    for n in range(1, n_terms + 1):
        value += n * ys[n - 1] * xp
        xp *= x
    q = 4 * x
    m = n_terms + 1
    # sum_{n >= m} n q^(n-1) = q^(m-1) (m (1-q) + q) / (1-q)^2, scaled by 4
    tail = 4 * q ** (m - 1) * (m * (1 - q) + q) / (1 - q) ** 2
    return CertifiedReal(value, tail)


def eval_y_refined(x, rho: CertifiedReal, n_terms: int = 400) -> CertifiedReal:
    """Certified y(x) for x up to the radius, using the refined coefficient bound.

    Valid for 0 <= x < rho.lower; the tail stays summable near the radius but
    shrinks only like 1/sqrt(n_terms) there, so certified widths at the radius
    itself are coarse by nature.
    """
    x = _as_fraction(x)
    rho_lb = rho.lower
    if x < 0 or x >= rho_lb:
        raise DomainError("eval_y_refined needs 0 <= x < certified lower bound of rho")
    ys = _coeffs(n_terms)
    value = Fraction(0)
    xp = Fraction(1)
    for n in range(1, n_terms + 1):
        xp *= x
        value += ys[n - 1] * xp
    q = x / rho_lb
    t = n_terms + 1
    geo = q**t * Fraction(1, 1) / (1 - q)
    # sum_{n>T} q^n n^(-3/2) <= min(q^(T+1) (T+1)^(-3/2) / (1-q), integral 2/sqrt(T))
    poly = Fraction(2, math.isqrt(n_terms))
    tail = min(geo * _inv_pow_three_halves(t), poly) / 2
    return CertifiedReal(value, tail)


def _inv_pow_three_halves(t: int) -> Fraction:
    # rational upper bound on t^(-3/2): t^(-3/2) <= 1 / (t * isqrt(t))
    return Fraction(1, t * math.isqrt(t))


def _sqrt_bounds(q: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    """Directed rational bounds on sqrt(q) with gap at most 2^-bits."""
    if q < 0:
        raise DomainError("square root of a negative interval endpoint")
    scaled = (q.numerator << (2 * bits)) // q.denominator
    s = math.isqrt(scaled)
    return Fraction(s, 1 << bits), Fraction(s + 2, 1 << bits)


def _y_interval(x: Fraction, n_terms: int) -> tuple[Fraction, Fraction]:
    cr = eval_y_at(x, n_terms)
    return cr.value, cr.value + cr.err  # series truncation only omits mass


def compute_rho(tol: float | Fraction) -> CertifiedReal:
    """Certified root of 2 r + y(r^2) = 1 in [1/4, 1/2] by interval bisection.

    The function is strictly increasing there (positive series coefficients),
    so certified signs at dyadic midpoints pin the root.  Signs that stay
    indeterminate at the maximum series length raise ToleranceUnreachable.
    """
    tol = _as_fraction(tol)
    if tol <= 0:
        raise ToleranceUnreachable("tolerance must be positive")
    lo, hi = Fraction(1, 4), Fraction(1, 2)
    n_terms = 120

    def sign(r: Fraction) -> int:
        nonlocal n_terms
        while True:
            try:
                y_lo, y_hi = _y_interval(r * r, n_terms)
            except DomainError:
                # r = 1/2 makes 4 r^2 = 1; the endpoint sign is forced anyway
                return 1
            f_lo = 2 * r + y_lo - 1
            f_hi = 2 * r + y_hi - 1
            if f_lo > 0:
                return 1
            if f_hi < 0:
                return -1
            if n_terms >= _MAX_TERMS:
                raise ToleranceUnreachable(
                    f"sign at r={float(r):.17g} indeterminate with {n_terms} terms"
                )
            n_terms *= 2

    if sign(lo) >= 0 or sign(hi) <= 0:
        raise ToleranceUnreachable("bracket [1/4, 1/2] does not straddle the root")
    while hi - lo > 2 * tol:
        mid = (lo + hi) / 2
        if sign(mid) > 0:
            hi = mid
        else:
            lo = mid
    return CertifiedReal((lo + hi) / 2, (hi - lo) / 2)


def compute_lambda(rho: CertifiedReal, tol: float | Fraction) -> CertifiedReal:
    """Certified lambda = sqrt(2 rho + 2 rho^2 y'(rho^2)) by interval propagation."""
    tol = _as_fraction(tol)
    if tol <= 0:
        raise ToleranceUnreachable("tolerance must be positive")
    a, b = rho.lower, rho.upper
    if a <= 0 or 4 * b * b >= 1:
        raise DomainError("rho interval leaves the series domain")
    n_terms = 160
    while True:
        dp = eval_y_prime_at(a * a, n_terms)
        yp_lo = dp.value  # truncation omits positive mass only
        yp_hi = eval_y_prime_at(b * b, n_terms).upper
        u_lo = 2 * a + 2 * a * a * yp_lo
        u_hi = 2 * b + 2 * b * b * yp_hi
        bits = max(8, (4 * tol.denominator // max(1, tol.numerator)).bit_length() + 4)
        s_lo = _sqrt_bounds(u_lo, bits)[0]
        s_hi = _sqrt_bounds(u_hi, bits)[1]
        value = (s_lo + s_hi) / 2
        err = (s_hi - s_lo) / 2
        if err <= tol:
            return CertifiedReal(value, err)
        if n_terms >= _MAX_TERMS:
            raise ToleranceUnreachable(
                "lambda interval cannot meet tolerance; tighten rho first"
            )
        n_terms *= 2


def otter_amplitude(lam: CertifiedReal) -> CertifiedReal:
    """Certified lambda / (2 sqrt(pi)), the amplitude in the count asymptotics."""
    # float pi is correctly rounded; widen by one part in 2^50 to be safe
    pi_lo = Fraction(math.pi) * (1 - Fraction(1, 1 << 50))
    pi_hi = Fraction(math.pi) * (1 + Fraction(1, 1 << 50))
    sp_lo = _sqrt_bounds(pi_lo, 96)[0]
    sp_hi = _sqrt_bounds(pi_hi, 96)[1]
    lo = lam.lower / (2 * sp_hi)
    hi = lam.upper / (2 * sp_lo)
    return CertifiedReal((lo + hi) / 2, (hi - lo) / 2)
