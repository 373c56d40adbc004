"""Theta limit law of tree height, moment constants, and deviation bounds.

For a uniform random tree of size n with height H_n, the scaled height
H_n / sqrt(n) converges to the theta law with survival function

    S(x) = sum_{k>=1} (k^2 L^2 x^2 - 2) exp(-k^2 L^2 x^2 / 4),

where L is the growth constant lambda from the constants module.  The local
density is g(x) = -S'(x), moments scale as E[H_n^r] ~ c_r n^(r/2), the far
tail behaves like L^2 x^2 exp(-L^2 x^2 / 4), and exact tail probabilities at
fixed n admit the optimized coefficient bound

    P(H_n >= h) <= min_{0 < r < rho} e_{h-1}(r) / (r^n y_n),

with e_m(r) = y(r) - y_m(r) evaluated along the tower r, r^2, r^4, ... that
the unordered-pair substitution couples.

Series evaluation policy: terms are summed with compensated (Kahan) addition
up to an adaptive k_max; below x_min = 0.1 / L the alternating prefix of the
theta sum cancels catastrophically in double precision, and AccuracyLoss is
raised instead of returning a degraded value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from mpmath import mp, mpf

from .constants import CertifiedReal
from .enumeration import CountTable, count_trees
from .errors import AccuracyLoss, DegenerateRange, DomainError

_X_MIN_FACTOR = 0.1
_SADDLE_DPS = 50
_SADDLE_GRID = 200
_SADDLE_SLACK = 1e-25
_TOWER_FLOOR = 1e-30
_SERIES_TERMS = 120
_FUNC_EQ_THRESHOLD = 0.23  # above this, evaluate y via its functional equation


@dataclass(frozen=True)
class ThetaParams:
    """Scale parameter of the theta law (the constant usually written lambda)."""

    lam: float

    def __post_init__(self):
        if not self.lam > 0:
            raise DomainError("theta scale parameter must be positive")


def _k_max(scaled_x: float, eps: float) -> int:
    return math.ceil((2.0 / scaled_x) * math.sqrt(math.log(1.0 / eps) + 10.0)) + 5


def _kahan_theta_sum(scaled_x: float, eps: float, fourth_order: bool) -> tuple[float, float]:
    """Sum the theta series at u_k = k * scaled_x; returns (value, error estimate)."""
    kmax = _k_max(scaled_x, eps)
    total = 0.0
    comp = 0.0
    peak = 0.0
    for k in range(1, kmax + 1):
        u2 = (k * scaled_x) ** 2
        w = math.exp(-u2 / 4.0)
        term = (u2 * u2 - 6.0 * u2) * w if fourth_order else (u2 - 2.0) * w
        yy = term - comp
        t = total + yy
        comp = (t - total) - yy
        total = t
        peak = max(peak, abs(total))
    u2 = ((kmax + 1) * scaled_x) ** 2
    trunc = (u2 * u2 + 6.0 * u2 if fourth_order else u2 + 2.0) * math.exp(-u2 / 4.0)
    return total, 2.0 * trunc + peak * 1e-15


def theta_survival(x: float, p: ThetaParams, eps: float = 1e-12) -> float:
    """S(x), the limiting P(height / sqrt(n) >= x), to absolute accuracy eps."""
    if x <= 0:
        raise DomainError("theta_survival needs x > 0")
    if eps <= 0:
        raise DomainError("eps must be positive")
    value, err = _kahan_theta_sum(p.lam * x, eps, fourth_order=False)
    if x < _X_MIN_FACTOR / p.lam and err > eps:
        raise AccuracyLoss(f"cancellation error {err:.3g} exceeds eps at x={x:.3g}")
    return value


def theta_local(x: float, p: ThetaParams, eps: float = 1e-12) -> float:
    """g(x) = -S'(x); P(H_n = h) is approximately g(h / sqrt(n)) / sqrt(n)."""
    if x <= 0:
        raise DomainError("theta_local needs x > 0")
    if eps <= 0:
        raise DomainError("eps must be positive")
    value, err = _kahan_theta_sum(p.lam * x, eps, fourth_order=True)
    if x < _X_MIN_FACTOR / p.lam and err > eps:
        raise AccuracyLoss(f"cancellation error {err:.3g} exceeds eps at x={x:.3g}")
    return value / (2.0 * x)


def theta_J(X: float, eps: float = 1e-12) -> float:
    """The normalized theta sum J(X) = S(X / lambda-scale) / (4 sqrt(pi))."""
    if X <= 0:
        raise DomainError("theta_J needs X > 0")
    if eps <= 0:
        raise DomainError("eps must be positive")
    value, err = _kahan_theta_sum(X, eps, fourth_order=False)
    if X < _X_MIN_FACTOR and err > eps:
        raise AccuracyLoss(f"cancellation error {err:.3g} exceeds eps at X={X:.3g}")
    return value / (4.0 * math.sqrt(math.pi))


def asymptotic_moment(r: int, p: ThetaParams) -> float:
    """Coefficient c_r with E[H_n^r] ~ c_r n^(r/2) for the uniform size-n tree."""
    if r < 1:
        raise DomainError("moment order must be at least 1")
    if r == 1:
        return 2.0 * math.sqrt(math.pi) / p.lam
    with mp.workdps(30):
        val = r * (r - 1) * mp.zeta(r) * mp.gamma(mpf(r) / 2) * (2 / mpf(p.lam)) ** r
        return float(val)


def moderate_tail(x: float, p: ThetaParams) -> float:
    """One-term tail approximation L^2 x^2 exp(-L^2 x^2 / 4), accurate as x grows.

    Near x = 0 the value tends to 0 while the true survival tends to 1; the
    form is only meaningful in the upper-deviation range.
    """
    if x <= 0:
        raise DomainError("moderate_tail needs x > 0")
    u2 = (p.lam * x) ** 2
    return u2 * math.exp(-u2 / 4.0)


def _y_coeffs_mpf() -> list:
    ys = count_trees(_SERIES_TERMS).counts
    return [mpf(c) for c in ys]


def saddle_bound(n: int, h: int, counts: CountTable, rho: CertifiedReal) -> float:
    """Optimized coefficient bound on P(H_n >= h), valid for 1 <= h <= n - 1.

    Evaluates e_{h-1}(r) / (r^n y_n) over r in (0, rho) and returns the
    minimum found by a coarse grid plus golden-section refinement.  All scalar
    quantities are upper bounds by construction (series tails added, truncated
    tower levels replaced by their height-0 cap), so the result is a valid
    bound; a slack factor 1 + 1e-25 absorbs working-precision rounding and the
    final conversion rounds up by one ulp.
    """
    if not 1 <= h <= n - 1:
        raise DegenerateRange(f"need 1 <= h <= n - 1, got h={h}, n={n}")
    y_n = counts.y(n)
    m = h - 1
    with mp.workdps(_SADDLE_DPS):
        rho_lb = mpf(rho.lower.numerator) / rho.lower.denominator
        ys = _y_coeffs_mpf()

        def y_upper(x):
            # series + refined tail below the threshold; one functional-equation
            # step above it (x^2 then falls below the threshold)
            if x < _FUNC_EQ_THRESHOLD:
                s = mpf(0)
                xp = mpf(1)
                for c in ys:
                    xp *= x
                    s += c * xp
                q = x / rho_lb
                tail = q ** (_SERIES_TERMS + 1) * mpf(_SERIES_TERMS + 1) ** mpf("-1.5")
                return s + tail / (1 - q) / 2
            rad = 1 - 2 * x - y_upper(x * x)
            if rad <= 0:
                raise DomainError("evaluation point not certified below the radius")
            return 1 - rad.sqrt()

        def exceedance_upper(r):
            ts = [r]
            while ts[-1] >= _TOWER_FLOOR:
                ts.append(ts[-1] * ts[-1])
            levels = len(ts) - 1
            yups = [y_upper(t) for t in ts]
            caps = [yups[j] - ts[j] for j in range(levels + 1)]
            e = list(caps)  # e_0(t) = y(t) - t caps every later level
            for _ in range(m):
                nxt = [e[j] * (yups[j] - e[j] / 2) + e[j + 1] / 2 for j in range(levels)]
                nxt.append(caps[levels])
                e = nxt
            return e[0]

        def objective(r):
            return mp.log(exceedance_upper(r)) - n * mp.log(r)

        r_lo = mpf("0.05")
        r_hi = rho_lb - mpf("1e-6")
        best_val = None
        best_idx = 0
        for i in range(_SADDLE_GRID + 1):
            r = r_lo + (r_hi - r_lo) * i / _SADDLE_GRID
            v = objective(r)
            if best_val is None or v < best_val:
                best_val = v
                best_idx = i
        a = r_lo + (r_hi - r_lo) * max(0, best_idx - 1) / _SADDLE_GRID
        b = r_lo + (r_hi - r_lo) * min(_SADDLE_GRID, best_idx + 1) / _SADDLE_GRID
        inv_golden = (mpf(5).sqrt() - 1) / 2
        c = b - inv_golden * (b - a)
        d = a + inv_golden * (b - a)
        fc = objective(c)
        fd = objective(d)
        for _ in range(80):
            if fc <= fd:  # ties move toward smaller r
                b, d, fd = d, c, fc
                c = b - inv_golden * (b - a)
                fc = objective(c)
            else:
                a, c, fc = c, d, fd
                d = a + inv_golden * (b - a)
                fd = objective(d)
        log_min = min(best_val, fc, fd)
        bound = mp.exp(log_min) / y_n * (1 + mpf(_SADDLE_SLACK))
        return math.nextafter(float(bound), math.inf)
