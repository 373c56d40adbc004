"""Unit tests for the theta limit law, moments, tails, and the deviation bound.

Frozen 20-digit reference values come from an independent mpmath route at 40
digits: the survival sum was evaluated both termwise and through its
Poisson-dual form 1 - (4 pi^(5/2)/t^3) sum k^2 exp(-pi^2 k^2/t^2), t = lam*x/2,
with agreement below 1e-35 at every tabulated point, so the numbers below are
correct to well beyond double precision.
"""

import math
from fractions import Fraction

import pytest
from scipy.integrate import quad

import theta_heights as th

LAM = 1.13003371639897200714413685411

# x -> (survival S(x), local density g(x))
THETA_REF = {
    0.5: ("1.0", "-1.1429238087474048608e-40"),
    0.75: ("1.0", "1.7714352259700983425e-19"),
    1.0: ("0.99999999998546888189", "8.5488157239604820407e-10"),
    1.5: ("0.9998760732858383991", "0.0020225241382123165343"),
    2.0: ("0.97866721222613222498", "0.13287951872756217716"),
    2.5: ("0.82351864657848762583", "0.48659563337281820496"),
    3.0: ("0.53696174139344635746", "0.59776380759701069266"),
    3.5: ("0.27321932059283305876", "0.43161879836890310467"),
}
J_REF = {1.0: "0.14104739588693850663", 1.5: "0.1410468348378265538"}
MOMENT_REF = {
    1: "3.136992861688615064447863",
    2: "10.30518229920065722632167",
    3: "35.43537231753348387359701",
    4: "127.436138663710252793704",
}


@pytest.fixture(scope="module")
def p() -> th.ThetaParams:
    return th.ThetaParams(LAM)


def test_survival_matches_reference(p):
    for x, (s_ref, _) in THETA_REF.items():
        got = th.theta_survival(x, p)
        assert abs(got - float(s_ref)) < 1e-12, x


def test_local_matches_reference(p):
    for x, (_, g_ref) in THETA_REF.items():
        got = th.theta_local(x, p)
        assert abs(got - float(g_ref)) < 1e-12, x


def test_survival_range_and_monotonicity(p):
    xs = [0.3 + 0.05 * i for i in range(65)]
    vals = [th.theta_survival(x, p) for x in xs]
    assert all(-1e-12 <= v <= 1 + 1e-12 for v in vals)
    assert all(a >= b - 1e-12 for a, b in zip(vals, vals[1:]))


def test_survival_vanishes_in_far_tail(p):
    assert th.theta_survival(20.0 / p.lam, p) < 1e-15


def test_survival_approaches_one_at_small_x(p):
    v = th.theta_survival(0.3 / p.lam, p)
    assert 0.999 <= v <= 1.0001


def test_j_matches_reference_and_identity(p):
    for big_x, ref in J_REF.items():
        assert abs(th.theta_J(big_x) - float(ref)) < 1e-12
    for x in (0.5, 1.0, 1.5, 2.0, 3.0):
        lhs = 4 * math.sqrt(math.pi) * th.theta_J(p.lam * x)
        rhs = th.theta_survival(x, p)
        assert abs(lhs - rhs) < 1e-12, x


def test_local_is_minus_derivative_of_survival(p):
    step = 1e-5
    for x in (0.5, 1.0, 1.5, 2.0):
        dS = (th.theta_survival(x + step, p) - th.theta_survival(x - step, p)) / (
            2 * step
        )
        assert abs(th.theta_local(x, p) + dS) < 1e-8, x


def test_local_integrates_to_one(p):
    total, est_err = quad(lambda t: th.theta_local(t, p), 0.1, 12.0, limit=200)
    # mass below 0.1 and above 12 is far smaller than the quadrature error
    assert abs(total - 1.0) < 1e-6
    assert est_err < 1e-8


def test_mean_consistency(p):
    total, _ = quad(lambda t: t * th.theta_local(t, p), 0.1, 12.0, limit=200)
    assert abs(total - th.asymptotic_moment(1, p)) < 1e-6


def test_asymptotic_moments_match_reference(p):
    for r, ref in MOMENT_REF.items():
        got = th.asymptotic_moment(r, p)
        assert abs(got - float(ref)) < 1e-12 * float(ref), r
    assert th.asymptotic_moment(1, p) == 2.0 * math.sqrt(math.pi) / p.lam
    # scaling identity: the mean coefficient is 1 exactly when lam = 2 sqrt(pi)
    unit = th.ThetaParams(2.0 * math.sqrt(math.pi))
    assert th.asymptotic_moment(1, unit) == pytest.approx(1.0, abs=1e-15)
    # r = 2 closed form: 2 zeta(2) Gamma(1) (2/lam)^2 = (pi^2/3)(2/lam)^2
    assert th.asymptotic_moment(2, p) == pytest.approx(
        (math.pi**2 / 3.0) * (2.0 / p.lam) ** 2, rel=1e-12
    )
    with pytest.raises(th.DomainError):
        th.asymptotic_moment(0, p)


def test_moderate_tail_ratio_structure(p):
    # S(x) / (lam^2 x^2 exp(-lam^2 x^2/4)) = 1 - 2/(lam x)^2 + O(exp(-3 lam^2 x^2/4))
    for lx, ref in ((6.0, "0.94444444445185814144"), (12.0, "0.98611111111111111111")):
        x = lx / p.lam
        ratio = th.theta_survival(x, p) / th.moderate_tail(x, p)
        assert abs(ratio - float(ref)) < 1e-9, lx
        assert abs(ratio - (1 - 2 / lx**2)) < 1e-9, lx
    with pytest.raises(th.DomainError):
        th.moderate_tail(0.0, p)


def test_moderate_tail_far_regime():
    # beyond double-precision range the agreement is checked at 40 digits
    from mpmath import mp, mpf, exp

    with mp.workdps(40):
        lam = mpf("1.13003371639897200714413685411")
        lx = mpf(20)
        s = sum((k * k * lx * lx - 2) * exp(-(k * k * lx * lx) / 4) for k in range(1, 60))
        mt = lx * lx * exp(-(lx * lx) / 4)
        assert mt < mpf("1e-40")
        assert abs(s / mt - (1 - 2 / (lx * lx))) < mpf("1e-10")


def test_accuracy_loss_policy(p):
    with pytest.raises(th.AccuracyLoss):
        th.theta_survival(0.001, p)
    with pytest.raises(th.AccuracyLoss):
        th.theta_local(0.001, p)
    with pytest.raises(th.AccuracyLoss):
        th.theta_J(0.001)
    # below x_min but still certifiably accurate: returns rather than raises
    assert th.theta_survival(0.05, p) == pytest.approx(1.0, abs=1e-10)


def test_domain_errors(p):
    for fn in (th.theta_survival, th.theta_local):
        with pytest.raises(th.DomainError):
            fn(-1.0, p)
        with pytest.raises(th.DomainError):
            fn(1.0, p, -1e-9)
    with pytest.raises(th.DomainError):
        th.theta_J(0.0)


@pytest.fixture(scope="module")
def saddle_env():
    counts = th.count_trees(200)
    rho = th.compute_rho(1e-10)
    return counts, rho


def test_saddle_bound_sound_at_a_grid_point(saddle_env):
    counts, rho = saddle_env
    table = th.height_bounded_counts(30, 29, keep_rows=False, track_columns=(30,))
    col = table.column(30)
    bound = th.saddle_bound(30, 20, counts, rho)
    exact = Fraction(counts.y(30) - col[19], counts.y(30))
    assert bound >= exact
    assert bound < 1.0  # informative, not vacuous, at this deviation level


def test_saddle_bound_caterpillar(saddle_env):
    counts, rho = saddle_env
    for n in (20, 30):
        bound = th.saddle_bound(n, n - 1, counts, rho)
        exact = Fraction(1, counts.y(n))  # the maximal-height tree is unique
        assert bound >= exact
        assert bound <= 50 * float(exact)  # and stays within a modest factor


def test_saddle_bound_nonincreasing_in_h(saddle_env):
    counts, rho = saddle_env
    n = 30
    prev = None
    for h in range(math.ceil(n / 2), n):
        b = th.saddle_bound(n, h, counts, rho)
        if prev is not None:
            assert b <= prev * (1 + 1e-12)
        prev = b


def test_saddle_bound_degenerate_range(saddle_env):
    counts, rho = saddle_env
    with pytest.raises(th.DegenerateRange):
        th.saddle_bound(30, 30, counts, rho)
    with pytest.raises(th.DegenerateRange):
        th.saddle_bound(30, 0, counts, rho)


def test_rate_function_trend(saddle_env):
    """Rate -(1/n) log bound: positive at fixed xi, prefactor effects shrinking.

    Encodes the stated property for xi in {0.3, 0.5, 0.7} across
    n in {50, 100, 200}.  The xi = 0.3 positivity clause fails by design of
    the bound itself: h = 0.3 n lies below the mean height for these n, where
    any Chernoff-type bound exceeds 1, making the measured rate negative
    (about -0.075 at n = 50).  Kept faithful to the stated property; see the
    acceptance notes in the README.
    """
    counts, rho = saddle_env
    for xi in (0.3, 0.5, 0.7):
        rates = []
        for n in (50, 100, 200):
            bound = th.saddle_bound(n, round(xi * n), counts, rho)
            rates.append(-math.log(bound) / n)
        increments = [b - a for a, b in zip(rates, rates[1:])]
        assert abs(increments[1]) <= abs(increments[0]), xi
        assert all(r > 0 for r in rates), (xi, rates)
