import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import special

from qinfo.specfun import (
    AssocLaguerre,
    Gegenbauer,
    GaussLaguerre,
    GaussLegendre,
    NumericalError,
    adaptive_integrate,
    build_rule,
    digamma,
    eval_assoc_laguerre,
    eval_gegenbauer,
    gauss_laguerre,
    gauss_legendre,
    ln_gamma,
    log_abs_assoc_laguerre,
    polynomial_roots,
)


def laguerre_series(k, alpha, x):
    # sum_i (-1)^i binom(k+alpha, k-i) x^i / i!, at 50 digits to beat cancellation
    with mpmath.workdps(50):
        a, x = mpmath.mpf(alpha), mpmath.mpf(x)
        return float(sum((-1) ** i * mpmath.binomial(k + a, k - i) * x**i / mpmath.factorial(i) for i in range(k + 1)))


def gegenbauer_series(k, alpha, x):
    # sum_j (-1)^j Gamma(k-j+alpha) / (Gamma(alpha) j! (k-2j)!) (2x)^(k-2j)
    with mpmath.workdps(50):
        a, x = mpmath.mpf(alpha), mpmath.mpf(x)
        return float(
            sum(
                (-1) ** j * mpmath.gamma(k - j + a) / (mpmath.gamma(a) * mpmath.factorial(j) * mpmath.factorial(k - 2 * j)) * (2 * x) ** (k - 2 * j)
                for j in range(k // 2 + 1)
            )
        )


@pytest.mark.parametrize("k, alpha, x, want", [(0, 7.3, 5.0, 1.0), (1, 2.0, 1.0, 2.0), (3, 1.0, 2.0, -4 / 3)])
def test_laguerre_examples(k, alpha, x, want):
    assert eval_assoc_laguerre(k, alpha, x) == pytest.approx(want, rel=1e-14)


@pytest.mark.parametrize("k, alpha, x, want", [(0, 0.5, 0.3, 1.0), (1, 1.5, 0.5, 1.5), (2, 0.5, 1.0, 1.0)])
def test_gegenbauer_examples(k, alpha, x, want):
    assert eval_gegenbauer(k, alpha, x) == pytest.approx(want, rel=1e-14)


def test_parameter_validation():
    with pytest.raises(ValueError):
        eval_assoc_laguerre(2, -1.0, 0.5)
    with pytest.raises(ValueError):
        eval_gegenbauer(2, -0.5, 0.5)
    with pytest.raises(ValueError):
        eval_gegenbauer(2, 1.0, 1.5)
    with pytest.raises(ValueError):
        AssocLaguerre(1.0, -1)


@given(
    k=st.integers(0, 20),
    alpha=st.floats(-0.9, 12.0),
    xs=st.lists(st.floats(0.0, 30.0), min_size=5, max_size=5),
)
def test_laguerre_recurrence_matches_series(k, alpha, xs):
    for x in xs:
        want = laguerre_series(k, alpha, x)
        assert abs(eval_assoc_laguerre(k, alpha, x) - want) <= 1e-10 * max(1.0, abs(want))


@given(
    k=st.integers(0, 20),
    alpha=st.floats(-0.45, 8.0).filter(lambda a: abs(a) > 1e-3),
    xs=st.lists(st.floats(-1.0, 1.0), min_size=5, max_size=5),
)
def test_gegenbauer_recurrence_matches_series(k, alpha, xs):
    for x in xs:
        want = gegenbauer_series(k, alpha, x)
        assert abs(eval_gegenbauer(k, alpha, x) - want) <= 1e-10 * max(1.0, abs(want))


def test_recurrence_bulk_against_scipy():
    rng = np.random.default_rng(7)
    x = rng.uniform(0, 40, 100)
    u = rng.uniform(-1, 1, 100)
    for k in (5, 12, 20):
        for a in (0.0, 1.0, 2.7):
            assert np.allclose(eval_assoc_laguerre(k, a, x), special.eval_genlaguerre(k, a, x), rtol=1e-10, atol=1e-10 * np.abs(special.eval_genlaguerre(k, a, x)).max())
            assert np.allclose(eval_gegenbauer(k, a + 0.5, u), special.eval_gegenbauer(k, a + 0.5, u), rtol=1e-10, atol=1e-12)


def test_log_abs_laguerre_survives_overflow():
    x = np.array([0.5, 3.0, 700.0])
    lp, sign = log_abs_assoc_laguerre(30, 1.0, x)
    direct = eval_assoc_laguerre(30, 1.0, x)
    assert np.allclose(lp, np.log(np.abs(direct)), rtol=1e-12)
    assert np.array_equal(sign, np.sign(direct))
    lp_big, _ = log_abs_assoc_laguerre(600, 1.0, np.array([4000.0]))
    assert np.isfinite(lp_big[0]) and lp_big[0] > 700


def test_gamma_examples():
    assert ln_gamma(1.0) == pytest.approx(0.0, abs=1e-14)
    assert digamma(1.0) == pytest.approx(-0.5772156649, abs=1e-10)
    assert digamma(0.5) == pytest.approx(-1.9635100260, abs=1e-10)


@given(st.floats(1e-3, 500.0))
def test_gamma_family_vs_scipy(x):
    assert ln_gamma(x) == pytest.approx(special.gammaln(x), rel=1e-12, abs=1e-13)
    assert digamma(x) == pytest.approx(special.digamma(x), rel=1e-11, abs=1e-12)


def test_rule_examples():
    r = gauss_laguerre(1, 0.0)
    assert r.nodes == pytest.approx([1.0]) and r.weights == pytest.approx([1.0])
    assert gauss_laguerre(2, 0.0).integrate(lambda x: x**3) == pytest.approx(6.0, rel=1e-14)
    for n in (1, 5, 40):
        assert gauss_legendre(n).weights.sum() == pytest.approx(2.0, rel=1e-14)
    assert build_rule(3, GaussLegendre(0.0, 2.0)).weights.sum() == pytest.approx(2.0)
    assert len(build_rule(4, GaussLaguerre(1.5))) == 4


def test_rules_are_immutable():
    r = gauss_laguerre(8, 1.0)
    with pytest.raises(ValueError):
        r.nodes[0] = 0.0
    with pytest.raises(ValueError):
        r.weights[0] = 0.0


@pytest.mark.parametrize("alpha", [0.0, 1.0, 3.0, 7.0, 15.0])
@pytest.mark.parametrize("n", [1, 2, 7, 16, 33, 64])
def test_laguerre_exactness(n, alpha):
    r = gauss_laguerre(n, alpha)
    for k in range(2 * n):
        # relative to Gamma(alpha + k + 1), in log space
        got = special.logsumexp(r.log_weights + k * np.log(r.nodes))
        assert got == pytest.approx(special.gammaln(alpha + k + 1), abs=1e-12 * max(1.0, special.gammaln(alpha + k + 1)))


def test_laguerre_weights_match_scipy():
    x, w = special.roots_genlaguerre(30, 2.5)
    r = gauss_laguerre(30, 2.5)
    assert np.allclose(r.nodes, x, rtol=1e-12)
    assert np.allclose(r.weights, w, rtol=1e-9)


def test_log_weights_finite_when_weights_underflow():
    r = gauss_laguerre(200, 0.0)
    assert np.all(np.isfinite(r.log_weights))
    assert r.weights.min() == 0.0 or r.log_weights.min() < -700


def test_legendre_interval():
    r = gauss_legendre(10, 1.0, 3.0)
    assert r.integrate(lambda x: x**5) == pytest.approx((3**6 - 1) / 6, rel=1e-13)


@pytest.mark.parametrize(
    "poly, want",
    [
        (AssocLaguerre(1.0, 1), [2.0]),
        (AssocLaguerre(0.0, 2), [2 - math.sqrt(2), 2 + math.sqrt(2)]),
        (Gegenbauer(1.0, 2), [-0.5, 0.5]),
    ],
)
def test_root_examples(poly, want):
    assert polynomial_roots(poly) == pytest.approx(want, rel=1e-13)


@given(k=st.integers(1, 25), alpha=st.floats(-0.9, 10.0), family=st.sampled_from(["laguerre", "gegenbauer"]))
def test_roots_bracket_sign_changes(k, alpha, family):
    poly = AssocLaguerre(alpha, k) if family == "laguerre" else Gegenbauer(max(alpha, -0.4) + 0.45, k)
    roots = polynomial_roots(poly)
    assert len(roots) == k and np.all(np.diff(roots) > 0)
    gaps = np.diff(np.concatenate([[roots[0] - 1], roots, [roots[-1] + 1]]))
    eps = 1e-3 * np.minimum(gaps[:-1], gaps[1:])
    lo, hi = roots - eps, roots + eps
    if family == "gegenbauer":
        lo, hi = np.clip(lo, -1, 1), np.clip(hi, -1, 1)
    assert np.all(np.sign(poly(lo)) * np.sign(poly(hi)) < 0)


def test_polynomial_roots_rejects_constants():
    with pytest.raises(ValueError):
        polynomial_roots(AssocLaguerre(0.0, 0))


def test_adaptive_log_singularity():
    # int_0^1 ln x dx = -1, singular endpoint never sampled
    v, err = adaptive_integrate(np.log, [0.0, 1.0], abs_tol=1e-12)
    assert v == pytest.approx(-1.0, abs=1e-11)
    assert err < 1e-10


def test_adaptive_interior_log_zero_split_at_root():
    p = AssocLaguerre(0.0, 3)
    roots = polynomial_roots(p)

    def f(x):
        y = p(x) ** 2
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(y > 0, y * np.log(y), 0.0) * np.exp(-x)

    v, _ = adaptive_integrate(f, [0.0, *roots, 60.0], abs_tol=1e-12)
    from scipy.integrate import quad

    want = sum(quad(f, a, b, limit=200, epsabs=1e-13)[0] for a, b in zip([0.0, *roots], [*roots, 60.0]))
    assert v == pytest.approx(want, abs=1e-10)


def test_adaptive_raises_on_nonfinite_values():
    with pytest.raises(NumericalError):
        adaptive_integrate(lambda x: np.full_like(x, np.nan), [0.0, 1.0])


def test_adaptive_raises_on_divergent_integral():
    with pytest.raises(NumericalError):
        adaptive_integrate(lambda x: x**-2, [0.0, 1.0])
