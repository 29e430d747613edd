"""Special functions and quadrature rules.

Everything here is a pure function of its arguments.  Polynomials are
evaluated by three-term recurrence, Gauss rules are built from the Jacobi
matrix of the recurrence (Golub-Welsch), and log-singular integrands are
handled by an adaptive composite Gauss-Legendre integrator.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np
from scipy.linalg import eigh_tridiagonal

__all__ = [
    "NumericalError",
    "GaussLaguerre",
    "GaussLegendre",
    "QuadratureRule",
    "AssocLaguerre",
    "Gegenbauer",
    "eval_assoc_laguerre",
    "eval_gegenbauer",
    "log_abs_assoc_laguerre",
    "ln_gamma",
    "digamma",
    "build_rule",
    "gauss_laguerre",
    "gauss_legendre",
    "polynomial_roots",
    "adaptive_integrate",
]


class NumericalError(ArithmeticError):
    """Quadrature or eigen-iteration failed to reach the requested accuracy."""


# ---------------------------------------------------------------------------
# polynomials


def eval_assoc_laguerre(k: int, alpha: float, x):
    """Generalized Laguerre polynomial L_k^(alpha)(x)."""
    if alpha <= -1:
        raise ValueError(f"Laguerre parameter must exceed -1, got {alpha}")
    if k < 0:
        raise ValueError("degree must be non-negative")
    x = np.asarray(x, dtype=float)
    p_prev = np.ones_like(x)
    if k == 0:
        return p_prev if x.ndim else float(p_prev)
    p = 1.0 + alpha - x
    for j in range(1, k):
        p_prev, p = p, ((2 * j + 1 + alpha - x) * p - (j + alpha) * p_prev) / (j + 1)
    return p if x.ndim else float(p)


def log_abs_assoc_laguerre(k: int, alpha: float, x):
    """(ln|L_k^(alpha)(x)|, sign) with rescaling, safe where L itself overflows."""
    if alpha <= -1:
        raise ValueError(f"Laguerre parameter must exceed -1, got {alpha}")
    x = np.asarray(x, dtype=float)
    p_prev = np.ones_like(x)
    log_scale = np.zeros_like(x)
    p = 1.0 + alpha - x if k else p_prev.copy()
    for j in range(1, k):
        p_prev, p = p, ((2 * j + 1 + alpha - x) * p - (j + alpha) * p_prev) / (j + 1)
        big = np.abs(p) > 1e150
        if np.any(big):
            s = np.where(big, np.abs(p), 1.0)
            p = p / s
            p_prev = p_prev / s
            log_scale = log_scale + np.log(s)
    with np.errstate(divide="ignore"):
        return np.log(np.abs(p)) + log_scale, np.sign(p)


def eval_gegenbauer(k: int, alpha: float, x):
    """Gegenbauer (ultraspherical) polynomial C_k^(alpha)(x) on [-1, 1]."""
    if alpha <= -0.5:
        raise ValueError(f"Gegenbauer parameter must exceed -1/2, got {alpha}")
    if k < 0:
        raise ValueError("degree must be non-negative")
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > 1.0):
        raise ValueError("Gegenbauer argument must lie in [-1, 1]")
    p_prev = np.ones_like(x)
    if k == 0:
        return p_prev if x.ndim else float(p_prev)
    p = 2.0 * alpha * x
    for j in range(1, k):
        p_prev, p = p, (2 * (j + alpha) * x * p - (j + 2 * alpha - 1) * p_prev) / (j + 1)
    return p if x.ndim else float(p)


# ---------------------------------------------------------------------------
# gamma family

_LN_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)
# Bernoulli numbers B_2k for the Stirling / digamma asymptotic series
_B2K = (1 / 6, -1 / 30, 1 / 42, -1 / 30, 5 / 66, -691 / 2730, 7 / 6, -3617 / 510)
_SHIFT = 15.0


def ln_gamma(x: float) -> float:
    """log Gamma(x) for x > 0 (upward recurrence then Stirling series)."""
    x = float(x)
    if not x > 0:
        raise ValueError(f"ln_gamma needs x > 0, got {x}")
    acc = 0.0
    while x < _SHIFT:
        acc -= math.log(x)
        x += 1.0
    inv = 1.0 / x
    inv2 = inv * inv
    series = 0.0
    power = inv
    for k, b in enumerate(_B2K, start=1):
        series += b / (2 * k * (2 * k - 1)) * power
        power *= inv2
    return acc + (x - 0.5) * math.log(x) - x + _LN_SQRT_2PI + series


def digamma(x: float) -> float:
    """psi(x) = Gamma'(x)/Gamma(x) for x > 0."""
    x = float(x)
    if not x > 0:
        raise ValueError(f"digamma needs x > 0, got {x}")
    acc = 0.0
    while x < _SHIFT:
        acc -= 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    series = 0.0
    power = inv2
    for k, b in enumerate(_B2K, start=1):
        series += b / (2 * k) * power
        power *= inv2
    return acc + math.log(x) - 0.5 / x - series


# ---------------------------------------------------------------------------
# families, rules


@dataclass(frozen=True)
class GaussLaguerre:
    alpha: float = 0.0

    def __post_init__(self):
        if self.alpha <= -1:
            raise ValueError(f"Gauss-Laguerre parameter must exceed -1, got {self.alpha}")


@dataclass(frozen=True)
class GaussLegendre:
    a: float = -1.0
    b: float = 1.0

    def __post_init__(self):
        if not self.b > self.a:
            raise ValueError("Gauss-Legendre interval must have b > a")


@dataclass(frozen=True)
class AssocLaguerre:
    alpha: float
    degree: int

    def __post_init__(self):
        if self.alpha <= -1:
            raise ValueError(f"Laguerre parameter must exceed -1, got {self.alpha}")
        if self.degree < 0:
            raise ValueError("degree must be non-negative")

    def __call__(self, x):
        return eval_assoc_laguerre(self.degree, self.alpha, x)

    def derivative(self, x):
        if self.degree == 0:
            return np.zeros_like(np.asarray(x, dtype=float))
        return -eval_assoc_laguerre(self.degree - 1, self.alpha + 1, x)

    def log_abs(self, x):
        return log_abs_assoc_laguerre(self.degree, self.alpha, x)[0]

    def dlog(self, x):
        """P'(x)/P(x), overflow-safe."""
        x = np.asarray(x, dtype=float)
        if self.degree == 0:
            return np.zeros_like(x)
        lp, sp = log_abs_assoc_laguerre(self.degree, self.alpha, x)
        ld, sd = log_abs_assoc_laguerre(self.degree - 1, self.alpha + 1, x)
        with np.errstate(invalid="ignore", over="ignore"):
            return -sp * sd * np.exp(ld - lp)


@dataclass(frozen=True)
class Gegenbauer:
    alpha: float
    degree: int

    def __post_init__(self):
        if self.alpha <= -0.5:
            raise ValueError(f"Gegenbauer parameter must exceed -1/2, got {self.alpha}")
        if self.degree < 0:
            raise ValueError("degree must be non-negative")

    def __call__(self, x):
        return eval_gegenbauer(self.degree, self.alpha, x)

    def derivative(self, x):
        if self.degree == 0:
            return np.zeros_like(np.asarray(x, dtype=float))
        return 2.0 * self.alpha * eval_gegenbauer(self.degree - 1, self.alpha + 1, x)


@dataclass(frozen=True)
class QuadratureRule:
    """Immutable Gauss rule.  ``log_weights`` stay finite where ``weights`` underflow."""

    nodes: np.ndarray
    log_weights: np.ndarray
    kind: GaussLaguerre | GaussLegendre
    weights: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        self.nodes.setflags(write=False)
        self.log_weights.setflags(write=False)
        w = np.exp(self.log_weights)
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    def __len__(self):
        return len(self.nodes)

    def integrate(self, f: Callable) -> float:
        return float(np.dot(self.weights, f(self.nodes)))


def _jacobi_laguerre(n: int, alpha: float):
    j = np.arange(n, dtype=float)
    diag = 2.0 * j + alpha + 1.0
    k = np.arange(1, n, dtype=float)
    off = np.sqrt(k * (k + alpha))
    return diag, off


def _jacobi_gegenbauer(n: int, alpha: float):
    # orthogonal w.r.t. (1-x^2)^(alpha-1/2); alpha = 1/2 gives Legendre
    k = np.arange(1, n, dtype=float)
    if alpha == 0.0:
        off = np.where(k == 1, math.sqrt(0.5), 0.5)
    else:
        off = np.sqrt(k * (k + 2 * alpha - 1) / (4.0 * (k + alpha) * (k + alpha - 1)))
    return np.zeros(n), off


def _tridiagonal_eigenvalues(diag, off) -> np.ndarray:
    try:
        vals = eigh_tridiagonal(diag, off, eigvals_only=True)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise NumericalError(f"Jacobi matrix eigen-iteration failed (n={len(diag)}): {exc}") from exc
    vals = np.sort(vals)
    if len(vals) > 1 and np.any(np.diff(vals) <= 0):
        raise NumericalError(f"Jacobi eigenvalues not simple (n={len(diag)}); min gap {np.diff(vals).min():.3e}")
    return vals


@lru_cache(maxsize=256)
def gauss_laguerre(n: int, alpha: float = 0.0) -> QuadratureRule:
    """N-point rule for int_0^inf f(x) x^alpha e^-x dx.

    Nodes are Jacobi-matrix eigenvalues.  Weights use the Christoffel form
    Gamma(n+alpha+1) / (n! x_i [L_n'(x_i)]^2) evaluated in logs, so that the
    tiny weights of the outer nodes keep full relative accuracy.
    """
    if n < 1:
        raise ValueError("node count must be >= 1")
    kind = GaussLaguerre(alpha)
    x = _tridiagonal_eigenvalues(*_jacobi_laguerre(n, alpha))
    dp = eval_assoc_laguerre(n - 1, alpha + 1.0, x)
    log_w = ln_gamma(n + alpha + 1.0) - ln_gamma(n + 1.0) - np.log(x) - 2.0 * np.log(np.abs(dp))
    return QuadratureRule(x, log_w, kind)


@lru_cache(maxsize=256)
def _legendre_reference(n: int):
    if n == 1:
        return np.zeros(1), np.array([math.log(2.0)])
    x = _tridiagonal_eigenvalues(*_jacobi_gegenbauer(n, 0.5))
    # w_i = 2 / ((1 - x^2) P_n'(x)^2),  P_n' = C_{n-1}^{(3/2)}
    dp = eval_gegenbauer(n - 1, 1.5, x)
    log_w = math.log(2.0) - np.log1p(-x * x) - 2.0 * np.log(np.abs(dp))
    return x, log_w


def gauss_legendre(n: int, a: float = -1.0, b: float = 1.0) -> QuadratureRule:
    """N-point Gauss-Legendre rule on [a, b]."""
    if n < 1:
        raise ValueError("node count must be >= 1")
    kind = GaussLegendre(a, b)
    t, log_w = _legendre_reference(n)
    half = 0.5 * (b - a)
    return QuadratureRule(half * t + 0.5 * (a + b), log_w + math.log(half), kind)


def build_rule(n: int, kind: GaussLaguerre | GaussLegendre) -> QuadratureRule:
    if isinstance(kind, GaussLaguerre):
        return gauss_laguerre(n, float(kind.alpha))
    if isinstance(kind, GaussLegendre):
        return gauss_legendre(n, kind.a, kind.b)
    raise TypeError(f"unknown rule kind {kind!r}")


def polynomial_roots(poly: AssocLaguerre | Gegenbauer) -> np.ndarray:
    """Real roots, increasing, as eigenvalues of the family's Jacobi matrix."""
    if poly.degree < 1:
        raise ValueError("roots need degree >= 1")
    if isinstance(poly, AssocLaguerre):
        return _tridiagonal_eigenvalues(*_jacobi_laguerre(poly.degree, poly.alpha))
    if isinstance(poly, Gegenbauer):
        return _tridiagonal_eigenvalues(*_jacobi_gegenbauer(poly.degree, poly.alpha))
    raise TypeError(f"unsupported polynomial family {poly!r}")


# ---------------------------------------------------------------------------
# adaptive composite Gauss-Legendre

_PANEL_ORDER = 15
_MAX_PANELS = 200_000


def adaptive_integrate(
    f: Callable[[np.ndarray], np.ndarray],
    breakpoints: Sequence[float],
    abs_tol: float = 1e-10,
    rel_tol: float = 1e-12,
    max_depth: int = 60,
) -> tuple[float, float]:
    """Integrate ``f`` over [breakpoints[0], breakpoints[-1]].

    Every interval between consecutive breakpoints is bisected until the
    parent and child Gauss-Legendre estimates agree.  Endpoints are never
    sampled, so integrable endpoint singularities (log, power) are safe;
    refinement is driven toward them automatically.  Returns
    ``(value, error_estimate)``; raises NumericalError when the tolerance is
    not met.
    """
    t, log_w = _legendre_reference(_PANEL_ORDER)
    w = np.exp(log_w)
    edges = np.unique(np.asarray(breakpoints, dtype=float))
    if len(edges) < 2:
        return 0.0, 0.0
    span = edges[-1] - edges[0]

    def panel_sums(a, b):
        half = 0.5 * (b - a)
        mid = 0.5 * (b + a)
        x = mid[:, None] + half[:, None] * t[None, :]
        vals = np.asarray(f(x.ravel()), dtype=float).reshape(x.shape)
        return half * (vals @ w)

    a = edges[:-1]
    b = edges[1:]
    coarse = panel_sums(a, b)
    total_guess = abs(coarse.sum())
    accepted = 0.0
    err = 0.0
    depth = 0
    while len(a):
        m = 0.5 * (a + b)
        left = panel_sums(a, m)
        right = panel_sums(m, b)
        fine = left + right
        diff = np.abs(fine - coarse)
        if not np.all(np.isfinite(fine)):
            raise NumericalError("non-finite integrand encountered in adaptive quadrature")
        total_guess = max(total_guess, abs(accepted + fine.sum()))
        tol = max(abs_tol, rel_tol * total_guess)
        # length-proportional share, with a floor so endpoint log singularities
        # (panel error ~ panel length) still terminate
        budget = np.maximum(tol * (b - a) / span, tol / 64.0)
        ok = diff <= budget
        accepted += fine[ok].sum()
        err += diff[ok].sum()
        depth += 1
        if depth > max_depth or 2 * (~ok).sum() > _MAX_PANELS:
            raise NumericalError(
                f"adaptive quadrature did not converge: {(~ok).sum()} panels pending, "
                f"error estimate {diff[~ok].sum():.3e}"
            )
        keep = ~ok
        a = np.concatenate([a[keep], m[keep]])
        b = np.concatenate([m[keep], b[keep]])
        coarse = np.concatenate([left[keep], right[keep]])
    return float(accepted), float(err)
