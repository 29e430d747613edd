"""Hydrogenic stationary-state densities in atomic units.

The radial density of a Coulomb bound state, Schrodinger or Klein-Gordon,
has the shape

    D(r) = C x^a e^{-x} P(x)^2 S(x),    x = r / scale,

with P an associated Laguerre polynomial and S(x) = s0 + s1 x positive on
[0, inf).  ``LaguerreRadial`` stores that shape once; Gauss-Laguerre
quadrature in x is then exact for moments and, when S is constant, for the
radial Fisher integral too.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.special import logsumexp

from .specfun import AssocLaguerre, Gegenbauer, gauss_laguerre, gauss_legendre, ln_gamma, polynomial_roots

__all__ = [
    "DivergenceError",
    "BoundState",
    "LaguerreRadial",
    "SphericalHarmonicDensity",
    "SeparableDensity",
    "hydrogenic_radial",
    "radial_density",
    "angular_density",
    "full_density",
    "energy",
]

FOUR_PI = 4.0 * math.pi


class DivergenceError(ValueError):
    """The requested integral does not converge for this density."""


@dataclass(frozen=True)
class BoundState:
    n: int
    l: int = 0
    m: int = 0
    Z: float = 1.0

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ValueError("n must be an integer >= 1")
        if int(self.l) != self.l or self.l < 0:
            raise ValueError("l must be a non-negative integer")
        if self.l > self.n - 1:
            raise ValueError("l must satisfy l ≤ n−1")
        if int(self.m) != self.m or abs(self.m) > self.l:
            raise ValueError("m must satisfy |m| ≤ l")
        if not self.Z > 0:
            raise ValueError("Z must be positive")

    @property
    def energy(self) -> float:
        return -self.Z**2 / (2.0 * self.n**2)

    @cached_property
    def radial(self) -> LaguerreRadial:
        return hydrogenic_radial(self.n, self.l, self.Z)

    @cached_property
    def angular(self) -> SphericalHarmonicDensity:
        return SphericalHarmonicDensity(self.l, self.m)

    @cached_property
    def density(self) -> SeparableDensity:
        return SeparableDensity(self.radial, self.angular)


class LaguerreRadial:
    """Radial density C x^a e^{-x} P(x)^2 (s0 + s1 x), x = r/scale.

    ``log_coef`` is ln C.  Pass ``log_coef=None`` to normalize
    int D r^2 dr = 1 by exact quadrature.
    """

    def __init__(self, scale: float, power: float, poly: AssocLaguerre, linear=(1.0, 0.0), log_coef=None):
        if not scale > 0:
            raise ValueError("scale must be positive")
        s0, s1 = map(float, linear)
        if s0 < 0 or s1 < 0 or s0 + s1 == 0:
            raise ValueError("linear factor must be positive on [0, inf)")
        self.scale = float(scale)
        self.power = float(power)
        self.poly = poly
        self.linear = (s0, s1)
        if log_coef is None:
            log_coef = -self._log_poly_integral(power + 2.0) - 3.0 * math.log(self.scale)
        self.log_coef = float(log_coef)

    support = math.inf

    def _log_poly_integral(self, alpha: float) -> float:
        """ln int_0^inf x^alpha e^-x P^2 S dx, exact by Gauss-Laguerre."""
        if alpha <= -1:
            raise DivergenceError(f"integrand behaves like x^{alpha:.6g} at the origin")
        s0, s1 = self.linear
        nodes = self.poly.degree + 1 + (s1 != 0)
        rule = gauss_laguerre(nodes, float(alpha))
        x = rule.nodes
        p = self.poly(x)
        # a node may coincide with a root of P (e.g. x=2 for L_1^(1), L_2^(2))
        with np.errstate(divide="ignore"):
            log_p2 = 2.0 * np.log(np.abs(p))
        return float(logsumexp(rule.log_weights + log_p2 + np.log(s0 + s1 * x)))

    def _s(self, x):
        s0, s1 = self.linear
        return s0 + s1 * x

    def log_density(self, r):
        x = np.asarray(r, dtype=float) / self.scale
        with np.errstate(divide="ignore"):
            out = (
                self.log_coef
                + (self.power * np.log(x) if self.power else 0.0)
                - x
                + 2.0 * self.poly.log_abs(x)
                + np.log(self._s(x))
            )
        return out

    def __call__(self, r):
        return np.exp(self.log_density(r))

    density = __call__

    def dlog_density(self, r):
        """D'(r)/D(r)."""
        x = np.asarray(r, dtype=float) / self.scale
        s1 = self.linear[1]
        with np.errstate(divide="ignore", invalid="ignore"):
            d = self.power / x - 1.0 + 2.0 * self.poly.dlog(x) + s1 / self._s(x)
        return d / self.scale

    def zeros(self) -> np.ndarray:
        if self.poly.degree == 0:
            return np.empty(0)
        return self.scale * polynomial_roots(self.poly)

    def moment(self, k: float) -> float:
        """<r^k> = int D r^(k+2) dr, exact."""
        log_int = self._log_poly_integral(self.power + k + 2.0)
        return math.exp(self.log_coef + (k + 3.0) * math.log(self.scale) + log_int)

    def fisher(self, nodes: int = 200) -> float:
        """int (D')^2 / D r^2 dr.

        In x the integrand is C scale x^a e^-x B(x)^2 / S(x) with
        B = a P S - x P S + 2 x P' S + x P S'; exact for constant S.
        """
        a = self.power
        if a <= -1:
            raise DivergenceError(
                f"radial Fisher integrand behaves like x^{a:.6g} at the origin and is not integrable"
            )
        s0, s1 = self.linear
        if s1 == 0:
            nodes = self.poly.degree + 2
        rule = gauss_laguerre(int(nodes), a)
        x = rule.nodes
        p = self.poly(x)
        dp = self.poly.derivative(x)
        s = self._s(x)
        b = a * p * s - x * p * s + 2.0 * x * dp * s + x * p * s1
        with np.errstate(divide="ignore"):
            log_terms = rule.log_weights + 2.0 * np.log(np.abs(b)) - np.log(s)
        return math.exp(self.log_coef + math.log(self.scale) + float(logsumexp(log_terms)))


def hydrogenic_radial(n: int, l: int, Z: float) -> LaguerreRadial:
    """D_nl(r) = N^2 e^{-x} x^{2l} [L_{n-l-1}^{(2l+1)}(x)]^2, x = 2Zr/n."""
    log_norm2 = (
        3.0 * math.log(2.0 * Z / n)
        + ln_gamma(n - l)
        - math.log(2.0 * n)
        - ln_gamma(n + l + 1)
    )
    return LaguerreRadial(n / (2.0 * Z), 2 * l, AssocLaguerre(2.0 * l + 1.0, n - l - 1), log_coef=log_norm2)


class SphericalHarmonicDensity:
    """|Y_lm|^2 as a function of u = cos(theta); phi-independent.

    |Y_lm|^2 = K (1-u^2)^|m| [C_{l-|m|}^{(|m|+1/2)}(u)]^2 with K fixed by
    orthonormality of the standard harmonics.
    """

    def __init__(self, l: int, m: int = 0):
        if l < 0 or abs(m) > l:
            raise ValueError("need l >= 0 and |m| <= l")
        self.l = int(l)
        self.m = abs(int(m))
        mm = self.m
        self.poly = Gegenbauer(mm + 0.5, self.l - mm)
        # (2m-1)!! = 2^m Gamma(m+1/2)/sqrt(pi)
        log_dfact = mm * math.log(2.0) + ln_gamma(mm + 0.5) - 0.5 * math.log(math.pi)
        self.log_coef = (
            math.log((2 * self.l + 1) / FOUR_PI)
            + ln_gamma(self.l - mm + 1)
            - ln_gamma(self.l + mm + 1)
            + 2.0 * log_dfact
        )

    @property
    def isotropic(self) -> bool:
        return self.l == 0

    def log_density(self, u):
        u = np.asarray(u, dtype=float)
        with np.errstate(divide="ignore"):
            out = self.log_coef + 2.0 * np.log(np.abs(self.poly(u)))
            if self.m:
                out = out + self.m * np.log1p(-u * u)
        return out

    def __call__(self, u):
        return np.exp(self.log_density(u))

    density = __call__

    def dlog_dtheta(self, u):
        """d ln Pi / d theta at u = cos(theta), theta in (0, pi)."""
        u = np.asarray(u, dtype=float)
        sin = np.sqrt(1.0 - u * u)
        with np.errstate(divide="ignore", invalid="ignore"):
            dlog_du = 2.0 * self.poly.derivative(u) / self.poly(u) - 2.0 * self.m * u / (1.0 - u * u)
        return -sin * dlog_du

    def zeros(self) -> np.ndarray:
        """Interior zeros in u."""
        if self.poly.degree == 0:
            return np.empty(0)
        return polynomial_roots(self.poly)

    def fisher(self) -> float:
        """int (d_theta Pi)^2 / Pi dOmega, exact Gauss-Legendre."""
        rule = gauss_legendre(self.l + 2)
        u = rule.nodes
        c = self.poly(u)
        dc = self.poly.derivative(u)
        one = 1.0 - u * u
        g = 4.0 * np.exp(self.log_coef) * one ** (self.m - 1) * (dc * one - self.m * u * c) ** 2
        return float(2.0 * math.pi * np.dot(rule.weights, g))


class SeparableDensity:
    """rho(r, theta) = D(r) Pi(theta), with int D r^2 dr = int Pi dOmega = 1."""

    def __init__(self, radial, angular):
        self.radial = radial
        self.angular = angular

    def __call__(self, r, theta):
        return self.radial(r) * self.angular(np.cos(theta))

    def log_density(self, r, u):
        return self.radial.log_density(r) + self.angular.log_density(u)

    def grad_log(self, r, u):
        """(d_r ln rho, r^-1 d_theta ln rho) on a broadcast grid."""
        r = np.asarray(r, dtype=float)
        dr = self.radial.dlog_density(r) + np.zeros_like(np.asarray(u, dtype=float))
        dt = self.angular.dlog_dtheta(u) / r
        return dr, dt


def radial_density(state: BoundState, r):
    return state.radial(r)


def angular_density(l: int, m: int, theta):
    return SphericalHarmonicDensity(l, m)(np.cos(theta))


def full_density(state: BoundState, r, theta):
    return state.density(r, theta)


def energy(state: BoundState) -> float:
    return state.energy
