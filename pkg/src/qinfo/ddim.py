"""Circular states (l = m = n-1) of D-dimensional hydrogenic systems."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .specfun import NumericalError, adaptive_integrate, digamma, ln_gamma

__all__ = [
    "CircularStateD",
    "circular_density",
    "circular_norm",
    "lmc_circular_analytic",
    "lmc_circular_numeric",
    "figure3_scan",
]


@dataclass(frozen=True)
class CircularStateD:
    n: int
    D: int
    Z: float = 1.0

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ValueError("n must be an integer >= 1")
        if int(self.D) != self.D or self.D < 2:
            raise ValueError("D must be an integer >= 2")
        if not self.Z > 0:
            raise ValueError("Z must be positive")

    @property
    def eta(self) -> float:
        """Hyperquantum number n + (D-3)/2."""
        return self.n + (self.D - 3) / 2.0

    @property
    def lam(self) -> float:
        return self.eta / (2.0 * self.Z)

    @property
    def log_prefactor(self) -> float:
        n, D = self.n, self.D
        return (
            (D + 2 - 2 * n) * math.log(2.0)
            + D * math.log(self.Z)
            - 0.5 * (D - 1) * math.log(math.pi)
            - D * math.log(2 * n + D - 3)
            - ln_gamma(n)
            - ln_gamma(n + 0.5 * (D - 1))
        )


def circular_density(state: CircularStateD, r, angles=()):
    """Density at radius r and hyperangles theta_1 .. theta_{D-2}.

    Missing angles are taken as pi/2, where every sine factor equals one.
    """
    x = np.asarray(r, dtype=float) / state.lam
    k = 2 * state.n - 2
    log_rho = state.log_prefactor - x
    if k:
        with np.errstate(divide="ignore"):
            log_rho = log_rho + k * np.log(x)
            for theta in angles:
                log_rho = log_rho + k * np.log(np.sin(theta))
    return np.exp(log_rho)


def _gamma_type(power: float, rate: float, with_log: bool, tol: float) -> float:
    """int_0^inf x^power e^{-rate x} (ln x)^{with_log} dx by adaptive panels."""
    peak = max(power / rate, 1.0)
    upper = peak + 10.0 * math.sqrt(power + 1.0) / rate + 100.0 / rate

    def f(x):
        with np.errstate(divide="ignore"):
            v = np.exp(power * np.log(x) - rate * x)
        return v * np.log(x) if with_log else v

    value, _ = adaptive_integrate(f, [0.0, peak, upper], abs_tol=tol)
    return value


def _sine_type(power: float, with_log: bool, tol: float) -> float:
    """int_0^pi sin^power t (ln sin t)^{with_log} dt."""

    def f(t):
        s = np.sin(t)
        with np.errstate(divide="ignore"):
            v = np.exp(power * np.log(s))
        return v * np.log(s) if with_log else v

    value, _ = adaptive_integrate(f, [0.0, 0.5 * math.pi, math.pi], abs_tol=tol)
    return value


def circular_norm(state: CircularStateD, tol: float = 1e-13) -> float:
    """Total probability of the circular density by separable 1D quadratures."""
    n, D = state.n, state.D
    k = 2 * n - 2
    total = math.exp(state.log_prefactor + D * math.log(state.lam)) * _gamma_type(k + D - 1, 1.0, False, tol)
    total *= 2.0 * math.pi
    for j in range(1, D - 1):
        total *= _sine_type(k + D - 1 - j, False, tol)
    return total


def lmc_circular_analytic(n: int, D: int) -> float:
    if n < 1 or D < 2:
        raise ValueError("need n >= 1 and D >= 2")
    log_c = (
        ln_gamma(n - 0.5)
        + ln_gamma(2 * n + 0.5 * (D - 3))
        - (2 * n + D - 2) * math.log(2.0)
        - 0.5 * math.log(math.pi)
        - ln_gamma(n + 0.5 * (D - 1))
    )
    expo = 2 * n + D - 2 - (n - 1) * (digamma(n) + digamma(n + 0.5 * (D - 1)))
    return math.exp(log_c + expo)


def lmc_circular_numeric(state: CircularStateD, tol: float = 1e-13) -> float:
    """D[rho] exp(S[rho]) from separable radial and per-angle quadratures.

    The density is renormalized by its quadrature norm, so the result does
    not depend on the prefactor being exact.
    """
    n, D = state.n, state.D
    k = 2 * n - 2
    p_r = k + D - 1
    r0 = _gamma_type(p_r, 1.0, False, tol)
    # ln rho = ln K - x + k ln x + k sum_j ln sin t_j
    mean_x = _gamma_type(p_r + 1, 1.0, False, tol) / r0
    mean_lnx = _gamma_type(p_r, 1.0, True, tol) / r0 if k else 0.0
    r2 = _gamma_type(2 * k + D - 1, 2.0, False, tol)

    log_norm = state.log_prefactor + D * math.log(state.lam) + math.log(r0) + math.log(2.0 * math.pi)
    log_w2 = 2.0 * state.log_prefactor + D * math.log(state.lam) + math.log(r2) + math.log(2.0 * math.pi)
    mean_lnsin = 0.0
    for j in range(1, D - 1):
        s0 = _sine_type(k + D - 1 - j, False, tol)
        log_norm += math.log(s0)
        log_w2 += math.log(_sine_type(2 * k + D - 1 - j, False, tol))
        if k:
            mean_lnsin += _sine_type(k + D - 1 - j, True, tol) / s0
    entropy = -(state.log_prefactor - log_norm) + mean_x - k * mean_lnx - k * mean_lnsin
    w2 = math.exp(log_w2 - 2.0 * log_norm)
    value = w2 * math.exp(entropy)
    if not math.isfinite(value):
        raise NumericalError(f"non-finite LMC complexity for {state}")
    return value


def figure3_scan(ns=(1, 2, 3), d_max: int = 12, d_min: int = 2) -> list[tuple[int, int, float]]:
    """Rows (n, D, C_LMC) from the closed form."""
    if d_min < 2 or d_max < d_min:
        raise ValueError("need 2 <= d_min <= d_max")
    return [(n, D, lmc_circular_analytic(n, D)) for n in ns for D in range(d_min, d_max + 1)]
