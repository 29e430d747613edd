"""Klein-Gordon particle (pionic atom) bound in a point Coulomb field.

Units: hbar = m0 = c = 1, so lengths are reduced Compton wavelengths of
the bound particle and energies are in m0 c^2.  The coupling is
gamma = Z alpha and the potential V(r) = -gamma / r.

Radial solutions R(r) = N r^lam e^{-beta r} L_{n-l-1}^{(2 lam + 1)}(2 beta r)
with lam = -1/2 + sqrt((l+1/2)^2 - gamma^2), effective quantum number
nu = n - l - 1/2 + sqrt((l+1/2)^2 - gamma^2), eps = (1 + gamma^2/nu^2)^(-1/2)
and beta = gamma eps / nu.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .hydrogenic import BoundState, LaguerreRadial, SeparableDensity, SphericalHarmonicDensity
from .measures import DEFAULT_SPEC, QuadratureSpec, fisher_shannon_complexity
from .specfun import AssocLaguerre

__all__ = [
    "FINE_STRUCTURE",
    "SupercriticalError",
    "PionicState",
    "kg_energy",
    "kg_radial_wavefunction",
    "kg_charge_density",
    "kg_fisher_shannon",
    "schrodinger_fisher_shannon",
    "figure2_scan",
]

FINE_STRUCTURE = 1.0 / 137.035999


class SupercriticalError(ValueError):
    """Z alpha >= l + 1/2: no normalizable Klein-Gordon bound state."""


@dataclass(frozen=True)
class PionicState:
    n: int = 1
    l: int = 0
    m: int = 0
    Z: float = 1.0
    alpha: float = FINE_STRUCTURE

    def __post_init__(self):
        BoundState(self.n, self.l, self.m, self.Z)  # quantum-number checks
        if not self.alpha > 0:
            raise ValueError("fine-structure constant must be positive")
        if self.gamma >= self.l + 0.5:
            raise SupercriticalError(
                f"Z alpha = {self.gamma:.6g} >= l + 1/2 = {self.l + 0.5}: supercritical charge"
            )

    @property
    def gamma(self) -> float:
        return self.Z * self.alpha

    @property
    def s(self) -> float:
        return math.sqrt((self.l + 0.5) ** 2 - self.gamma**2)

    @property
    def lam(self) -> float:
        return self.s - 0.5

    @property
    def nu(self) -> float:
        return self.n - self.l - 0.5 + self.s

    @property
    def epsilon(self) -> float:
        return 1.0 / math.sqrt(1.0 + (self.gamma / self.nu) ** 2)

    @property
    def beta(self) -> float:
        return self.gamma * self.epsilon / self.nu

    @property
    def laguerre(self) -> AssocLaguerre:
        return AssocLaguerre(2.0 * self.lam + 1.0, self.n - self.l - 1)

    @cached_property
    def charge_radial(self) -> LaguerreRadial:
        """(eps + gamma/r) R^2, normalized to unit charge.

        With x = 2 beta r this is C x^(2 lam - 1) e^-x L(x)^2 (eps x + 2 beta gamma).
        """
        return LaguerreRadial(
            1.0 / (2.0 * self.beta),
            2.0 * self.lam - 1.0,
            self.laguerre,
            linear=(2.0 * self.beta * self.gamma, self.epsilon),
        )

    @cached_property
    def probability_radial(self) -> LaguerreRadial:
        """|R|^2 normalized as a probability density (no Lorentz factor)."""
        return LaguerreRadial(1.0 / (2.0 * self.beta), 2.0 * self.lam, self.laguerre)

    @cached_property
    def angular(self) -> SphericalHarmonicDensity:
        return SphericalHarmonicDensity(self.l, self.m)

    def charge(self) -> SeparableDensity:
        return SeparableDensity(self.charge_radial, self.angular)

    def probability(self) -> SeparableDensity:
        return SeparableDensity(self.probability_radial, self.angular)


def kg_energy(state: PionicState) -> float:
    """Bound-state energy eps / (m0 c^2)."""
    return state.epsilon


def kg_radial_wavefunction(state: PionicState, r):
    """R(r) with N fixed by unit total charge, int (eps + gamma/r) R^2 r^2 dr = 1."""
    r = np.asarray(r, dtype=float)
    rad = state.charge_radial
    # C x^(2lam-1) (eps x + 2 beta gamma) = N^2 x^(2lam) (eps + gamma/r) (2 beta)^(-2lam)
    log_n2 = rad.log_coef + 2.0 * state.lam * math.log(2.0 * state.beta)
    x = 2.0 * state.beta * r
    with np.errstate(divide="ignore"):
        return np.exp(0.5 * log_n2 + state.lam * np.log(r) - 0.5 * x) * state.laguerre(x)


def kg_charge_density(state: PionicState, r, theta=0.5 * math.pi):
    """Lorentz-invariant charge density (eps - V) |Psi|^2, unit total charge."""
    return state.charge()(r, theta)


def kg_fisher_shannon(
    Z: float,
    n: int = 1,
    l: int = 0,
    m: int = 0,
    alpha: float = FINE_STRUCTURE,
    density: str = "charge",
    spec: QuadratureSpec = DEFAULT_SPEC,
) -> float:
    """Fisher-Shannon complexity of a Klein-Gordon state.

    ``density="charge"`` (default) uses the normalized charge density.  For
    l = 0 it behaves like r^(2 lam - 1) at the origin and its Fisher integral
    diverges, which raises DivergenceError.  ``density="probability"`` uses
    |Psi|^2 normalized as a probability density.
    """
    state = PionicState(n, l, m, Z, alpha)
    if density == "charge":
        rho = state.charge()
    elif density == "probability":
        rho = state.probability()
    else:
        raise ValueError(f"unknown density kind {density!r}")
    return fisher_shannon_complexity(rho, spec)


def schrodinger_fisher_shannon(Z: float, n: int = 1, l: int = 0, m: int = 0, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    return fisher_shannon_complexity(BoundState(n, l, m, Z).density, spec)


def figure2_scan(z_values, alpha: float = FINE_STRUCTURE, density: str = "charge", spec: QuadratureSpec = DEFAULT_SPEC):
    """Rows (Z, C_FS Klein-Gordon, C_FS Schrodinger) for the ground state."""
    return [
        (Z, kg_fisher_shannon(Z, alpha=alpha, density=density, spec=spec), schrodinger_fisher_shannon(Z, spec=spec))
        for Z in z_values
    ]
