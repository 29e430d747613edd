"""Single and composite information-theoretic measures of separable 3D densities.

A density here is anything with ``.radial`` and ``.angular`` parts, where
the radial part exposes ``scale``, ``log_density(r)``, ``dlog_density(r)``,
``zeros()`` and ``support`` and the angular part is a function of
u = cos(theta) exposing ``log_density(u)``, ``dlog_dtheta(u)``, ``zeros()``
and ``isotropic``.  Radial parts that also provide exact ``moment(k)`` and
``fisher()`` (the Laguerre-type densities) use those.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .hydrogenic import FOUR_PI, DivergenceError
from .specfun import NumericalError, adaptive_integrate, gauss_laguerre, gauss_legendre

__all__ = [
    "QuadratureSpec",
    "MeasureRecord",
    "MeasureReport",
    "GaussianRadial",
    "UniformBallRadial",
    "IsotropicAngular",
    "radial_moment",
    "variance",
    "fisher_information",
    "fisher_routes",
    "shannon_parts",
    "shannon_entropy",
    "entropic_moment",
    "disequilibrium",
    "renyi_entropy",
    "entropy_power",
    "lmc_complexity",
    "fisher_shannon_complexity",
    "cramer_rao_complexity",
]

# ln of the relative size below which a radial tail is dropped
_TAIL_DROP = 80.0


@dataclass(frozen=True)
class QuadratureSpec:
    radial_nodes: int = 200
    angular_nodes: int = 128
    split_at_roots: bool = True
    tol: float = 1e-10

    def __post_init__(self):
        if self.radial_nodes < 2 or self.angular_nodes < 2:
            raise ValueError("node counts must be >= 2")
        if not self.tol > 0:
            raise ValueError("tolerance must be positive")


DEFAULT_SPEC = QuadratureSpec()


def _parts(density):
    radial = getattr(density, "radial", density)
    angular = getattr(density, "angular", None)
    return radial, angular


# ---------------------------------------------------------------------------
# reference shapes


class GaussianRadial:
    """Radial part of an isotropic Gaussian with standard deviation sigma per axis."""

    support = math.inf

    def __init__(self, sigma: float = 1.0):
        self.sigma = float(sigma)
        self.scale = self.sigma
        self._log_c = math.log(FOUR_PI) - 1.5 * math.log(2.0 * math.pi * self.sigma**2)

    def log_density(self, r):
        r = np.asarray(r, dtype=float)
        return self._log_c - r * r / (2.0 * self.sigma**2)

    def __call__(self, r):
        return np.exp(self.log_density(r))

    def dlog_density(self, r):
        return -np.asarray(r, dtype=float) / self.sigma**2

    def zeros(self):
        return np.empty(0)


class UniformBallRadial:
    """Radial part of the uniform density on the ball of given radius."""

    def __init__(self, radius: float = 1.0):
        self.support = float(radius)
        self.scale = float(radius)
        self._log_c = math.log(3.0 / radius**3)

    def log_density(self, r):
        r = np.asarray(r, dtype=float)
        return np.where(r <= self.support, self._log_c, -np.inf)

    def __call__(self, r):
        return np.exp(self.log_density(r))

    def dlog_density(self, r):
        return np.zeros_like(np.asarray(r, dtype=float))

    def zeros(self):
        return np.empty(0)


class IsotropicAngular:
    isotropic = True

    def log_density(self, u):
        return np.full_like(np.asarray(u, dtype=float), -math.log(FOUR_PI))

    def __call__(self, u):
        return np.exp(self.log_density(u))

    def dlog_dtheta(self, u):
        return np.zeros_like(np.asarray(u, dtype=float))

    def zeros(self):
        return np.empty(0)

    def fisher(self):
        return 0.0


class SimpleDensity:
    def __init__(self, radial, angular=None):
        self.radial = radial
        self.angular = angular if angular is not None else IsotropicAngular()


# ---------------------------------------------------------------------------
# radial / angular integration kernels


def _radial_cutoff(log_g, x_start: float) -> tuple[float, float]:
    """(x beyond which exp(log_g) is negligible against its peak, log of the peak).

    The cut sits just past the last grid point within _TAIL_DROP of the peak,
    so a grid point landing on a node (log_g = -inf) cannot truncate a lobe.
    """
    x_max = max(2.0 * x_start, 40.0)
    for _ in range(40):
        xs = np.linspace(x_max / 4000, x_max, 4000)
        vals = log_g(xs)
        vals = np.where(np.isfinite(vals), vals, -np.inf)
        peak = vals.max()
        keep = vals >= peak - _TAIL_DROP
        if not keep[-1]:
            return float(xs[np.flatnonzero(keep)[-1] + 1]), float(peak)
        x_max *= 2.0
    raise NumericalError("radial density tail does not decay")


def _log_peak(log_g, upper: float) -> float:
    xs = np.linspace(upper / 4000, upper, 4000, endpoint=False)
    vals = log_g(xs)
    return float(vals[np.isfinite(vals)].max())


def _radial_integral(radial, log_weight, factor=None, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """int_0^inf exp(log_weight(r)) * factor(r) dr, split at radial zeros.

    Integration runs in x = r/scale with the integrand divided by its peak,
    so the panel layout and the relative accuracy are identical for every
    member of a scaling family.
    """
    ell = radial.scale
    xz = np.asarray(radial.zeros(), dtype=float) / ell
    last = float(xz[-1]) if len(xz) else 0.0
    support = radial.support / ell

    def log_g(x):
        with np.errstate(divide="ignore", invalid="ignore"):
            return log_weight(ell * x)

    if math.isinf(support):
        upper, peak = _radial_cutoff(log_g, max(last, 1.0))
    else:
        upper = support
        peak = _log_peak(log_g, upper)
    points = [0.0, upper]
    if spec.split_at_roots:
        points += [z for z in xz if z < upper]

    def g(x):
        r = ell * x
        with np.errstate(invalid="ignore", over="ignore", divide="ignore"):
            vals = np.exp(log_weight(r) - peak)
            if factor is not None:
                vals = vals * factor(r)
        return np.where(np.isfinite(vals), vals, 0.0)

    value, _ = adaptive_integrate(g, sorted(points), abs_tol=spec.tol / 10.0)
    return ell * math.exp(peak) * value


def _angular_integral(angular, log_weight, factor=None, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """2 pi int_{-1}^{1} exp(log_weight(u)) * factor(u) du."""
    points = [-1.0, 1.0]
    if spec.split_at_roots:
        points += list(np.asarray(angular.zeros(), dtype=float))

    def g(u):
        with np.errstate(invalid="ignore", over="ignore"):
            vals = np.exp(log_weight(u))
            if factor is not None:
                vals = vals * factor(u)
        return np.where(np.isfinite(vals), vals, 0.0)

    value, _ = adaptive_integrate(g, sorted(points), abs_tol=spec.tol / 10.0)
    return 2.0 * math.pi * value


def _xlogx(log_p):
    # p ln p from ln p, with the p -> 0 limit
    return np.where(np.isfinite(log_p), np.exp(log_p) * log_p, 0.0)


# ---------------------------------------------------------------------------
# single measures


def radial_moment(density, k: float, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """<r^k> = int D(r) r^(k+2) dr."""
    radial, _ = _parts(density)
    if hasattr(radial, "moment"):
        return radial.moment(k)
    return _radial_integral(radial, lambda r: radial.log_density(r) + (k + 2.0) * np.log(r), spec=spec)


def variance(density, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """<r^2> - <r>^2."""
    return radial_moment(density, 2, spec) - radial_moment(density, 1, spec) ** 2


def _radial_fisher(radial, spec):
    if hasattr(radial, "fisher"):
        return radial.fisher(spec.radial_nodes)
    return _radial_integral(radial, lambda r: radial.log_density(r) + 2.0 * np.log(r), lambda r: radial.dlog_density(r) ** 2, spec)


def _angular_fisher(angular, spec):
    if angular.isotropic:
        return 0.0
    if hasattr(angular, "fisher"):
        return angular.fisher()
    rule = gauss_legendre(spec.angular_nodes)
    u = rule.nodes
    return float(2.0 * math.pi * np.dot(rule.weights, np.exp(angular.log_density(u)) * angular.dlog_dtheta(u) ** 2))


def _fisher_decomposed(density, spec):
    radial, angular = _parts(density)
    f_r = _radial_fisher(radial, spec)
    f_a = _angular_fisher(angular, spec)
    return f_r + (radial_moment(radial, -2, spec) * f_a if f_a else 0.0)


def _fisher_direct(density, spec):
    """Tensor-product quadrature of |grad rho|^2 / rho over R^3.

    Radial Gauss-Laguerre in x = r/scale (weights carry e^x back in logs),
    Gauss-Legendre in u = cos(theta); no node sits on r = 0 or u = +-1.
    """
    radial, angular = _parts(density)
    ell = radial.scale
    rr = gauss_laguerre(spec.radial_nodes, 0.0)
    ru = gauss_legendre(spec.angular_nodes)
    r = ell * rr.nodes[:, None]
    u = ru.nodes[None, :]
    log_rho = density.log_density(r, u)
    dr, dt = density.grad_log(r, u)
    with np.errstate(invalid="ignore", over="ignore"):
        g = np.exp(log_rho + rr.log_weights[:, None] + rr.nodes[:, None]) * (dr**2 + dt**2) * r**2
    g = np.where(np.isfinite(g), g, 0.0)
    return float(2.0 * math.pi * ell * np.sum(g * ru.weights[None, :]))


def fisher_routes(density, spec: QuadratureSpec = DEFAULT_SPEC) -> tuple[float, float]:
    """(direct 2D quadrature, radial + <r^-2> x angular decomposition)."""
    return _fisher_direct(density, spec), _fisher_decomposed(density, spec)


def fisher_information(density, spec: QuadratureSpec = DEFAULT_SPEC, check: bool = False) -> float:
    """int |grad rho|^2 / rho d^3r via the radial/angular decomposition.

    With ``check=True`` the direct tensor quadrature is computed as well and
    a NumericalError is raised if the two disagree beyond 1e-6 relative.
    """
    value = _fisher_decomposed(density, spec)
    if check:
        direct = _fisher_direct(density, spec)
        if abs(direct - value) > max(spec.tol, 1e-6 * abs(value)):
            raise NumericalError(f"Fisher routes disagree: direct {direct!r} vs decomposed {value!r}")
    return value


def shannon_parts(density, spec: QuadratureSpec = DEFAULT_SPEC) -> tuple[float, float]:
    """(S_r, S_Omega) with S_r = -int D ln D r^2 dr and S_Omega = -int Pi ln Pi dOmega."""
    radial, angular = _parts(density)
    s_r = -_radial_integral(
        radial,
        lambda r: 2.0 * np.log(r) + radial.log_density(r),
        lambda r: radial.log_density(r),
        spec,
    )
    if angular is None or angular.isotropic:
        s_a = math.log(FOUR_PI)
    else:
        s_a = -_angular_integral(angular, angular.log_density, angular.log_density, spec)
    return s_r, s_a


def shannon_entropy(density, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """-int rho ln rho d^3r."""
    s_r, s_a = shannon_parts(density, spec)
    return s_r + s_a


def entropic_moment(density, q: float, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """W_q = int rho^q d^3r, q > 0."""
    if not q > 0:
        raise ValueError(f"entropic moments need q > 0, got {q}")
    radial, angular = _parts(density)
    w_r = _radial_integral(radial, lambda r: q * radial.log_density(r) + 2.0 * np.log(r), spec=spec)
    if angular is None or angular.isotropic:
        w_a = FOUR_PI ** (1.0 - q)
    else:
        w_a = _angular_integral(angular, lambda u: q * angular.log_density(u), spec=spec)
    return w_r * w_a


def disequilibrium(density, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    return entropic_moment(density, 2.0, spec)


def renyi_entropy(density, q: float, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    if q == 1:
        raise ValueError("Renyi entropy at q = 1 is the Shannon entropy")
    return math.log(entropic_moment(density, q, spec)) / (1.0 - q)


def entropy_power(density_or_entropy, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """J = exp(2S/3) / (2 pi e); accepts a density or an entropy value."""
    if isinstance(density_or_entropy, (int, float)):
        s = float(density_or_entropy)
    else:
        s = shannon_entropy(density_or_entropy, spec)
    return math.exp(2.0 * s / 3.0) / (2.0 * math.pi * math.e)


def lmc_complexity(density, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    return disequilibrium(density, spec) * math.exp(shannon_entropy(density, spec))


def fisher_shannon_complexity(density, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    return fisher_information(density, spec) * entropy_power(density, spec)


def cramer_rao_complexity(density, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    return fisher_information(density, spec) * variance(density, spec)


# ---------------------------------------------------------------------------
# reports


@dataclass
class MeasureRecord:
    name: str
    numeric: float
    analytic: float | None = None
    abs_dev: float | None = None
    rel_dev: float | None = None

    def __post_init__(self):
        if self.analytic is not None:
            self.abs_dev = abs(self.numeric - self.analytic)
            self.rel_dev = self.abs_dev / abs(self.analytic) if self.analytic else self.abs_dev


@dataclass
class MeasureReport:
    state: dict
    records: list[MeasureRecord] = field(default_factory=list)

    def add(self, name: str, numeric: float, analytic: float | None = None) -> MeasureRecord:
        if not math.isfinite(numeric):
            raise NumericalError(f"{name}: non-finite value {numeric!r}")
        rec = MeasureRecord(name, float(numeric), None if analytic is None else float(analytic))
        self.records.append(rec)
        return rec

    def __getitem__(self, name: str) -> MeasureRecord:
        for rec in self.records:
            if rec.name == name:
                return rec
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {"state": self.state, "measures": [asdict(r) for r in self.records]}


__all__ += ["DivergenceError", "SimpleDensity", "DEFAULT_SPEC"]
