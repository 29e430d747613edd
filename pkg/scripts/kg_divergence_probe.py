"""Why the ground-state Klein-Gordon charge density has no Fisher information.

Prints the origin exponent of the charge density, the radial Fisher
integrand cut off at r = eps (which grows like ln(1/eps)), and the finite
alternatives: the |Psi|^2 probability density and the l = 1 charge density.
"""
from dataclasses import dataclass

import numpy as np

from qinfo.hydrogenic import DivergenceError
from qinfo.kleingordon import PionicState, kg_fisher_shannon, schrodinger_fisher_shannon
from qinfo.specfun import adaptive_integrate


@dataclass(frozen=True)
class ProbeConfig:
    z_values: tuple = (1e-3, 1.0, 10.0, 20.0, 30.0, 40.0, 50.0, 60.0, 68.0)
    cutoffs: tuple = (1e-2, 1e-4, 1e-6, 1e-8)
    z_cut: float = 30.0


def truncated_radial_fisher(state: PionicState, eps: float) -> float:
    rad = state.charge_radial
    x_eps = eps / rad.scale

    def f(x):
        r = x * rad.scale
        return rad(r) * rad.dlog_density(r) ** 2 * r * r

    zeros = [z / rad.scale for z in rad.zeros()]
    val, _ = adaptive_integrate(f, [x_eps, *zeros, 60.0], abs_tol=1e-12)
    return val * rad.scale


def main(cfg: ProbeConfig = ProbeConfig()):
    print("Z      2lam-1        C_FS charge   C_FS |Psi|^2   C_FS Schrodinger")
    for Z in cfg.z_values:
        st = PionicState(1, 0, 0, Z)
        try:
            charge = f"{kg_fisher_shannon(Z):.6f}"
        except DivergenceError:
            charge = "diverges"
        prob = kg_fisher_shannon(Z, density="probability")
        print(f"{Z:<6g} {2 * st.lam - 1:<13.6g} {charge:<13s} {prob:<14.6f} {schrodinger_fisher_shannon(Z):.6f}")

    st = PionicState(1, 0, 0, cfg.z_cut)
    print(f"\nradial Fisher of the charge density cut at r = eps, Z = {cfg.z_cut:g} (Bohr-scaled eps)")
    a = 2 * st.lam - 1
    vals = [truncated_radial_fisher(st, eps / st.gamma) / st.gamma**2 for eps in cfg.cutoffs]
    for k, (eps, val) in enumerate(zip(cfg.cutoffs, vals)):
        line = f"  eps = {eps:<8g} F_r(eps) = {val:<10.5g}"
        if k >= 2:
            # F_r(eps) = C + K eps^(a+1): successive increments shrink the cutoff ratio to the power a+1
            ratio = (vals[k] - vals[k - 1]) / (vals[k - 1] - vals[k - 2])
            line += f" increment ratio {ratio:.4f}, predicted {(cfg.cutoffs[k - 1] / eps) ** -(a + 1):.4f}"
        print(line)

    print("\nl = 1 charge density (finite): n = 2")
    for Z in (1.0, 30.0, 60.0, 120.0):
        print(f"  Z = {Z:<6g} C_FS = {kg_fisher_shannon(Z, n=2, l=1):.6f}")


if __name__ == "__main__":
    main()
