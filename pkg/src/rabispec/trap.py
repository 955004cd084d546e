"""Trap and cavity-mode geometry.

Evaluates the standing-wave dipole-trap potential and the cavity QED mode
function, enumerates trap wells along the axis, applies the coupling-based
well selection, and generates Gauss-Hermite thermal position samples.

Phase convention: both standing waves vary as sin(k z) with a field node
at the mirror z = 0.  Wells are trap-intensity antinodes (potential
minima for a red trap), spaced half the trap wavelength.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import SystemParams


@dataclass(frozen=True)
class Position:
    """Axial coordinate z (0 at one mirror) and transverse radius rho."""

    z: float
    rho: float = 0.0

    def __post_init__(self):
        if self.rho < 0:
            raise ValueError("rho must be non-negative")


@dataclass(frozen=True)
class WellSite:
    index: int
    z_center: float
    psi_abs: float
    selected: bool


@dataclass(frozen=True)
class ThermalEnsemble:
    """Quadrature nodes approximating a thermal position distribution."""

    sigma_z: float
    sigma_x: float
    nodes: tuple  # of (Position, weight), weights sum to 1


def fort_potential(pos: Position, params: SystemParams) -> float:
    """Trap potential U(r)/h in Hz (signed, <= 0 for a red trap)."""
    axial = math.sin(params.k_F() * pos.z) ** 2
    radial = math.exp(-2.0 * pos.rho**2 / params.waist_F**2)
    return params.u0_over_h * axial * radial


def mode_function(pos: Position, params: SystemParams) -> float:
    """Cavity QED mode function psi(r) in [-1, 1]."""
    return math.sin(params.k_A() * pos.z) * math.exp(-pos.rho**2 / params.waist_A**2)


def enumerate_wells(params: SystemParams, threshold: float = 0.87) -> list[WellSite]:
    """All trap wells inside the cavity with their |psi| and selection flag.

    Well j sits at z_j = (2j+1) lambda_F / 4.
    """
    if not 0.0 < threshold <= 1.0:
        raise ValueError("threshold must be in (0, 1]")
    wells = []
    k_A = params.k_A()
    j = 0
    while True:
        z = (2 * j + 1) * params.lambda_F / 4.0
        if z >= params.cavity_length:
            break
        psi_abs = abs(math.sin(k_A * z))
        wells.append(WellSite(j, z, psi_abs, psi_abs >= threshold))
        j += 1
    return wells


def selected_wells(params: SystemParams, threshold: float = 0.87,
                   max_wells: int | None = None) -> list[WellSite]:
    """Wells passing the threshold; optionally only the max_wells best-coupled.

    The capped list is ordered by descending |psi| (index breaks ties);
    the uncapped list keeps axial order.
    """
    sel = [w for w in enumerate_wells(params, threshold) if w.selected]
    if max_wells is not None:
        sel = sorted(sel, key=lambda w: (-w.psi_abs, w.index))[:max_wells]
    return sel


def thermal_widths(params: SystemParams) -> tuple[float, float, float]:
    """Gaussian position widths (sigma_z, sigma_x, sigma_rho).

    Harmonic approximation around a well center at temperature
    k_B T = temperature_fraction * |U0|:
      sigma_z   = sqrt(fraction / 2) / k_F
      sigma_x   = (w_F / 2) sqrt(fraction)      (per Cartesian axis)
      sigma_rho = sqrt(2) sigma_x
    All mass-independent.
    """
    frac = params.temperature_fraction
    sigma_z = math.sqrt(frac / 2.0) / params.k_F()
    sigma_x = 0.5 * params.waist_F * math.sqrt(frac)
    return sigma_z, sigma_x, math.sqrt(2.0) * sigma_x


def _folded_hermite(n: int):
    """Nonnegative Gauss-Hermite nodes with +/- weights folded together."""
    t, v = np.polynomial.hermite.hermgauss(n)
    folded = {}
    for tk, vk in zip(t, v):
        key = round(abs(float(tk)), 14)
        folded[key] = folded.get(key, 0.0) + float(vk)
    taus = sorted(folded)
    weights = [folded[k] / math.sqrt(math.pi) for k in taus]
    return taus, weights


def quadrature_nodes(well: WellSite, widths, n_axial: int, n_radial: int) -> ThermalEnsemble:
    """Positions and weights for thermal averaging around one well.

    Axial: n_axial Gauss-Hermite nodes at z_center + sqrt(2) sigma_z t.
    Radial: n_radial Gauss-Hermite nodes per Cartesian axis; the 2-D
    product grid is collapsed onto rho = sqrt(x^2 + y^2) by symmetry.
    Zero widths collapse the corresponding direction to a single node.
    """
    if n_axial < 1 or n_radial < 1:
        raise ValueError("quadrature sizes must be at least 1")
    sigma_z, sigma_x = widths[0], widths[1]

    if sigma_z == 0.0 or n_axial == 1:
        axial = [(well.z_center, 1.0)]
    else:
        t, v = np.polynomial.hermite.hermgauss(n_axial)
        axial = [(well.z_center + math.sqrt(2.0) * sigma_z * float(tk),
                  float(vk) / math.sqrt(math.pi)) for tk, vk in zip(t, v)]

    if sigma_x == 0.0 or n_radial == 1:
        radial = [(0.0, 1.0)]
    else:
        taus, us = _folded_hermite(n_radial)
        radial = []
        for p in range(len(taus)):
            xp = math.sqrt(2.0) * sigma_x * taus[p]
            for q in range(p, len(taus)):
                xq = math.sqrt(2.0) * sigma_x * taus[q]
                w = us[p] * us[q] * (2.0 if q > p else 1.0)
                radial.append((math.hypot(xp, xq), w))

    nodes = [(Position(z, rho), wz * wr)
             for z, wz in axial for rho, wr in radial]
    total = sum(w for _, w in nodes)
    nodes = tuple((pos, w / total) for pos, w in nodes)
    return ThermalEnsemble(sigma_z, sigma_x, nodes)


def wells_to_csv(wells) -> str:
    """Well census as CSV text: index, z_center_um, psi_abs, selected."""
    lines = ["index,z_center_um,psi_abs,selected"]
    for w in wells:
        lines.append(f"{w.index},{w.z_center / 1e-6:.11e},{w.psi_abs:.11e},"
                     f"{1 if w.selected else 0}")
    return "\n".join(lines) + "\n"
