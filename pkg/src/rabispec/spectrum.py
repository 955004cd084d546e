"""Probe-frequency scans, ensemble averaging, and peak analysis.

Also carries the closed-form linear-response transmission of a two-level
atom in a single mode, which is the independent oracle for the
master-equation path, and the complex dressed-state eigenvalues whose
real parts set the vacuum-Rabi peak positions.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .config import (EnsembleSettings, ModelReduction, RunConfig,
                     ValidatedParams, config_digest, mhz_to_rad, rad_to_mhz)
from .engine import transmission_curve
from .trap import quadrature_nodes, selected_wells, thermal_widths


@dataclass(frozen=True)
class ScanGrid:
    """Strictly increasing probe detunings (rad/s from the common resonance)."""

    detunings: tuple

    def __post_init__(self):
        if len(self.detunings) < 2:
            raise ValueError("scan grid needs at least 2 points")
        if any(b <= a for a, b in zip(self.detunings, self.detunings[1:])):
            raise ValueError("scan grid must be strictly increasing")

    @classmethod
    def uniform_mhz(cls, min_mhz: float, max_mhz: float, points: int) -> "ScanGrid":
        vals = np.linspace(min_mhz, max_mhz, points)
        return cls(tuple(mhz_to_rad(v) for v in vals))

    def as_array(self) -> np.ndarray:
        return np.asarray(self.detunings)

    def mhz(self) -> np.ndarray:
        return self.as_array() / (2e6 * math.pi)

    def __len__(self):
        return len(self.detunings)


@dataclass
class SpectrumResult:
    grid: ScanGrid
    t1_mean: np.ndarray
    t1_per_well: np.ndarray          # node-averaged curve per well, well x point
    well_indices: tuple
    well_weights: tuple
    params_digest: str
    t1_oracle: np.ndarray | None = None

    def to_csv(self) -> str:
        """CSV text: detuning_mhz, t1_mean, t1_well_<i>... (12 sig digits, LF)."""
        header = ["detuning_mhz", "t1_mean"]
        header += [f"t1_well_{i}" for i in self.well_indices]
        if self.t1_oracle is not None:
            header.append("t1_oracle")
        lines = [",".join(header)]
        mhz = self.grid.mhz()
        for k in range(len(self.grid)):
            row = [f"{mhz[k]:.11e}", f"{self.t1_mean[k]:.11e}"]
            row += [f"{self.t1_per_well[w, k]:.11e}"
                    for w in range(self.t1_per_well.shape[0])]
            if self.t1_oracle is not None:
                row.append(f"{self.t1_oracle[k]:.11e}")
            lines.append(",".join(row))
        return "\n".join(lines) + "\n"


def linear_transmission_oracle(probe_detuning, g: float, kappa: float,
                               gamma: float, delta_AC: float = 0.0):
    """Weak-drive transmission of a two-level atom in one cavity mode.

    T = | kappa (gamma + i d_ap) / ((kappa + i d_cp)(gamma + i d_ap) + g^2) |^2
    with d_cp = omega_C1 - omega_p and d_ap = omega_A - omega_p.  Accepts
    a scalar or array probe detuning (omega_p - omega_C1, rad/s).
    """
    delta = np.asarray(probe_detuning, dtype=float)
    d_cp = -delta
    d_ap = delta_AC - delta
    amp = kappa * (gamma + 1j * d_ap) / ((kappa + 1j * d_cp) * (gamma + 1j * d_ap) + g**2)
    out = np.abs(amp) ** 2
    return float(out) if np.isscalar(probe_detuning) else out


def dressed_eigenvalues(g: float, kappa: float, gamma: float,
                        delta_AC: float = 0.0) -> tuple[complex, complex]:
    """Complex eigenvalues of [[delta_AC - i gamma, g], [g, -i kappa]].

    Frequencies are relative to the bare cavity; real parts locate the
    vacuum-Rabi normal modes, imaginary parts their half-linewidths.
    Returned sorted by (real, imag).
    """
    s = delta_AC - 1j * (gamma + kappa)
    half_diff = (delta_AC - 1j * gamma + 1j * kappa) / 2.0
    root = np.sqrt(complex(half_diff**2 + g**2))
    lam = (s / 2.0 + root, s / 2.0 - root)
    return tuple(sorted(lam, key=lambda z: (z.real, z.imag)))


@dataclass(frozen=True)
class PeakAnalysis:
    resolved: bool
    positions: tuple            # rad/s, ascending
    heights: tuple
    central_minimum: float | None = None
    central_position: float | None = None


def _interpolate_peak(x: np.ndarray, y: np.ndarray, i: int) -> tuple[float, float]:
    """Quadratic vertex through the three points around a discrete maximum."""
    if i == 0 or i == len(y) - 1:
        return float(x[i]), float(y[i])
    y0, y1, y2 = y[i - 1], y[i], y[i + 1]
    curv = y0 - 2.0 * y1 + y2
    if curv >= 0.0:
        return float(x[i]), float(y[i])
    h = x[i + 1] - x[i]
    shift = 0.5 * (y0 - y2) / curv
    return float(x[i] + shift * h), float(y1 - 0.125 * (y0 - y2) ** 2 / curv)


def find_peaks_curve(detunings: np.ndarray, values: np.ndarray) -> PeakAnalysis:
    """Locate the two largest local maxima of a sampled curve.

    Positions and heights are refined by quadratic interpolation; the
    minimum between the two peaks is reported.  Fewer than two local
    maxima is a legitimate outcome, flagged as unresolved.
    """
    x = np.asarray(detunings, dtype=float)
    y = np.asarray(values, dtype=float)
    if len(y) < 3:
        raise ValueError("need at least 3 grid points for peak analysis")
    maxima = [i for i in range(1, len(y) - 1)
              if y[i] > y[i - 1] and y[i] >= y[i + 1]]
    if len(maxima) < 2:
        if not maxima:
            i = int(np.argmax(y))
            pos, height = float(x[i]), float(y[i])
        else:
            pos, height = _interpolate_peak(x, y, maxima[0])
        return PeakAnalysis(False, (pos,), (height,))
    top = sorted(maxima, key=lambda i: -y[i])[:2]
    lo, hi = sorted(top)
    p_lo = _interpolate_peak(x, y, lo)
    p_hi = _interpolate_peak(x, y, hi)
    between = slice(lo, hi + 1)
    j = int(np.argmin(y[between])) + lo
    return PeakAnalysis(
        True,
        (p_lo[0], p_hi[0]),
        (p_lo[1], p_hi[1]),
        central_minimum=float(y[j]),
        central_position=float(x[j]),
    )


def find_peaks(result: SpectrumResult) -> PeakAnalysis:
    return find_peaks_curve(result.grid.as_array(), result.t1_mean)


def _node_task(args):
    params, reduction, pos, detunings = args
    return transmission_curve(params, reduction, pos, detunings)


def scan(params: ValidatedParams, reduction: ModelReduction,
         ensemble: EnsembleSettings, grid: ScanGrid, jobs: int = 1,
         oracle: bool = False, digest: str = "") -> SpectrumResult:
    """Ensemble-averaged transmission spectrum.

    Every selected well contributes its thermal quadrature average; wells
    are weighted uniformly.  Evaluation may be parallel but the reduction
    always runs in fixed (well, node) order, so results are deterministic.
    With `oracle`, the identically averaged closed-form two-level curve is
    attached for comparison.
    """
    wells = selected_wells(params, ensemble.well_threshold, ensemble.max_wells)
    if not wells:
        raise ValueError("no wells selected; lower the threshold")
    widths = thermal_widths(params)
    ensembles = [quadrature_nodes(w, widths, ensemble.n_axial, ensemble.n_radial)
                 for w in wells]
    detunings = grid.as_array()

    tasks = []
    for w, ens in zip(wells, ensembles):
        for pos, weight in ens.nodes:
            tasks.append((w, weight, (params, reduction, pos, tuple(detunings))))

    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            curves = list(pool.map(_node_task, [t[2] for t in tasks],
                                   chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        curves = [_node_task(t[2]) for t in tasks]

    n_wells = len(wells)
    per_well = np.zeros((n_wells, len(detunings)))
    well_pos = {w.index: k for k, w in enumerate(wells)}
    for (w, weight, _), curve in zip(tasks, curves):
        per_well[well_pos[w.index]] += weight * curve
    well_weights = tuple(1.0 / n_wells for _ in wells)
    t1_mean = np.zeros(len(detunings))
    for k in range(n_wells):
        t1_mean += well_weights[k] * per_well[k]

    t1_oracle = None
    if oracle:
        t1_oracle = np.zeros(len(detunings))
        from .trap import mode_function  # local to avoid cycle at import time
        for (w, ens) in zip(wells, ensembles):
            for pos, weight in ens.nodes:
                g_local = params.g0 * abs(mode_function(pos, params))
                t1_oracle += (weight / n_wells) * linear_transmission_oracle(
                    detunings, g_local, params.kappa, params.gamma, params.delta_AC)

    return SpectrumResult(
        grid=grid,
        t1_mean=t1_mean,
        t1_per_well=per_well,
        well_indices=tuple(w.index for w in wells),
        well_weights=well_weights,
        params_digest=digest,
        t1_oracle=t1_oracle,
    )


def scan_config(cfg: RunConfig, jobs: int = 1) -> SpectrumResult:
    grid = ScanGrid.uniform_mhz(cfg.scan.min_mhz, cfg.scan.max_mhz, cfg.scan.points)
    return scan(cfg.system, cfg.reduction, cfg.ensemble, grid, jobs=jobs,
                oracle=cfg.scan.oracle, digest=config_digest(cfg))
