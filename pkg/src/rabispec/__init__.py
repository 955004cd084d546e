"""Steady-state vacuum-Rabi spectra of one trapped Cs atom in a cavity."""

__version__ = "0.1.0"

from .config import (ModelReduction, RunConfig, SystemParams, critical_numbers,
                     load_config, validate)
from .engine import build_model, transmission, transmission_curve
from .spectrum import (ScanGrid, SpectrumResult, dressed_eigenvalues,
                       find_peaks, linear_transmission_oracle, scan)
from .trap import (Position, WellSite, enumerate_wells, fort_potential,
                   mode_function, quadrature_nodes, thermal_widths)

__all__ = [
    "ModelReduction", "RunConfig", "SystemParams", "critical_numbers",
    "load_config", "validate", "build_model", "transmission",
    "transmission_curve", "ScanGrid", "SpectrumResult", "dressed_eigenvalues",
    "find_peaks", "linear_transmission_oracle", "scan", "Position", "WellSite",
    "enumerate_wells", "fort_potential", "mode_function", "quadrature_nodes",
    "thermal_widths", "__version__",
]
