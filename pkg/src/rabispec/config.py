"""Physical constants, run parameters and JSON config handling.

All frequencies are stored internally as angular frequencies (rad/s).
User-facing I/O (config files, CLI flags, CSV) uses cyclic MHz; the
``*_mhz`` helpers below are the only place the 2*pi conversion happens.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field, fields, replace

TWO_PI = 2.0 * math.pi

# SI / CODATA reference values. Fixed here, never read from run config.
PLANCK_H = 6.62607015e-34        # J s (exact)
BOLTZMANN_KB = 1.380649e-23      # J/K (exact)
ATOMIC_MASS_KG = 1.66053906660e-27  # kg (CODATA 2018)
CS_MASS_AMU = 132.905451931
SPEED_OF_LIGHT = 299792458.0     # m/s (exact)

TWO_LEVEL = "two_level"
ZEEMAN_FULL = "zeeman_full"


class ConfigError(ValueError):
    """A run parameter or config file violates an invariant."""


@dataclass(frozen=True)
class PhysicalConstants:
    planck_h: float = PLANCK_H
    boltzmann_kB: float = BOLTZMANN_KB
    cesium_mass: float = CS_MASS_AMU * ATOMIC_MASS_KG
    speed_of_light: float = SPEED_OF_LIGHT

    def __post_init__(self):
        for f in fields(self):
            if getattr(self, f.name) <= 0:
                raise ConfigError(f"{f.name}: physical constants must be positive")


CONSTANTS = PhysicalConstants()


def mhz_to_rad(f_mhz: float) -> float:
    """Cyclic MHz -> angular rad/s."""
    return TWO_PI * 1e6 * f_mhz


def rad_to_mhz(w: float) -> float:
    """Angular rad/s -> cyclic MHz."""
    return w / (TWO_PI * 1e6)


@dataclass(frozen=True)
class SystemParams:
    """All rates, wavelengths, geometry and drive settings of one run.

    ``g0`` is the coupling of the stretched transition (half the
    single-photon Rabi splitting).  ``u0_over_h`` is the signed trap depth
    in Hz.  ``excited_shift_ratios`` maps excited sublevels m' = -5..5
    (tuple index m'+5) to the ratio of their trap shift to the ground one;
    1.0 everywhere means equal trapping and no differential shift.
    """

    g0: float = mhz_to_rad(34.0)            # rad/s
    kappa: float = mhz_to_rad(4.1)          # rad/s
    gamma: float = mhz_to_rad(2.6)          # rad/s
    u0_over_h: float = -39.0e6              # Hz, signed
    lambda_A: float = 852.4e-9              # m
    lambda_F: float = 935.6e-9              # m
    cavity_length: float = 42.2e-6          # m
    waist_A: float = 23.4e-6                # m
    waist_F: float = 24.5e-6                # m
    delta_AC: float = 0.0                   # rad/s, omega_A - omega_C1
    mode_splitting: float = 0.0             # rad/s, y-mode offset from omega_C1
    drive_photon_number: float = 0.05
    temperature_fraction: float = 0.1       # k_B T / |U0|
    excited_shift_ratios: tuple = (1.0,) * 11

    def beta(self, m_prime: int) -> float:
        return self.excited_shift_ratios[m_prime + 5]

    def k_A(self) -> float:
        return TWO_PI / self.lambda_A

    def k_F(self) -> float:
        return TWO_PI / self.lambda_F


# A validated SystemParams is the same frozen object; validate() is the
# gate every consumer goes through.  Immutable, safe to share across workers.
ValidatedParams = SystemParams


def validate(params: SystemParams) -> ValidatedParams:
    """Check every invariant, reporting the first violation by field name."""
    for name in ("g0", "kappa", "gamma"):
        if getattr(params, name) <= 0:
            raise ConfigError(f"{name}: rate must be positive")
    if params.u0_over_h >= 0:
        raise ConfigError("u0_over_h: trap depth must be negative")
    for name in ("lambda_A", "lambda_F", "cavity_length", "waist_A", "waist_F"):
        if getattr(params, name) <= 0:
            raise ConfigError(f"{name}: length must be positive")
    if params.drive_photon_number <= 0:
        raise ConfigError("drive_photon_number: must be positive")
    if params.temperature_fraction < 0:
        raise ConfigError("temperature_fraction: must be non-negative")
    if len(params.excited_shift_ratios) != 11:
        raise ConfigError("excited_shift_ratios: need all m' in -5..5 (11 values)")
    return params


def critical_numbers(params: SystemParams) -> tuple[float, float]:
    """Critical photon and atom numbers (n0, N0).

    n0 = gamma^2 / (2 g0^2) and N0 = 2 kappa gamma / g0^2; both vanish
    with gamma.
    """
    n0 = params.gamma**2 / (2.0 * params.g0**2)
    N0 = 2.0 * params.kappa * params.gamma / params.g0**2
    return n0, N0


@dataclass(frozen=True)
class ModelReduction:
    """Basis truncation knobs: atomic basis, cavity mode count, photon cutoff."""

    atomic_basis: str = ZEEMAN_FULL
    mode_count: int = 2
    photon_cutoff: int = 1

    def __post_init__(self):
        if self.atomic_basis not in (TWO_LEVEL, ZEEMAN_FULL):
            raise ConfigError(f"atomic_basis: unknown value {self.atomic_basis!r}")
        if self.mode_count not in (1, 2):
            raise ConfigError("mode_count: must be 1 or 2")
        if self.photon_cutoff < 1:
            raise ConfigError("photon_cutoff: must be at least 1")


@dataclass(frozen=True)
class ScanSettings:
    min_mhz: float = -60.0
    max_mhz: float = 60.0
    points: int = 241
    oracle: bool = False

    def __post_init__(self):
        if self.points < 2:
            raise ConfigError("scan.points: need at least 2 grid points")
        if not self.max_mhz > self.min_mhz:
            raise ConfigError("scan.max_mhz: must exceed scan.min_mhz")


@dataclass(frozen=True)
class EnsembleSettings:
    well_threshold: float = 0.87
    max_wells: int | None = None
    n_axial: int = 9
    n_radial: int = 5

    def __post_init__(self):
        if not 0.0 < self.well_threshold <= 1.0:
            raise ConfigError("ensemble.well_threshold: must be in (0, 1]")
        if self.max_wells is not None and self.max_wells < 1:
            raise ConfigError("ensemble.max_wells: must be at least 1")
        if self.n_axial < 1 or self.n_radial < 1:
            raise ConfigError("ensemble.n_axial/n_radial: must be at least 1")


@dataclass(frozen=True)
class OutputSettings:
    dir: str = "out"


@dataclass(frozen=True)
class RunConfig:
    system: ValidatedParams = field(default_factory=SystemParams)
    reduction: ModelReduction = field(default_factory=ModelReduction)
    scan: ScanSettings = field(default_factory=ScanSettings)
    ensemble: EnsembleSettings = field(default_factory=EnsembleSettings)
    output: OutputSettings = field(default_factory=OutputSettings)


_SYSTEM_KEYS = {
    "g0_mhz", "kappa_mhz", "gamma_mhz", "u0_over_h_mhz", "delta_ac_mhz",
    "mode_splitting_mhz", "lambda_a_nm", "lambda_f_nm", "cavity_length_um",
    "waist_a_um", "waist_f_um", "drive_photon_number",
    "temperature_fraction", "excited_shift_ratios",
}
_REDUCTION_KEYS = {"atomic_basis", "mode_count", "photon_cutoff"}
_SCAN_KEYS = {"min_mhz", "max_mhz", "points", "oracle"}
_ENSEMBLE_KEYS = {"well_threshold", "max_wells", "n_axial", "n_radial"}
_OUTPUT_KEYS = {"dir"}
_TOP_KEYS = {"system", "reduction", "scan", "ensemble", "output"}


def _check_keys(section: str, given: dict, allowed: set):
    unknown = set(given) - allowed
    if unknown:
        raise ConfigError(f"{section}: unknown key(s) {sorted(unknown)}")


def _system_from_dict(d: dict) -> SystemParams:
    _check_keys("system", d, _SYSTEM_KEYS)
    kw = {}
    if "g0_mhz" in d:
        kw["g0"] = mhz_to_rad(d["g0_mhz"])
    if "kappa_mhz" in d:
        kw["kappa"] = mhz_to_rad(d["kappa_mhz"])
    if "gamma_mhz" in d:
        kw["gamma"] = mhz_to_rad(d["gamma_mhz"])
    if "u0_over_h_mhz" in d:
        kw["u0_over_h"] = 1e6 * d["u0_over_h_mhz"]
    if "delta_ac_mhz" in d:
        kw["delta_AC"] = mhz_to_rad(d["delta_ac_mhz"])
    if "mode_splitting_mhz" in d:
        kw["mode_splitting"] = mhz_to_rad(d["mode_splitting_mhz"])
    if "lambda_a_nm" in d:
        kw["lambda_A"] = 1e-9 * d["lambda_a_nm"]
    if "lambda_f_nm" in d:
        kw["lambda_F"] = 1e-9 * d["lambda_f_nm"]
    if "cavity_length_um" in d:
        kw["cavity_length"] = 1e-6 * d["cavity_length_um"]
    if "waist_a_um" in d:
        kw["waist_A"] = 1e-6 * d["waist_a_um"]
    if "waist_f_um" in d:
        kw["waist_F"] = 1e-6 * d["waist_f_um"]
    for name in ("drive_photon_number", "temperature_fraction"):
        if name in d:
            kw[name] = float(d[name])
    if "excited_shift_ratios" in d:
        ratios = d["excited_shift_ratios"]
        if not isinstance(ratios, dict):
            raise ConfigError("system.excited_shift_ratios: expected an object keyed by m'")
        values = [1.0] * 11
        for key, val in ratios.items():
            try:
                mp = int(key)
            except ValueError:
                raise ConfigError(f"system.excited_shift_ratios: bad key {key!r}") from None
            if abs(mp) > 5:
                raise ConfigError(f"system.excited_shift_ratios: m'={mp} out of range")
            values[mp + 5] = float(val)
        kw["excited_shift_ratios"] = tuple(values)
    return SystemParams(**kw)


def config_from_dict(doc: dict) -> RunConfig:
    """Build and validate a RunConfig from a parsed JSON document."""
    if not isinstance(doc, dict):
        raise ConfigError("config root: expected a JSON object")
    _check_keys("config", doc, _TOP_KEYS)
    system = validate(_system_from_dict(doc.get("system", {})))
    red = doc.get("reduction", {})
    _check_keys("reduction", red, _REDUCTION_KEYS)
    reduction = ModelReduction(**red)
    sc = doc.get("scan", {})
    _check_keys("scan", sc, _SCAN_KEYS)
    scan = ScanSettings(**sc)
    en = doc.get("ensemble", {})
    _check_keys("ensemble", en, _ENSEMBLE_KEYS)
    ensemble = EnsembleSettings(**en)
    out = doc.get("output", {})
    _check_keys("output", out, _OUTPUT_KEYS)
    output = OutputSettings(**out)
    return RunConfig(system, reduction, scan, ensemble, output)


def load_config(path) -> RunConfig:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: not valid JSON ({exc})") from None
    return config_from_dict(doc)


def config_to_dict(cfg: RunConfig) -> dict:
    """Round-trippable dict form of a RunConfig (frequencies back in MHz)."""
    sys_ = cfg.system
    return {
        "system": {
            "g0_mhz": rad_to_mhz(sys_.g0),
            "kappa_mhz": rad_to_mhz(sys_.kappa),
            "gamma_mhz": rad_to_mhz(sys_.gamma),
            "u0_over_h_mhz": sys_.u0_over_h / 1e6,
            "delta_ac_mhz": rad_to_mhz(sys_.delta_AC),
            "mode_splitting_mhz": rad_to_mhz(sys_.mode_splitting),
            "lambda_a_nm": sys_.lambda_A / 1e-9,
            "lambda_f_nm": sys_.lambda_F / 1e-9,
            "cavity_length_um": sys_.cavity_length / 1e-6,
            "waist_a_um": sys_.waist_A / 1e-6,
            "waist_f_um": sys_.waist_F / 1e-6,
            "drive_photon_number": sys_.drive_photon_number,
            "temperature_fraction": sys_.temperature_fraction,
            "excited_shift_ratios": {
                str(mp): sys_.excited_shift_ratios[mp + 5] for mp in range(-5, 6)
            },
        },
        "reduction": {
            "atomic_basis": cfg.reduction.atomic_basis,
            "mode_count": cfg.reduction.mode_count,
            "photon_cutoff": cfg.reduction.photon_cutoff,
        },
        "scan": {
            "min_mhz": cfg.scan.min_mhz,
            "max_mhz": cfg.scan.max_mhz,
            "points": cfg.scan.points,
            "oracle": cfg.scan.oracle,
        },
        "ensemble": {
            "well_threshold": cfg.ensemble.well_threshold,
            "max_wells": cfg.ensemble.max_wells,
            "n_axial": cfg.ensemble.n_axial,
            "n_radial": cfg.ensemble.n_radial,
        },
        "output": {"dir": cfg.output.dir},
    }


def config_digest(cfg: RunConfig) -> str:
    """Stable fingerprint of the resolved configuration."""
    blob = json.dumps(config_to_dict(cfg), sort_keys=True).encode("utf-8")
    return hashlib.sha256(blob).hexdigest()


def with_overrides(cfg: RunConfig, **kw) -> RunConfig:
    """Apply CLI-style overrides (None values ignored), revalidating."""
    system, reduction = cfg.system, cfg.reduction
    scan, ensemble = cfg.scan, cfg.ensemble
    if kw.get("temperature_fraction") is not None:
        system = replace(system, temperature_fraction=kw["temperature_fraction"])
    if kw.get("scan_min") is not None:
        scan = replace(scan, min_mhz=kw["scan_min"])
    if kw.get("scan_max") is not None:
        scan = replace(scan, max_mhz=kw["scan_max"])
    if kw.get("points") is not None:
        scan = replace(scan, points=kw["points"])
    if kw.get("oracle"):
        scan = replace(scan, oracle=True)
    if kw.get("threshold") is not None:
        ensemble = replace(ensemble, well_threshold=kw["threshold"])
    if kw.get("max_wells") is not None:
        ensemble = replace(ensemble, max_wells=kw["max_wells"])
    if kw.get("nmax") is not None:
        reduction = replace(reduction, photon_cutoff=kw["nmax"])
    if kw.get("reduction") is not None:
        reduction = replace(reduction, atomic_basis=kw["reduction"])
    if kw.get("modes") is not None:
        reduction = replace(reduction, mode_count=kw["modes"])
    return RunConfig(validate(system), reduction, scan, ensemble, cfg.output)
