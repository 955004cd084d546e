"""Command-line entry point.

`rabispec scan` runs the configured probe sweep and writes spectrum.csv,
wells.csv and manifest.json into the output directory.  `rabispec report`
prints the derived trap/cooling/coupling quantities as a table or CSV.

Exit codes: 0 success, 1 config error, 2 solver failure, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time

from . import __version__
from .config import (ConfigError, RunConfig, TWO_LEVEL, ZEEMAN_FULL,
                     config_digest, config_to_dict, critical_numbers,
                     load_config, rad_to_mhz, with_overrides)
from .cooling import (axial_frequency, default_cooling_params, effective_rabi,
                      radial_frequency)
from .operators import SolverError
from .spectrum import scan_config
from .trap import enumerate_wells, thermal_widths, wells_to_csv


def _sha256(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _write(path: str, text: str) -> str:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    return _sha256(text.encode("utf-8"))


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rabispec",
        description="Vacuum-Rabi transmission spectra of one trapped atom")
    sub = parser.add_subparsers(dest="command", required=True)

    p_scan = sub.add_parser("scan", help="run a probe-frequency scan")
    p_scan.add_argument("--config", required=True, help="JSON config file")
    p_scan.add_argument("--out", default="out", help="output directory")
    p_scan.add_argument("--scan-min", type=float, default=None, metavar="MHZ")
    p_scan.add_argument("--scan-max", type=float, default=None, metavar="MHZ")
    p_scan.add_argument("--points", type=int, default=None)
    p_scan.add_argument("--temperature-fraction", type=float, default=None)
    p_scan.add_argument("--threshold", type=float, default=None,
                        help="well selection threshold on |psi| (default 0.87)")
    p_scan.add_argument("--max-wells", type=int, default=None,
                        help="cap on the number of best-coupled wells")
    p_scan.add_argument("--nmax", type=int, default=None, help="photon cutoff")
    p_scan.add_argument("--reduction", choices=["two-level", "zeeman-full"],
                        default=None)
    p_scan.add_argument("--modes", type=int, choices=[1, 2], default=None)
    p_scan.add_argument("--oracle", action="store_true",
                        help="emit the closed-form reference column")
    p_scan.add_argument("--jobs", type=int, default=os.cpu_count() or 1)

    p_rep = sub.add_parser("report", help="print derived parameter table")
    p_rep.add_argument("--config", required=True, help="JSON config file")
    p_rep.add_argument("--csv", action="store_true", help="CSV to stdout")
    p_rep.add_argument("--omega-fort-mhz", type=float, default=None)
    p_rep.add_argument("--omega-raman-mhz", type=float, default=None)
    return parser


def _resolved_config(args) -> RunConfig:
    cfg = load_config(args.config)
    reduction = None
    if getattr(args, "reduction", None):
        reduction = {"two-level": TWO_LEVEL, "zeeman-full": ZEEMAN_FULL}[args.reduction]
    return with_overrides(
        cfg,
        scan_min=getattr(args, "scan_min", None),
        scan_max=getattr(args, "scan_max", None),
        points=getattr(args, "points", None),
        temperature_fraction=getattr(args, "temperature_fraction", None),
        threshold=getattr(args, "threshold", None),
        max_wells=getattr(args, "max_wells", None),
        nmax=getattr(args, "nmax", None),
        reduction=reduction,
        modes=getattr(args, "modes", None),
        oracle=getattr(args, "oracle", False),
    )


def run_scan(args) -> int:
    timings = {}
    t0 = time.perf_counter()
    cfg = _resolved_config(args)
    timings["config_ms"] = 1e3 * (time.perf_counter() - t0)

    t0 = time.perf_counter()
    wells = enumerate_wells(cfg.system, cfg.ensemble.well_threshold)
    wells_text = wells_to_csv(wells)
    timings["wells_ms"] = 1e3 * (time.perf_counter() - t0)

    t0 = time.perf_counter()
    result = scan_config(cfg, jobs=args.jobs)
    timings["scan_ms"] = 1e3 * (time.perf_counter() - t0)

    t0 = time.perf_counter()
    out_dir = args.out
    os.makedirs(out_dir, exist_ok=True)
    outputs = []
    spectrum_path = os.path.join(out_dir, "spectrum.csv")
    outputs.append({"path": "spectrum.csv", "sha256": _write(spectrum_path, result.to_csv())})
    wells_path = os.path.join(out_dir, "wells.csv")
    outputs.append({"path": "wells.csv", "sha256": _write(wells_path, wells_text)})
    timings["write_ms"] = 1e3 * (time.perf_counter() - t0)

    manifest = {
        "config_echo": config_to_dict(cfg),
        "config_digest": config_digest(cfg),
        "versions": {"rabispec": __version__},
        "timings": timings,
        "outputs": outputs,
    }
    with open(os.path.join(out_dir, "manifest.json"), "w", encoding="utf-8",
              newline="\n") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")

    n_sel = sum(1 for w in wells if w.selected)
    print(f"wells: {len(wells)} total, {n_sel} selected "
          f"(threshold {cfg.ensemble.well_threshold})")
    print(f"spectrum: {len(result.grid)} points x {len(result.well_indices)} wells "
          f"-> {spectrum_path}")
    if result.t1_oracle is not None:
        gap = float(abs(result.t1_mean - result.t1_oracle).max())
        print(f"max |t1_mean - t1_oracle| = {gap:.6e}")
    return 0


_REPORT_UNITS = {
    "n0": "", "N0": "", "nu0_mhz": "MHz", "nu_rho_khz": "kHz",
    "omega_e_khz": "kHz", "sigma_z_nm": "nm", "sigma_x_um": "um",
    "sigma_rho_um": "um",
}


def report_rows(cfg: RunConfig, omega_fort: float | None = None,
                omega_raman: float | None = None) -> list[tuple[str, float]]:
    params = cfg.system
    n0, N0 = critical_numbers(params)
    sigma_z, sigma_x, sigma_rho = thermal_widths(params)
    if omega_fort is not None and omega_raman is not None:
        from .cooling import CoolingParams, raman_detuning
        cp = CoolingParams(omega_fort, omega_raman, raman_detuning(params))
    else:
        cp = default_cooling_params(params)
    return [
        ("n0", n0),
        ("N0", N0),
        ("nu0_mhz", axial_frequency(params) / 1e6),
        ("nu_rho_khz", radial_frequency(params) / 1e3),
        ("omega_e_khz", rad_to_mhz(effective_rabi(cp)) * 1e3),
        ("sigma_z_nm", sigma_z / 1e-9),
        ("sigma_x_um", sigma_x / 1e-6),
        ("sigma_rho_um", sigma_rho / 1e-6),
    ]


def run_report(args) -> int:
    cfg = _resolved_config(args)
    omega_fort = omega_raman = None
    if args.omega_fort_mhz is not None and args.omega_raman_mhz is not None:
        from .config import mhz_to_rad
        omega_fort = mhz_to_rad(args.omega_fort_mhz)
        omega_raman = mhz_to_rad(args.omega_raman_mhz)
    rows = report_rows(cfg, omega_fort, omega_raman)
    if args.csv:
        print("quantity,value,unit")
        for name, value in rows:
            print(f"{name},{value:.11e},{_REPORT_UNITS[name]}")
    else:
        print(f"{'quantity':<14} {'value':>16}  unit")
        for name, value in rows:
            print(f"{name:<14} {value:>16.6g}  {_REPORT_UNITS[name]}")
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "scan":
            return run_scan(args)
        return run_report(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        if getattr(exc, "filename", None) == getattr(args, "config", None):
            print(f"config error: {exc}", file=sys.stderr)
            return 1
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3
    except SolverError as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
