import json
import subprocess
import sys

import pytest

from rabispec.cli import main
from rabispec.operators import SolverError

FAST_SCAN = {
    "system": {"temperature_fraction": 0.0, "drive_photon_number": 1e-3},
    "reduction": {"atomic_basis": "two_level", "mode_count": 1,
                  "photon_cutoff": 1},
    "scan": {"min_mhz": -60.0, "max_mhz": 60.0, "points": 241},
    "ensemble": {"max_wells": 1, "n_axial": 1, "n_radial": 1},
}


def write_config(tmp_path, doc=None, name="cfg.json"):
    path = tmp_path / name
    path.write_text(json.dumps(FAST_SCAN if doc is None else doc))
    return str(path)


def read(path):
    with open(path, "rb") as fh:
        return fh.read()


def test_scan_emits_artifacts(tmp_path, capsys):
    cfg = write_config(tmp_path)
    out = tmp_path / "out"
    assert main(["scan", "--config", cfg, "--out", str(out), "--jobs", "1"]) == 0
    spectrum = (out / "spectrum.csv").read_text()
    rows = spectrum.strip().split("\n")
    assert len(rows) == 242  # header + 241 grid points
    assert rows[0].startswith("detuning_mhz,t1_mean,t1_well_")
    wells = (out / "wells.csv").read_text()
    assert len(wells.strip().split("\n")) == 91
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["versions"]["rabispec"]
    assert set(manifest["timings"]) == {"config_ms", "wells_ms", "scan_ms", "write_ms"}
    assert {o["path"] for o in manifest["outputs"]} == {"spectrum.csv", "wells.csv"}
    echo = manifest["config_echo"]
    assert echo["reduction"]["atomic_basis"] == "two_level"
    assert capsys.readouterr().out.count("wells: 90 total") == 1


def test_scan_manifest_digests_match_files(tmp_path):
    import hashlib
    cfg = write_config(tmp_path)
    out = tmp_path / "out"
    main(["scan", "--config", cfg, "--out", str(out), "--points", "5"])
    manifest = json.loads((out / "manifest.json").read_text())
    for entry in manifest["outputs"]:
        digest = hashlib.sha256(read(out / entry["path"])).hexdigest()
        assert digest == entry["sha256"], entry["path"]


def test_scan_oracle_column(tmp_path, capsys):
    cfg = write_config(tmp_path)
    out = tmp_path / "out"
    assert main(["scan", "--config", cfg, "--out", str(out), "--points", "21",
                 "--oracle"]) == 0
    header = (out / "spectrum.csv").read_text().split("\n", 1)[0]
    assert header.endswith("t1_oracle")
    assert "max |t1_mean - t1_oracle| = " in capsys.readouterr().out


def test_scan_flag_overrides_echoed(tmp_path):
    cfg = write_config(tmp_path)
    out = tmp_path / "out"
    main(["scan", "--config", cfg, "--out", str(out), "--points", "11",
          "--scan-min", "-30", "--scan-max", "30", "--temperature-fraction",
          "0.2", "--nmax", "2", "--threshold", "0.9"])
    echo = json.loads((out / "manifest.json").read_text())["config_echo"]
    assert echo["scan"]["points"] == 11
    assert echo["scan"]["min_mhz"] == -30
    assert echo["system"]["temperature_fraction"] == 0.2
    assert echo["reduction"]["photon_cutoff"] == 2
    assert echo["ensemble"]["well_threshold"] == 0.9
    rows = (out / "spectrum.csv").read_text().strip().split("\n")
    assert len(rows) == 12


def test_scan_reproducible_byte_identical(tmp_path):
    cfg = write_config(tmp_path)
    out1, out2 = tmp_path / "a", tmp_path / "b"
    main(["scan", "--config", cfg, "--out", str(out1), "--points", "31"])
    main(["scan", "--config", cfg, "--out", str(out2), "--points", "31"])
    assert read(out1 / "spectrum.csv") == read(out2 / "spectrum.csv")
    assert read(out1 / "wells.csv") == read(out2 / "wells.csv")


def test_missing_config_exits_one(tmp_path, capsys):
    assert main(["scan", "--config", str(tmp_path / "nope.json")]) == 1
    assert "config error" in capsys.readouterr().err


def test_unknown_config_key_exits_one(tmp_path, capsys):
    cfg = write_config(tmp_path, {"system": {"g0": 34.0}})
    assert main(["scan", "--config", cfg]) == 1
    assert "unknown key" in capsys.readouterr().err


def test_invalid_parameter_exits_one(tmp_path, capsys):
    cfg = write_config(tmp_path, {"system": {"u0_over_h_mhz": 39.0}})
    assert main(["scan", "--config", cfg]) == 1
    assert "trap depth" in capsys.readouterr().err


def test_solver_failure_exits_two(tmp_path, capsys, monkeypatch):
    def boom(*a, **k):
        raise SolverError("synthetic failure")
    monkeypatch.setattr("rabispec.cli.scan_config", boom)
    cfg = write_config(tmp_path)
    assert main(["scan", "--config", cfg, "--out", str(tmp_path / "o")]) == 2
    assert "solver error" in capsys.readouterr().err


def test_report_table_contains_paper_values(tmp_path, capsys):
    cfg = write_config(tmp_path, {})
    assert main(["report", "--config", cfg]) == 0
    out = capsys.readouterr().out
    assert "n0" in out and "N0" in out and "nu0_mhz" in out
    assert "0.00292" in out
    assert "0.01844" in out


def test_report_csv_values(tmp_path, capsys):
    cfg = write_config(tmp_path, {})
    assert main(["report", "--config", cfg, "--csv"]) == 0
    out = capsys.readouterr().out.strip().split("\n")
    assert out[0] == "quantity,value,unit"
    table = {row.split(",")[0]: float(row.split(",")[1]) for row in out[1:]}
    assert table["n0"] == pytest.approx(0.0029, rel=2e-2)
    assert table["N0"] == pytest.approx(0.018, rel=3e-2)
    assert table["nu0_mhz"] == pytest.approx(0.52, abs=0.01)
    assert table["omega_e_khz"] == pytest.approx(200.0, rel=1e-6)
    assert table["sigma_z_nm"] == pytest.approx(33.0, rel=3e-2)
    assert table["sigma_rho_um"] == pytest.approx(5.5, rel=3e-2)


def test_report_zero_temperature(tmp_path, capsys):
    cfg = write_config(tmp_path, {"system": {"temperature_fraction": 0.0}})
    assert main(["report", "--config", cfg, "--csv"]) == 0
    rows = capsys.readouterr().out.strip().split("\n")[1:]
    table = {r.split(",")[0]: float(r.split(",")[1]) for r in rows}
    assert table["sigma_z_nm"] == 0.0
    assert table["sigma_x_um"] == 0.0


def test_console_script_entry_point(tmp_path):
    cfg = write_config(tmp_path, {})
    proc = subprocess.run(
        [sys.executable, "-m", "rabispec.cli", "report", "--config", cfg, "--csv"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith("quantity,value,unit")
