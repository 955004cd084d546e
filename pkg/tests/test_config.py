import json
import math
from dataclasses import replace

import pytest

from rabispec.config import (ConfigError, ModelReduction, SystemParams,
                             config_digest, config_from_dict, config_to_dict,
                             critical_numbers, load_config, mhz_to_rad,
                             rad_to_mhz, validate, with_overrides)


def test_paper_defaults_accepted(paper_params):
    assert validate(paper_params) is paper_params
    assert rad_to_mhz(paper_params.g0) == pytest.approx(34.0)
    assert rad_to_mhz(paper_params.kappa) == pytest.approx(4.1)
    assert rad_to_mhz(paper_params.gamma) == pytest.approx(2.6)
    assert paper_params.u0_over_h == pytest.approx(-39e6)


def test_positive_trap_depth_rejected():
    with pytest.raises(ConfigError, match="u0_over_h"):
        validate(replace(SystemParams(), u0_over_h=+39e6))


def test_zero_rate_rejected():
    with pytest.raises(ConfigError, match="kappa"):
        validate(replace(SystemParams(), kappa=0.0))


def test_photon_cutoff_zero_rejected():
    with pytest.raises(ConfigError, match="photon_cutoff"):
        ModelReduction(photon_cutoff=0)


def test_bad_basis_rejected():
    with pytest.raises(ConfigError, match="atomic_basis"):
        ModelReduction(atomic_basis="three_level")


def test_critical_numbers_paper_values(paper_params):
    n0, N0 = critical_numbers(paper_params)
    assert n0 == pytest.approx(0.0029, rel=2e-2)
    assert N0 == pytest.approx(0.018, rel=3e-2)


def test_critical_numbers_algebraic_identities(paper_params):
    n0, N0 = critical_numbers(paper_params)
    assert n0 * 2.0 * paper_params.g0**2 == pytest.approx(paper_params.gamma**2, rel=1e-14)
    assert N0 * paper_params.g0**2 == pytest.approx(
        2.0 * paper_params.kappa * paper_params.gamma, rel=1e-14)


def test_critical_numbers_zero_gamma():
    p = replace(SystemParams(), gamma=0.0)
    assert critical_numbers(p) == (0.0, 0.0)


@pytest.mark.parametrize("f", [0.1, 1.0, 2.6, 4.1, 34.0, 68.0, 9192.632])
def test_unit_round_trip(f):
    assert rad_to_mhz(mhz_to_rad(f)) == pytest.approx(f, rel=1e-12)


def test_config_unknown_top_key_rejected():
    with pytest.raises(ConfigError, match="unknown key"):
        config_from_dict({"system": {}, "extras": {}})


def test_config_unknown_section_key_rejected():
    with pytest.raises(ConfigError, match="unknown key"):
        config_from_dict({"system": {"g0": 34.0}})  # missing _mhz suffix


def test_config_round_trip(tmp_path):
    doc = {
        "system": {"g0_mhz": 34.0, "u0_over_h_mhz": -39.0,
                   "temperature_fraction": 0.2,
                   "excited_shift_ratios": {"0": 1.1}},
        "reduction": {"atomic_basis": "two_level", "mode_count": 1,
                      "photon_cutoff": 2},
        "scan": {"min_mhz": -50, "max_mhz": 50, "points": 11},
        "ensemble": {"well_threshold": 0.9, "max_wells": 3},
        "output": {"dir": "results"},
    }
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(doc))
    cfg = load_config(path)
    assert cfg.system.g0 == pytest.approx(mhz_to_rad(34.0))
    assert cfg.system.temperature_fraction == 0.2
    assert cfg.system.beta(0) == 1.1
    assert cfg.system.beta(5) == 1.0
    assert cfg.reduction.photon_cutoff == 2
    assert cfg.ensemble.max_wells == 3
    assert cfg.output.dir == "results"
    echo = config_to_dict(cfg)
    assert echo["system"]["g0_mhz"] == pytest.approx(34.0)
    assert config_from_dict(echo) == cfg


def test_config_digest_changes_with_params():
    a = config_from_dict({"system": {"g0_mhz": 34.0}})
    b = config_from_dict({"system": {"g0_mhz": 35.0}})
    assert config_digest(a) != config_digest(b)
    assert config_digest(a) == config_digest(config_from_dict({"system": {"g0_mhz": 34.0}}))


def test_with_overrides_revalidates():
    cfg = config_from_dict({})
    out = with_overrides(cfg, points=21, nmax=2, reduction="two_level",
                         threshold=0.9, temperature_fraction=0.0)
    assert out.scan.points == 21
    assert out.reduction.photon_cutoff == 2
    assert out.system.temperature_fraction == 0.0
    with pytest.raises(ConfigError):
        with_overrides(cfg, temperature_fraction=-1.0)


def test_invalid_json_reported(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(ConfigError, match="not valid JSON"):
        load_config(path)
