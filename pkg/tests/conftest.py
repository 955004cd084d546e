import pytest

from rabispec.config import SystemParams, validate


@pytest.fixture(scope="session")
def paper_params():
    return validate(SystemParams())


@pytest.fixture(scope="session")
def weak_params():
    from dataclasses import replace
    return validate(replace(SystemParams(), drive_photon_number=1e-3))
