import pytest

from donor_halo import get_material


@pytest.fixture(scope="session")
def gaas():
    return get_material("GaAs:As75")


@pytest.fixture(scope="session")
def gaas_zeta01(gaas):
    """GaAs record with the capture-to-recombination ratio pinned to 0.1."""
    velocity = gaas.bimolecular_k / (gaas.sigma_capture * 0.1)
    return gaas.with_overrides(velocity=velocity)
