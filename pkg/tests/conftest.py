import numpy as np
import pytest

from qinv.codes import fixture_442, projector


@pytest.fixture(scope="session")
def p442():
    """Projector of the XXXX/ZZZZ ((4,4,2)) code."""
    return projector(fixture_442())


@pytest.fixture
def rng():
    return np.random.default_rng(20240317)


def random_complex(rng, d):
    return rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))


def random_hermitian(rng, d):
    m = random_complex(rng, d)
    return (m + m.conj().T) / 2


def random_psd(rng, d, rank=None):
    rank = rank or d
    v = rng.normal(size=(d, rank)) + 1j * rng.normal(size=(d, rank))
    return v @ v.conj().T
