import pytest

from basisconv import DEFAULT_PRIME, Modulus


@pytest.fixture(scope="session")
def mod():
    return Modulus(DEFAULT_PRIME)


@pytest.fixture(scope="session")
def mod101():
    # tiny prime: 2-adicity is only 4, so products run through the
    # schoolbook fallback and precision is capped at n < 101
    return Modulus(101)
