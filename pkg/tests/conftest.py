import pytest

from prime34 import (
    build_sieve,
    observations_sweep,
    verify_corollary,
    verify_direct,
)


@pytest.fixture(scope="session")
def sieve_small():
    return build_sieve(1200)


@pytest.fixture(scope="session")
def sieve_mid():
    return build_sieve(8000)


@pytest.fixture(scope="session")
def sieve_4m():
    return build_sieve(4_000_000)


@pytest.fixture(scope="session")
def direct_full():
    """Serial full direct sweep; shared by the acceptance criteria."""
    return verify_direct()


@pytest.fixture(scope="session")
def corollary_1e5():
    return verify_corollary(100_000)


@pytest.fixture(scope="session")
def observations_full():
    """Serial claims sweep over [1, 5000]; shared by the acceptance criteria."""
    return observations_sweep(1, 5000)
