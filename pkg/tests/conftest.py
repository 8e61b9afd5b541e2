import pytest

from modcat import catalog


@pytest.fixture(scope="session")
def fibonacci():
    return catalog.fibonacci_ring()


@pytest.fixture(scope="session")
def ising():
    return catalog.ising_ring()


@pytest.fixture(scope="session")
def so_rings():
    """Session cache of SO(N)_2 rings, built lazily per N."""
    cache = {}

    def get(n):
        if n not in cache:
            cache[n] = catalog.build_so_n2(n)
        return cache[n]

    return get
