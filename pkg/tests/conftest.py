from __future__ import annotations

import pytest

from riemann_pcf.arithmetic_oracle import sieve
from riemann_pcf.zero_finder import find_first_zeros


@pytest.fixture(scope="session")
def zeros100():
    return find_first_zeros(100)


@pytest.fixture(scope="session")
def primes10k():
    return sieve(10_000)
