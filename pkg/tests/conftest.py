"""Shared fixtures for the fnasim test suite."""

import numpy as np
import pytest

from fnasim.models.run_config import RunConfig, WorkloadSpec


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def small_config() -> RunConfig:
    """Three small caches over a skewed synthetic workload; runs in well under a second."""
    return RunConfig(
        cache_capacities=[200, 200, 200],
        seed=7,
        workload=WorkloadSpec(zipf_alpha=0.9, universe=5_000, length=20_000),
    )


def random_keys(rng, n: int, prefix: str = "k") -> list:
    """``n`` distinct byte keys."""
    ids = rng.choice(10**12, size=n, replace=False)
    return [f"{prefix}{i}".encode() for i in ids.tolist()]
