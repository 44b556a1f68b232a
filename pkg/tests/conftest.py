"""Shared fixtures and helpers for the test suite."""

import numpy as np
import pytest

from rectihull import PointSet


def random_pset(n, seed, extent=1.0):
    """Uniform box instance; distinct coordinates with probability 1."""
    rng = np.random.default_rng([11, seed])
    return PointSet(extent * rng.random((n, 3)))


@pytest.fixture
def small_pset():
    return random_pset(40, 0)


@pytest.fixture
def medium_pset():
    return random_pset(200, 1)
