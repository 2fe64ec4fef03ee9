"""Shared fixtures: sampling grids and a reproducible random-series factory."""
import numpy as np
import pytest

from betacesaro import PowerSeries, default_grid


@pytest.fixture(scope="session")
def grid():
    """The default 64 x 128 grid with r_max = 0.999."""
    return default_grid(64, 128, 0.999)


@pytest.fixture(scope="session")
def coarse_grid():
    """A cheaper 32 x 64 grid for property tests."""
    return default_grid(32, 64, 0.999)


@pytest.fixture()
def rng():
    return np.random.default_rng(20260823)


def random_poly(rng, degree=64, pad=256, zero_at_origin=True):
    """Random polynomial with coefficients in the unit bidisk, zero-padded so
    grid estimates see no truncation tail."""
    c = rng.uniform(-1.0, 1.0, (degree + 1, 2)) @ np.array([1.0, 1.0j])
    if zero_at_origin:
        c[0] = 0.0
    return PowerSeries(c).truncate(max(pad, degree))
