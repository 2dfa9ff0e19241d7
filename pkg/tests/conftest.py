import numpy as np
import pytest

from robust3s.scatter import ScatterConfig


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def fast_cfg():
    """Menos subconjuntos elementales para que los tests corran en segundos."""
    return ScatterConfig(subsamples=60, best=5)


def linear_data(rng, n=200, p=3, sigma=0.5):
    X = rng.standard_normal((n, p))
    beta = np.arange(1, p + 1, dtype=float)
    y = 1.0 + X @ beta + sigma * rng.standard_normal(n)
    return X, y, beta
