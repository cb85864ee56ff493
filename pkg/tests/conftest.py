import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(0)


def fd_jacobian(fn, x, h=1e-6):
    """Central-difference Jacobian of fn: R^4 -> R^k at x, shape (k, 4)."""
    x = np.asarray(x, dtype=float)
    cols = []
    for k in range(4):
        e = np.zeros(4)
        e[k] = h
        cols.append((np.asarray(fn(x + e)) - np.asarray(fn(x - e))) / (2 * h))
    return np.stack(cols, axis=-1)
