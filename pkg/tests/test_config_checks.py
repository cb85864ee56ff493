import numpy as np
import pytest

from hopflambda import checks
from hopflambda.config import RunConfig


def test_defaults():
    c = RunConfig()
    assert (c.method, c.radius, c.seed, c.budget, c.step) == ("linking", 1.0, 0, 10 ** 7, 0.02)
    assert RunConfig(method="both").methods == ("linking", "whitehead")
    assert RunConfig(method="whitehead").primary_method == "whitehead"


@pytest.mark.parametrize("kw", [dict(radius=0), dict(budget=9999), dict(step=0.0),
                                dict(step=0.3), dict(seed=-1), dict(method="foo"),
                                dict(output="xml"), dict(threads=0)])
def test_invalid(kw):
    with pytest.raises(ValueError):
        RunConfig(**kw)


def test_identity_suite_passes():
    rows = checks.run_identity_suite(n_random=5, n_points=200)
    assert len(rows) == 2 * len(checks.FIXED_BATTERY) + 5
    assert all(r.passed for r in rows)


def test_identity_suite_deterministic():
    a = checks.run_identity_suite(n_random=4, seed=7, n_points=100)
    b = checks.run_identity_suite(n_random=4, seed=7, n_points=100)
    assert a == b


def test_random_map_shape():
    F = checks.random_map(np.random.default_rng(3))
    assert F.f.degree <= 3 and F.g.degree <= 3
    assert F.f.constant_term == 0 and F.g.constant_term == 0
