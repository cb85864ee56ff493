import numpy as np
from hypothesis import given, strategies as st

import pytest

from hopflambda.config import RunConfig
from hopflambda.dsl import parse_map
from hopflambda.enhancement import (EnhancementReport, brieskorn_mu, full_report, lambda_of,
                                    mu_of, rho_of)
from hopflambda.errors import NotIsolated
from hopflambda.mapcore import gauss_components, mirror

FAST = RunConfig(isolation_samples=20_000)


def test_brieskorn_examples():
    assert brieskorn_mu(2, 3) == 2
    assert brieskorn_mu(1, 5) == 0
    assert brieskorn_mu(3, 4) == 6
    with pytest.raises(ValueError):
        brieskorn_mu(0, 2)


@pytest.mark.parametrize("p", range(1, 8))
@pytest.mark.parametrize("q", range(1, 8))
def test_brieskorn_closed_form(p, q):
    # the local algebra C[z, w] / (z^(p-1), w^(q-1)) has dimension (p-1)(q-1)
    assert brieskorn_mu(p, q) == (p - 1) * (q - 1)


@pytest.mark.parametrize("src, lam, rho", [
    ("F = z*w", 0, 1),
    ("F = z*conj(w)", 1, 0),
    ("F = z^2 - w^3", 0, 2),
    ("f = x; g = y", 0, 0),
])
def test_lambda_rho_mu(src, lam, rho):
    F = parse_map(src)
    assert lambda_of(F, FAST).value == lam
    assert rho_of(F, FAST).value == rho
    assert mu_of(F, FAST) == lam + rho


def test_not_isolated():
    with pytest.raises(NotIsolated):
        lambda_of(parse_map("f = x*y; g = 0"), FAST)


def test_report_zw():
    r = full_report(parse_map("F = z*w"), RunConfig(method="both", check_radii=(0.5,)))
    assert (r.lambda_, r.rho, r.mu, r.mirror_lambda) == (0, 1, 1, 1)
    assert r.all_passed
    names = {c.name for c in r.checks}
    assert {"isolated_critical_point", "linking_residual", "method_agreement", "mirror_relation",
            "mirror_swap", "radius_invariance_0.5"} <= names


def test_report_zwbar():
    r = full_report(parse_map("F = z*conj(w)"), FAST)
    assert (r.lambda_, r.rho, r.mu, r.mirror_lambda) == (1, 0, 1, 0)
    assert r.check("mirror_relation").passed


def test_report_brieskorn_check():
    r = full_report(parse_map("F = z^2 - w^3"), FAST)
    assert r.check("brieskorn_mu").passed
    assert r.mu == 2


def test_report_degenerate():
    r = full_report(parse_map("f = x*y; g = 0"), FAST)
    assert not r.computed and not r.all_passed
    assert r.lambda_ is None and r.mu is None
    assert "isolated critical point check failed" in r.checks[0].detail


def test_mu_is_sum():
    with pytest.raises(ValueError):
        EnhancementReport("F", 1.0, 0, "linking", lambda_=1, rho=1, mu=3)


def test_report_dict_keys():
    d = full_report(parse_map("F = z*w"), FAST).to_dict()
    for key in ("map_source", "radius", "seed", "lambda", "rho", "mu", "lambda_estimate",
                "rho_estimate", "checks", "timings", "timestamp"):
        assert key in d
    assert set(d["lambda_estimate"]) >= {"raw", "residual", "method"}
    assert all(set(c) == {"name", "pass", "detail"} for c in d["checks"])
    assert d["timings"] == {}


def test_mirror_relation_on_cusp_mirror():
    F = mirror(parse_map("F = z^2 - w^3"))
    assert lambda_of(F, FAST).value == 2
    assert rho_of(F, FAST).value == 0


holo_terms = st.lists(st.tuples(st.integers(-3, 3), st.integers(0, 3), st.integers(0, 3))
                      .filter(lambda t: t[0] != 0 and t[1] + t[2] > 0), min_size=1, max_size=4)


@given(holo_terms)
def test_holomorphic_self_dual_triple_is_constant(terms):
    # without conj, df^dg is of type (1,1): B+ and C+ vanish identically and A+ >= 0
    src = "F = " + " + ".join(f"({c})*z^{a}*w^{b}" for c, a, b in terms)
    gc = gauss_components(parse_map(src))
    assert gc.bP.is_zero and gc.cP.is_zero
    pts = np.random.default_rng(0).standard_normal((50, 4))
    assert np.all(gc.aP(pts) >= -1e-9 * (1 + np.abs(gc.aP(pts)).max()))


@pytest.mark.parametrize("src", ["F = z^3 - w^4", "F = z^2 + w^2", "F = z*w + w^3", "F = z^2 - w^5"])
def test_holomorphic_lambda_vanishes(src):
    assert lambda_of(parse_map(src), FAST).value == 0
