import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import fd_jacobian
from hopflambda.dsl import parse_map
from hopflambda.errors import NonzeroConstantTerm, RankDeficient
from hopflambda.mapcore import (MINOR_KEYS, MapR4R2, conformality_defect, gauss_components,
                                gram_norm_defect, mirror, omega_pullback, plucker_minors,
                                plucker_relation_defect, verify_isolated)
from hopflambda.poly import Poly4
from hopflambda.checks import random_ball_points, random_map
from hopflambda.sampling import sphere_points

x, y, u, v = (Poly4.var(n) for n in "xyuv")
ZW = parse_map("F = z*w")
LIN = parse_map("f = x; g = y")


def test_partial_examples():
    assert (x * u - y * v).partial("x") == u
    assert Poly4.zero().partial("y").is_zero
    assert (x ** 2 * u ** 3).partial("u") == 3 * x ** 2 * u ** 2


def test_minors_of_zw():
    m = plucker_minors(ZW)
    assert m["xy"] == u ** 2 + v ** 2
    assert m["uv"] == x ** 2 + y ** 2


def test_minors_of_projection():
    m = plucker_minors(LIN)
    assert m["xy"] == 1
    assert all(m[k].is_zero for k in MINOR_KEYS if k != "xy")


def _fd_minors(F, point):
    J = fd_jacobian(lambda p: np.array([F.f(p), F.g(p)]), point)
    idx = {c: k for k, c in enumerate("xyuv")}
    return {k: J[0, idx[k[0]]] * J[1, idx[k[1]]] - J[0, idx[k[1]]] * J[1, idx[k[0]]]
            for k in MINOR_KEYS}


def test_minors_against_finite_differences(rng):
    for _ in range(5):
        F = random_map(rng)
        p = rng.uniform(-1, 1, 4)
        exact = plucker_minors(F)
        approx = _fd_minors(F, p)
        for k in MINOR_KEYS:
            assert exact[k](p) == pytest.approx(approx[k], rel=1e-6, abs=1e-6)


def test_gauss_components_zw():
    gc = gauss_components(ZW)
    assert (gc.aP, gc.bP, gc.cP) == (x * x + y * y + u * u + v * v, Poly4.zero(), Poly4.zero())
    assert gc.aM == u * u + v * v - x * x - y * y
    assert gc.bM == 2 * (y * u - x * v)
    assert gc.cM == 2 * (x * u + y * v)


def test_gauss_components_projection():
    gc = gauss_components(LIN)
    assert gc.triple("+") == (1, 0, 0)
    assert gc.triple("-") == (1, 0, 0)


def test_component_formulas_hold_generally(rng):
    for _ in range(5):
        F = random_map(rng)
        m, gc = plucker_minors(F), gauss_components(F)
        assert gc.aP - (m["xy"] + m["uv"]) == 0
        assert gc.bP - (m["xu"] - m["yv"]) == 0
        assert gc.cP - (m["xv"] + m["yu"]) == 0
        assert gc.aM - (m["xy"] - m["uv"]) == 0
        assert gc.bM - (m["xu"] + m["yv"]) == 0
        assert gc.cM - (m["xv"] - m["yu"]) == 0


def test_norm_identity_examples(rng):
    assert gram_norm_defect(ZW, rng.standard_normal((50, 4))) < 1e-12
    assert gram_norm_defect(LIN, [[1.0, 0, 0, 0]]) == 0.0
    F = random_map(rng)
    assert gram_norm_defect(F, random_ball_points(rng, 1000)) < 1e-9


def test_plucker_examples():
    assert plucker_relation_defect(LIN, sphere_points(100)) == 0.0
    assert plucker_relation_defect(ZW, [[1.0, 1.0, 1.0, 1.0]]) < 1e-12


@given(st.integers(0, 2 ** 32 - 1))
def test_identities_property(seed):
    r = np.random.default_rng(seed)
    F = random_map(r)
    pts = random_ball_points(r, 50)
    assert gram_norm_defect(F, pts) < 1e-9
    assert plucker_relation_defect(F, pts, relative=True) < 1e-9


def test_verify_isolated():
    assert verify_isolated(ZW) == pytest.approx(1.0, abs=1e-9)
    assert verify_isolated(LIN) == pytest.approx(1.0)
    assert verify_isolated(parse_map("f = x*y; g = 0"), n_samples=1000) == 0.0


def test_mirror():
    M = mirror(ZW)
    assert M == MapR4R2(x * u + y * v, x * v - y * u)
    assert M == MapR4R2(parse_map("F = z*conj(w)").f, -parse_map("F = z*conj(w)").g)
    assert mirror(mirror(ZW)) == ZW
    assert mirror(LIN) == MapR4R2(x, -y)


def test_mirror_swaps_triples_on_zw():
    # T+(F o r) = diag(-1, 1, 1) T-(F) o r, with r: y -> -y
    gp = gauss_components(mirror(ZW))
    gm = gauss_components(ZW)
    r = (1, -1, 1, 1)
    assert gp.aP == -gm.aM.scale_vars(r)
    assert gp.bP == gm.bM.scale_vars(r)
    assert gp.cP == gm.cM.scale_vars(r)


def test_nonzero_constant_rejected():
    with pytest.raises(NonzeroConstantTerm):
        MapR4R2(x + 1, y)


def test_omega_pullback():
    assert np.allclose(omega_pullback("+", ZW, [0.3, 0.1, -0.5, 0.2]), 0)
    assert np.allclose(omega_pullback("-", LIN, [0.3, 0.1, -0.5, 0.2]), 0)
    w = omega_pullback("-", ZW, [1.0, 0, 0, 0])
    assert np.linalg.norm(w) > 0.1


def test_omega_is_pullback_of_area(rng):
    # omega(a, b) = P . (dP a x dP b) for the normalized triple P = T / |T|
    F = parse_map("F = z^2 - w^3")
    gc = gauss_components(F)
    for which in "+-":
        T = gc.triple(which)
        P = lambda p: np.array([c(p) for c in T]) / np.linalg.norm([c(p) for c in T])
        pt = rng.standard_normal(4) * 0.5
        D = fd_jacobian(P, pt)
        w = omega_pullback(which, F, pt)
        k = 0
        for i in range(4):
            for j in range(i + 1, 4):
                expect = P(pt) @ np.cross(D[:, i], D[:, j])
                assert w[k] == pytest.approx(expect, rel=1e-5, abs=1e-6)
                k += 1


@pytest.mark.parametrize("src", ["F = z*w", "F = z^2 - w^3"])
def test_conformality_complex_maps(src):
    F = parse_map(src)
    worst = 0.0
    for p in sphere_points(100, seed=5):
        worst = max(worst, *conformality_defect(F, p))
    assert worst < 1e-6


def test_conformality_constant_map():
    assert conformality_defect(LIN, [0.2, 0.4, 0.1, 0.5]) == (0.0, 0.0)


def test_conformality_rank_deficient():
    with pytest.raises(RankDeficient):
        conformality_defect(parse_map("f = x*y; g = 0"), [0.5, 0.5, 0.5, 0.5])
