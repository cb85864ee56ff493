import importlib

import numpy as np
import pytest

from hopflambda.hopf import _kernels_py, kernels

try:
    _ext = importlib.import_module("hopflambda.hopf._kernels")
except ImportError:
    _ext = None

needs_ext = pytest.mark.skipif(_ext is None, reason="compiled extension not built")


def _circle(n, center, a, b, r=1.0):
    t = np.linspace(0, 2 * np.pi, n, endpoint=False)
    pts = np.tile(np.asarray(center, dtype=float), (n, 1))
    pts[:, a] += r * np.cos(t)
    pts[:, b] += r * np.sin(t)
    return pts


def test_python_linking_of_hopf_link():
    c1 = _circle(500, [0, 0, 0], 0, 1)
    c2 = _circle(500, [1, 0, 0], 0, 2)
    assert abs(_kernels_py.gauss_linking_sum(c1, c2)) == pytest.approx(1, abs=0.01)
    far = _circle(500, [5, 0, 0], 0, 1)
    assert _kernels_py.gauss_linking_sum(c1, far) == pytest.approx(0, abs=0.01)


def test_python_helicity_brute_force():
    rng = np.random.default_rng(1)
    X, W = rng.standard_normal((60, 3)), rng.standard_normal((60, 3))
    full, half = 0.0, 0.0
    for i in range(60):
        for j in range(i + 1, 60):
            d = X[i] - X[j]
            r = np.linalg.norm(d)
            val = np.linalg.det(np.stack([W[i], W[j], d])) / r ** 3
            full += val if r > 0.5 else 0.0
            half += val if r > 0.25 else 0.0
    got = _kernels_py.helicity_pair_sums(X, W, 0.5)
    assert got[0] == pytest.approx(full, rel=1e-10)
    assert got[1] == pytest.approx(half, rel=1e-10)


@needs_ext
def test_backends_agree():
    rng = np.random.default_rng(2)
    X, W = rng.standard_normal((700, 3)), rng.standard_normal((700, 3))
    a = _ext.helicity_pair_sums(X, W, 0.05)
    b = _kernels_py.helicity_pair_sums(X, W, 0.05)
    assert np.allclose(a, b, rtol=1e-9)
    c1 = _circle(300, [0, 0, 0], 0, 1)
    c2 = _circle(333, [1, 0, 0], 0, 2)
    assert _ext.gauss_linking_sum(c1, c2) == pytest.approx(_kernels_py.gauss_linking_sum(c1, c2),
                                                            rel=1e-10)


def test_selected_backend():
    assert kernels.BACKEND in ("cython", "python")
    if _ext is not None:
        assert kernels.BACKEND == "cython"


def test_pure_python_switch():
    import subprocess
    import sys
    out = subprocess.run([sys.executable, "-c",
                          "from hopflambda.hopf import kernels; print(kernels.BACKEND)"],
                         env={"HOPFLAMBDA_PURE_PYTHON": "1", "PATH": ""}, capture_output=True,
                         text=True, check=True)
    assert out.stdout.strip() == "python"
