"""Deterministic point sets on S^3 and random directions on S^2."""

import warnings

import numpy as np
from scipy.stats import qmc


def hopf_coordinates_to_s3(unit_cube):
    """Map points of [0,1)^3 to S^3 so that uniform input gives uniform output.

    (s, t1, t2) -> (sqrt(1-s) e^{2 pi i t1}, sqrt(s) e^{2 pi i t2}) as (x, y, u, v).
    """
    s, t1, t2 = np.asarray(unit_cube, dtype=float).T
    a, b = np.sqrt(1.0 - s), np.sqrt(s)
    th1, th2 = 2 * np.pi * t1, 2 * np.pi * t2
    return np.stack([a * np.cos(th1), a * np.sin(th1), b * np.cos(th2), b * np.sin(th2)], axis=-1)


def sphere_points(n: int, seed: int = 0) -> np.ndarray:
    """``n`` low-discrepancy points on the unit 3-sphere (scrambled Sobol, fixed seed)."""
    sobol = qmc.Sobol(d=3, scramble=True, seed=seed)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", UserWarning)  # non power-of-two sample sizes
        cube = sobol.random(n)
    return hopf_coordinates_to_s3(cube)


def random_unit_vectors(rng: np.random.Generator, n: int, dim: int) -> np.ndarray:
    v = rng.standard_normal((n, dim))
    return v / np.linalg.norm(v, axis=1, keepdims=True)
