"""Pure numpy versions of the pair-sum kernels (fallback for the Cython module)."""

import numpy as np

_CHUNK = 256


def gauss_linking_sum(P1, P2):
    """Midpoint-rule Gauss integral for two closed polygons in R^3, divided by 4 pi."""
    P1 = np.ascontiguousarray(P1, dtype=float)
    P2 = np.ascontiguousarray(P2, dtype=float)
    d1 = np.roll(P1, -1, axis=0) - P1
    d2 = np.roll(P2, -1, axis=0) - P2
    m1 = P1 + 0.5 * d1
    m2 = P2 + 0.5 * d2
    total = 0.0
    for start in range(0, len(m1), _CHUNK):
        r = m1[start:start + _CHUNK, None, :] - m2[None, :, :]
        cr = np.cross(d1[start:start + _CHUNK, None, :], d2[None, :, :])
        dist = np.sqrt((r * r).sum(-1))
        total += ((cr * r).sum(-1) / dist ** 3).sum()
    return total / (4.0 * np.pi)


def helicity_pair_sums(X, W, cutoff):
    """Sums of det[W_i, W_j, X_i - X_j] / |X_i - X_j|^3 over pairs i < j.

    Returns (sum over pairs farther apart than ``cutoff``,
             sum over pairs farther apart than ``cutoff / 2``).
    """
    X = np.ascontiguousarray(X, dtype=float)
    W = np.ascontiguousarray(W, dtype=float)
    n = len(X)
    s_full = 0.0
    s_half = 0.0
    c2 = cutoff * cutoff
    h2 = 0.25 * c2
    for start in range(0, n, _CHUNK):
        stop = min(n, start + _CHUNK)
        xi, wi = X[start:stop, None, :], W[start:stop, None, :]
        r = xi - X[None, :, :]
        d2 = (r * r).sum(-1)
        val = (np.cross(wi, W[None, :, :]) * r).sum(-1)
        i_idx = np.arange(start, stop)[:, None]
        upper = np.arange(n)[None, :] > i_idx
        with np.errstate(divide="ignore", invalid="ignore"):
            k = val / (d2 * np.sqrt(d2))
        far_half = upper & (d2 > h2)
        s_half += k[far_half].sum()
        s_full += k[far_half & (d2 > c2)].sum()
    return s_full, s_half
