"""Maps F = (f, g): R^4 -> R^2, their Plücker minors and fiberwise Gauss-map triples.

Coordinates are (x, y, u, v), oriented by dx^dy^du^dv.  For a 2x4 Jacobian with
rows df, dg the six Plücker minors are ``p_ij = f_i g_j - f_j g_i``.  The
self-dual and anti-self-dual parts of df^dg are recorded by the triples::

    A+ = p_xy + p_uv    B+ = p_xu - p_yv    C+ = p_xv + p_yu
    A- = p_xy - p_uv    B- = p_xu + p_yv    C- = p_xv - p_yu
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NonzeroConstantTerm, RankDeficient, ZeroTriple
from .poly import VARS, Poly4, PolyBundle, format_poly
from .sampling import sphere_points

MINOR_KEYS = ("xy", "xu", "xv", "yu", "yv", "uv")
# index pairs (i, j) for dx_i ^ dx_j, in the order of MINOR_KEYS
FORM_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))

# orientation-reversing involution used for mirror images: y -> -y
MIRROR_SIGNS = (1.0, -1.0, 1.0, 1.0)


@dataclass(frozen=True)
class MapR4R2:
    f: Poly4
    g: Poly4
    source_text: str = field(default="", compare=False)

    def __post_init__(self):
        if self.f.constant_term != 0.0 or self.g.constant_term != 0.0:
            raise NonzeroConstantTerm(
                f"F(0) must be 0, got ({self.f.constant_term:g}, {self.g.constant_term:g})")

    def __str__(self):
        return f"f = {format_poly(self.f)}; g = {format_poly(self.g)}"

    def jacobian(self, points) -> np.ndarray:
        """DF at ``points`` (shape (..., 4)) as an array of shape (..., 2, 4)."""
        grads = [self.f.partial(k) for k in range(4)] + [self.g.partial(k) for k in range(4)]
        vals = PolyBundle(grads)(points)
        return vals.reshape(vals.shape[:-1] + (2, 4))


@dataclass(frozen=True)
class GaussComponents:
    aP: Poly4
    bP: Poly4
    cP: Poly4
    aM: Poly4
    bM: Poly4
    cM: Poly4

    def triple(self, which: str) -> tuple:
        if canonical_which(which) == "+":
            return (self.aP, self.bP, self.cP)
        return (self.aM, self.bM, self.cM)


_WHICH = {"+": "+", "plus": "+", "self-dual": "+",
          "-": "-", "minus": "-", "anti-self-dual": "-"}


def canonical_which(which: str) -> str:
    """Normalize '+', 'plus', 'self-dual' (and the '-' spellings) to '+' or '-'."""
    try:
        return _WHICH[which]
    except KeyError:
        raise ValueError(f"which must be '+' or '-', got {which!r}") from None


def partial(p: Poly4, var) -> Poly4:
    return p.partial(var)


def plucker_minors(F: MapR4R2) -> dict:
    df = F.f.gradient()
    dg = F.g.gradient()
    out = {}
    for key, (i, j) in zip(MINOR_KEYS, FORM_PAIRS):
        out[key] = df[i] * dg[j] - df[j] * dg[i]
    return out


def gauss_components(F: MapR4R2) -> GaussComponents:
    p = plucker_minors(F)
    return GaussComponents(
        aP=p["xy"] + p["uv"], bP=p["xu"] - p["yv"], cP=p["xv"] + p["yu"],
        aM=p["xy"] - p["uv"], bM=p["xu"] + p["yv"], cM=p["xv"] - p["yu"],
    )


def mirror(F: MapR4R2) -> MapR4R2:
    """F composed with (x, y, u, v) -> (x, -y, u, v)."""
    src = f"mirror({F.source_text or F})"
    return MapR4R2(F.f.scale_vars(MIRROR_SIGNS), F.g.scale_vars(MIRROR_SIGNS), src)


class TripleField:
    """Evaluates a triple (A, B, C) and its 3x4 Jacobian, vectorized over points."""

    def __init__(self, triple):
        self.triple = tuple(triple)
        polys = list(self.triple)
        for p in self.triple:
            polys.extend(p.partial(k) for k in range(4))
        self._bundle = PolyBundle(polys)

    def values_and_jacobian(self, points):
        vals = self._bundle(points)
        T = vals[..., :3]
        J = vals[..., 3:].reshape(vals.shape[:-1] + (3, 4))
        return T, J

    def values(self, points):
        return self.values_and_jacobian(points)[0]


def omega_matrix(T, J) -> np.ndarray:
    """Antisymmetric 4x4 matrix of (A dB^dC + B dC^dA + C dA^dB) / |T|^3.

    ``T`` has shape (..., 3) and ``J`` shape (..., 3, 4).  Entry (i, j) equals
    T . (d_i T x d_j T) / |T|^3.
    """
    T = np.asarray(T, dtype=float)
    J = np.asarray(J, dtype=float)
    norm = np.linalg.norm(T, axis=-1)
    # cofactor rows: (T x d_i T) for each i, then dot with d_j T
    cols = np.swapaxes(J, -1, -2)  # (..., 4, 3) -- column i is d_i T
    cross = np.cross(T[..., None, :], cols)  # (..., 4, 3): T x d_i T
    M = np.einsum("...ik,...jk->...ij", cross, cols)  # (T x d_iT) . d_jT = T . (d_iT x d_jT)
    with np.errstate(divide="ignore", invalid="ignore"):
        M = M / (norm ** 3)[..., None, None]
    return M


def omega_pullback(which: str, F: MapR4R2, point, tol: float = 1e-14) -> np.ndarray:
    """Six components of the pulled-back area 2-form of the ``which`` triple.

    Components are ordered dx^dy, dx^du, dx^dv, dy^du, dy^dv, du^dv.  The
    form is not divided by 4 pi.
    """
    field_ = TripleField(gauss_components(F).triple(which))
    T, J = field_.values_and_jacobian(np.asarray(point, dtype=float))
    if np.linalg.norm(T) < tol:
        raise ZeroTriple(f"triple vanishes at {np.asarray(point).tolist()}")
    M = omega_matrix(T, J)
    return np.array([M[i, j] for i, j in FORM_PAIRS])


def gram_norm_defect(F: MapR4R2, points) -> float:
    """Largest relative violation of |T±|^2 = |df|^2 |dg|^2 - (df.dg)^2."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    gc = gauss_components(F)
    DF = F.jacobian(pts)
    df, dg = DF[:, 0, :], DF[:, 1, :]
    rhs = (df * df).sum(1) * (dg * dg).sum(1) - (df * dg).sum(1) ** 2
    worst = 0.0
    for which in "+-":
        lhs = (TripleField(gc.triple(which)).values(pts) ** 2).sum(1)
        scale = np.maximum(np.abs(lhs), np.abs(rhs))
        keep = scale >= 1e-30
        if keep.any():
            worst = max(worst, float(np.max(np.abs(lhs - rhs)[keep] / scale[keep])))
    return worst


def plucker_relation_defect(F: MapR4R2, points, relative: bool = False) -> float:
    """max |p_xy p_uv - p_xu p_yv + p_xv p_yu| over ``points``.

    With ``relative=True`` each value is divided by sum(p_ij^2) (points where
    that sum is below 1e-30 are skipped).
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    minors = plucker_minors(F)
    vals = PolyBundle([minors[k] for k in MINOR_KEYS])(pts)
    pxy, pxu, pxv, pyu, pyv, puv = vals.T
    rel = np.abs(pxy * puv - pxu * pyv + pxv * pyu)
    if relative:
        scale = (vals ** 2).sum(1)
        keep = scale >= 1e-30
        if not keep.any():
            return 0.0
        rel = rel[keep] / scale[keep]
    return float(rel.max()) if rel.size else 0.0


def verify_isolated(F: MapR4R2, radius: float = 1.0, n_samples: int = 100_000) -> float:
    """Minimum of sum(p_ij^2) over a low-discrepancy sample of the radius-sphere."""
    if radius <= 0 or n_samples < 1:
        raise ValueError("radius must be > 0 and n_samples >= 1")
    pts = radius * sphere_points(n_samples)
    minors = plucker_minors(F)
    vals = PolyBundle([minors[k] for k in MINOR_KEYS])(pts)
    return float((vals ** 2).sum(1).min())


def _restricted_singular_values(L):
    """Singular values of a 3x2 matrix from its 2x2 Gram matrix, largest first."""
    G = L.T @ L
    a, b, c = G[0, 0], G[0, 1], G[1, 1]
    mean = 0.5 * (a + c)
    rad = np.hypot(0.5 * (a - c), b)
    s1 = np.sqrt(max(mean + rad, 0.0))
    s2 = np.sqrt(max(mean - rad, 0.0))
    return s1, s2


def conformality_defect(F: MapR4R2, point, rank_tol: float = 1e-10) -> tuple:
    """(sigma1 - sigma2)/(sigma1 + sigma2) for each normalized triple on ker DF.

    Returns (self-dual defect, anti-self-dual defect); a vanishing restricted
    derivative counts as conformal (defect 0).
    """
    x = np.asarray(point, dtype=float)
    DF = F.jacobian(x)
    _, s, Vt = np.linalg.svd(DF)
    if s[0] == 0.0 or s[1] <= rank_tol * s[0]:
        raise RankDeficient(f"DF has rank < 2 at {x.tolist()}")
    K = Vt[2:].T  # 4x2 orthonormal basis of ker DF
    gc = gauss_components(F)
    out = []
    for which in "+-":
        T, J = TripleField(gc.triple(which)).values_and_jacobian(x)
        nrm = np.linalg.norm(T)
        if nrm < 1e-300:
            raise ZeroTriple(f"triple {which} vanishes at {x.tolist()}")
        P = T / nrm
        dP = (np.eye(3) - np.outer(P, P)) @ J / nrm
        s1, s2 = _restricted_singular_values(dP @ K)
        total = s1 + s2
        out.append(0.0 if total <= 1e-300 * max(1.0, nrm) else float((s1 - s2) / total))
    return tuple(out)


__all__ = [
    "VARS", "canonical_which", "MINOR_KEYS", "FORM_PAIRS", "MIRROR_SIGNS", "MapR4R2", "GaussComponents",
    "TripleField", "partial", "plucker_minors", "gauss_components", "mirror",
    "omega_matrix", "omega_pullback", "gram_norm_defect", "plucker_relation_defect",
    "verify_isolated", "conformality_defect",
]
