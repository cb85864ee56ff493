"""Points of S^3, stereographic charts, and normalized maps S^3 -> S^2."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import AtPole, ZeroTriple
from ..mapcore import GaussComponents, TripleField, canonical_which, omega_matrix

SPHERE_TOL = 1e-9

# Orientation of S^3 used for the Hopf invariant of each Gauss triple, as +1
# (boundary orientation of the standard ball in (x, y, u, v)) or -1 (reversed).
# Mirroring F swaps the triples and reverses S^3, so the two entries must have
# opposite signs for lambda(Mir F) = rho(F).  The overall sign is fixed by
# lambda(z * conj(w)) = 1: in the standard orientation the self-dual triple of
# z * conj(w) has Hopf invariant -1 and the anti-self-dual triple of z * w has +1.
TRIPLE_ORIENTATION = {"+": -1, "-": 1}


@dataclass(frozen=True)
class SpherePoint:
    coords: tuple

    def __post_init__(self):
        c = tuple(float(t) for t in self.coords)
        if len(c) != 4:
            raise ValueError("SpherePoint needs 4 coordinates")
        if abs(np.linalg.norm(c) - 1.0) >= SPHERE_TOL:
            raise ValueError(f"point {c} is not on the unit 3-sphere")
        object.__setattr__(self, "coords", c)

    @classmethod
    def normalized(cls, v) -> "SpherePoint":
        v = np.asarray(v, dtype=float)
        return cls(tuple(v / np.linalg.norm(v)))

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.coords, dtype=dtype)


# -- stereographic projection ------------------------------------------------

def tangent_frame(pole) -> np.ndarray:
    """Orthonormal basis (4x3, columns e1, e2, e3) of pole^perp with det[pole, E] < 0.

    With that sign, projection from ``pole`` preserves orientation when S^3
    carries the boundary orientation of the unit 4-ball (outward normal first).
    """
    N = np.asarray(pole, dtype=float)
    N = N / np.linalg.norm(N)
    # complete N to a basis, Gram-Schmidt on the standard vectors least aligned with N
    order = np.argsort(np.abs(N))
    Q, _ = np.linalg.qr(np.column_stack([N] + [np.eye(4)[:, k] for k in order[:3]]))
    E = Q[:, 1:4]
    E = E - np.outer(N, N @ E)
    if np.linalg.det(np.column_stack([N, E])) > 0:
        E[:, 0] = -E[:, 0]
    return E


class Stereographic:
    """Projection S^3 minus ``pole`` -> R^3, its inverse, and both Jacobians."""

    def __init__(self, pole):
        self.pole = np.asarray(pole, dtype=float) / np.linalg.norm(pole)
        self.frame = tangent_frame(self.pole)

    def forward(self, s, tol: float = 1e-12):
        s = np.asarray(s, dtype=float)
        denom = 1.0 - s @ self.pole
        if np.any(denom <= tol):
            raise AtPole("point coincides with the projection pole")
        return (s @ self.frame) / denom[..., None]

    def inverse(self, X):
        X = np.asarray(X, dtype=float)
        r2 = (X * X).sum(-1)[..., None]
        return (2.0 * X @ self.frame.T + (r2 - 1.0) * self.pole) / (r2 + 1.0)

    def forward_jacobian(self, s):
        """d(forward)/ds, shape (..., 3, 4)."""
        s = np.asarray(s, dtype=float)
        denom = (1.0 - s @ self.pole)[..., None, None]
        proj = (s @ self.frame)[..., :, None]
        return self.frame.T / denom + proj * self.pole / denom ** 2

    def inverse_jacobian(self, X):
        """d(inverse)/dX, shape (..., 4, 3)."""
        X = np.asarray(X, dtype=float)
        r2 = (X * X).sum(-1)[..., None, None]
        s = self.inverse(X)
        diff = (self.pole - s)[..., :, None]
        return 2.0 * (self.frame + diff * X[..., None, :]) / (r2 + 1.0)

    @staticmethod
    def conformal_factor(X):
        """|d(inverse)| = 2 / (1 + |X|^2)."""
        X = np.asarray(X, dtype=float)
        return 2.0 / (1.0 + (X * X).sum(-1))


def stereographic(point, pole):
    """Project ``point`` of S^3 to R^3 from ``pole``; returns (X, chart)."""
    chart = Stereographic(pole)
    return chart.forward(np.asarray(point, dtype=float)), chart


# -- normalized Gauss maps -----------------------------------------------------

class SphereMap:
    """p(x) = T(r x) / |T(r x)| for a polynomial triple T and unit-sphere points x.

    ``orientation`` is +1 when Hopf invariants are taken with respect to the
    boundary orientation of the standard ball in (x, y, u, v), and -1 for the
    reversed orientation; see ``TRIPLE_ORIENTATION`` for the Gauss triples.
    """

    def __init__(self, triple, radius: float = 1.0, orientation: int = 1,
                 guard_tolerance: float = 1e-12, label: str = ""):
        if radius <= 0:
            raise ValueError("radius must be positive")
        if orientation not in (1, -1):
            raise ValueError("orientation must be +1 or -1")
        self.field = TripleField(triple)
        self.radius = float(radius)
        self.orientation = orientation
        self.guard_tolerance = guard_tolerance
        self.label = label

    @property
    def triple(self):
        return self.field.triple

    def raw(self, x):
        """T and its Jacobian with respect to unit-sphere coordinates."""
        T, J = self.field.values_and_jacobian(self.radius * np.asarray(x, dtype=float))
        return T, self.radius * J

    def _guard(self, norm):
        bad = norm < self.guard_tolerance
        if np.any(bad):
            raise ZeroTriple(f"Gauss triple {self.label or ''} nearly vanishes "
                             f"(|T| = {float(np.min(norm)):.3g})")

    def __call__(self, x):
        T = self.field.values(self.radius * np.asarray(x, dtype=float))
        norm = np.linalg.norm(T, axis=-1)
        self._guard(norm)
        return T / norm[..., None]

    def value_and_derivative(self, x):
        """p(x) and dp(x) (shape (..., 3, 4)) as a map on R^4."""
        T, J = self.raw(x)
        norm = np.linalg.norm(T, axis=-1)
        self._guard(norm)
        P = T / norm[..., None]
        proj = np.eye(3) - P[..., :, None] * P[..., None, :]
        return P, proj @ J / norm[..., None, None]

    def omega(self, x):
        """Pulled-back (unnormalized) area form as an antisymmetric (..., 4, 4) array."""
        T, J = self.raw(x)
        self._guard(np.linalg.norm(T, axis=-1))
        return omega_matrix(T, J)


def normalized_map(gc: GaussComponents, which: str, radius: float = 1.0,
                   guard_tolerance: float = 1e-12, orientation: int | None = None) -> SphereMap:
    """Normalized self-dual ('+') or anti-self-dual ('-') triple of a Gauss map.

    The orientation used for its Hopf invariant defaults to
    ``TRIPLE_ORIENTATION[which]``.
    """
    if orientation is None:
        orientation = TRIPLE_ORIENTATION[canonical_which(which)]
    return SphereMap(gc.triple(which), radius=radius, orientation=orientation,
                     guard_tolerance=guard_tolerance, label=which)
