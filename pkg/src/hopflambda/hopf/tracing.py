"""Preimage circles of a normalized map p: S^3 -> S^2.

A regular value q has preimage p^{-1}(q), a disjoint union of closed curves cut
out of R^4 by three equations::

    e1 . p(x) = 0,   e2 . p(x) = 0,   (|x|^2 - 1) / 2 = 0,   with q . p(x) > 0,

where (q, e1, e2) is a right-handed orthonormal frame of R^3.  Curves are
oriented so that (outward normal, tangent, v1, v2) is positive in R^4 whenever
dp(v1), dp(v2) is a positive basis of T_q S^2.  That tangent is the cofactor
vector ``t_k = det[x; e_k; grad g1; grad g2]``.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree

from ..errors import MaxStepsExceeded, RankDrop
from ..sampling import sphere_points
from .sphere import SphereMap

DEFAULT_STEP = 0.02
NEWTON_TOL = 1e-10
CLOSURE_TOL = 1e-6
MAX_STEPS = 1_000_000
COND_MAX = 1e8


def value_frame(q) -> tuple:
    """Unit q and e1, e2 with (q, e1, e2) right-handed orthonormal."""
    q = np.asarray(q, dtype=float)
    q = q / np.linalg.norm(q)
    helper = np.eye(3)[int(np.argmin(np.abs(q)))]
    e1 = np.cross(q, helper)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(q, e1)
    return q, e1, e2


@dataclass
class SphereCurve:
    """Closed polyline on S^3; the closing segment runs from the last point to the first."""

    points: np.ndarray
    closed: bool = True
    q: np.ndarray | None = None
    diagnostics: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.points)

    @property
    def segment_lengths(self) -> np.ndarray:
        return np.linalg.norm(np.roll(self.points, -1, axis=0) - self.points, axis=1)

    @property
    def length(self) -> float:
        return float(self.segment_lengths.sum())

    @property
    def max_step(self) -> float:
        return float(self.segment_lengths.max())

    def reversed(self) -> "SphereCurve":
        return SphereCurve(self.points[::-1].copy(), self.closed, self.q, dict(self.diagnostics))


class _Constraint:
    """The three defining equations of p^{-1}(q) and their Jacobian."""

    def __init__(self, p: SphereMap, q):
        self.p = p
        self.q, self.e1, self.e2 = value_frame(q)

    def __call__(self, x):
        P, dP = self.p.value_and_derivative(x)
        G = np.stack([P @ self.e1, P @ self.e2, 0.5 * ((x * x).sum(-1) - 1.0)], axis=-1)
        J = np.stack([self.e1 @ dP, self.e2 @ dP, x], axis=-2)
        return G, J, P @ self.q

    @staticmethod
    def tangent(x, J):
        """Oriented kernel vector of the 3x4 Jacobian (rows g1, g2, sphere)."""
        M = np.empty((4, 4, 4))
        M[:, 0, :] = x
        M[:, 1, :] = np.eye(4)
        M[:, 2, :] = J[0]
        M[:, 3, :] = J[1]
        with np.errstate(divide="ignore", invalid="ignore"):
            # LAPACK warns on the exactly singular cofactor matrices; those give 0
            return np.linalg.det(M)


def _newton_batch(con: _Constraint, x, iters: int = 40, tol: float = 1e-11):
    x = np.array(x, dtype=float)
    for _ in range(iters):
        G, J, _ = con(x)
        dx = -(np.linalg.pinv(J) @ G[..., None])[..., 0]
        n = np.linalg.norm(dx, axis=-1, keepdims=True)
        dx = np.where(n > 0.1, dx * (0.1 / np.maximum(n, 1e-300)), dx)
        x = x + dx
        x /= np.linalg.norm(x, axis=-1, keepdims=True)
    G, _, qdot = con(x)
    ok = (np.linalg.norm(G, axis=-1) < tol) & (qdot > 0)
    return x[ok]


def find_preimage_seeds(p: SphereMap, q, grid_density: int = 20_000, step: float = DEFAULT_STEP,
                        cap_angle: float = 0.5) -> np.ndarray:
    """Points of p^{-1}(q), at least one per component that the sample detects.

    Coarse low-discrepancy sampling keeps the points whose image lies within
    ``cap_angle`` radians of q; batch Gauss-Newton pulls them onto the preimage
    and points closer than 3 * step are merged.  Returns an (n, 4) array,
    empty when q is not attained.
    """
    con = _Constraint(p, q)
    cand = sphere_points(grid_density)
    P = p(cand)
    cand = cand[P @ con.q > np.cos(cap_angle)]
    if len(cand) == 0:
        return np.empty((0, 4))
    pts = _newton_batch(con, cand)
    if len(pts) == 0:
        return np.empty((0, 4))
    keep = []
    tree = cKDTree(pts)
    taken = np.zeros(len(pts), dtype=bool)
    for i in range(len(pts)):
        if taken[i]:
            continue
        keep.append(i)
        taken[tree.query_ball_point(pts[i], 3 * step)] = True
    return pts[keep]


def _correct(con: _Constraint, x, normal, anchor, tol: float = NEWTON_TOL, iters: int = 12):
    """Newton on the constraints plus the hyperplane normal . (y - anchor) = 0."""
    y = np.array(x, dtype=float)
    for _ in range(iters):
        G, J, qdot = con(y)
        F = np.append(G, normal @ (y - anchor))
        if np.linalg.norm(F) < tol:
            return y if qdot > 0 else None
        A = np.vstack([J, normal])
        try:
            dy = np.linalg.solve(A, -F)
        except np.linalg.LinAlgError:
            return None
        y = y + dy
        if not np.all(np.isfinite(y)):
            return None
    G, _, qdot = con(y)
    if np.linalg.norm(np.append(G, normal @ (y - anchor))) < tol and qdot > 0:
        return y
    return None


def _unit_tangent(con: _Constraint, x, cond_max: float):
    _, J, _ = con(x)
    s = np.linalg.svd(J, compute_uv=False)
    if s[-1] == 0.0 or s[0] / s[-1] > cond_max:
        raise RankDrop(f"constraint Jacobian is ill-conditioned at {x.tolist()}")
    t = con.tangent(x, J)
    return t / np.linalg.norm(t)


def trace_preimage(p: SphereMap, q, seed, step: float = DEFAULT_STEP, tol: float = NEWTON_TOL,
                   closure_tol: float = CLOSURE_TOL, max_steps: int = MAX_STEPS,
                   cond_max: float = COND_MAX) -> SphereCurve:
    """Follow the component of p^{-1}(q) through ``seed`` until it closes up."""
    con = _Constraint(p, q)
    x0 = np.asarray(seed, dtype=float)
    x0 = x0 / np.linalg.norm(x0)
    t0 = _unit_tangent(con, x0, cond_max)
    refined = _correct(con, x0, t0, x0, tol)
    if refined is None:
        raise RankDrop("seed does not lie on the preimage")
    x0 = refined
    t0 = _unit_tangent(con, x0, cond_max)

    pts = [x0]
    x, t = x0, t0
    h = h_cap = step
    h_min = step * 1e-4
    for n_steps in range(max_steps):
        d = x0 - x
        dist = np.linalg.norm(d)
        if len(pts) > 3 and dist <= 1.05 * step and d @ t > 0:
            y = _correct(con, x + (d @ t) * t, t0, x0, tol)
            if y is not None and np.linalg.norm(y - x0) < closure_tol:
                if dist > step:
                    # split the closing gap so that no segment exceeds the step
                    xm = x + 0.5 * (d @ t) * t
                    ym = _correct(con, xm, t, xm, tol)
                    if ym is not None:
                        pts.append(ym)
                break
        xp = x + h * t
        y = _correct(con, xp, t, xp, tol)
        if y is not None:
            chord = np.linalg.norm(y - x)
            if chord > step:
                # the corrector lands off the predictor line; shorten and retry
                h *= 0.999 * step / chord
                h_cap = h
                continue
            t_new = _unit_tangent(con, y, cond_max)
            if np.linalg.norm(y - xp) < 0.5 * h and t_new @ t > 0.9:
                x, t = y, t_new
                pts.append(y)
                h_cap = min(step, 1.01 * h_cap)
                h = min(h_cap, 1.5 * h)
                continue
        h *= 0.5
        if h < h_min:
            raise RankDrop(f"step size collapsed while tracing near {x.tolist()}")
    else:
        raise MaxStepsExceeded(f"curve did not close within {max_steps} steps")

    points = np.array(pts)
    G, _, _ = con(points)
    curve = SphereCurve(points, True, con.q.copy())
    curve.diagnostics = {
        "steps": n_steps,
        "max_residual": float(np.abs(G).max()),
        "length": curve.length,
    }
    return curve


def trace_all_preimages(p: SphereMap, q, step: float = DEFAULT_STEP, grid_density: int = 20_000,
                        **trace_kw) -> list:
    """Every detected component of p^{-1}(q), each traced once."""
    seeds = find_preimage_seeds(p, q, grid_density=grid_density, step=step)
    curves = []
    alive = np.ones(len(seeds), dtype=bool)
    for i in range(len(seeds)):
        if not alive[i]:
            continue
        curve = trace_preimage(p, q, seeds[i], step=step, **trace_kw)
        if any(_hausdorff(curve.points, c.points) < 5 * step for c in curves):
            alive[i] = False
            continue
        curves.append(curve)
        dist, _ = cKDTree(curve.points).query(seeds)
        alive &= dist > 3 * step
    return curves


def _hausdorff(a, b) -> float:
    da, _ = cKDTree(b).query(a)
    db, _ = cKDTree(a).query(b)
    return float(max(da.max(), db.max()))


# -- CSV export --------------------------------------------------------------

def write_curves_csv(curves, target) -> None:
    """Header ``x,y,u,v``, one row per point, a blank line between curves."""
    own = isinstance(target, (str, bytes)) or hasattr(target, "__fspath__")
    fh = open(target, "w", newline="") if own else target
    try:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["x", "y", "u", "v"])
        for k, curve in enumerate(curves):
            if k:
                fh.write("\n")
            for row in np.asarray(curve.points if isinstance(curve, SphereCurve) else curve):
                writer.writerow([repr(float(c)) for c in row])
    finally:
        if own:
            fh.close()


def read_curves_csv(source) -> list:
    text = source.read() if hasattr(source, "read") else open(source).read()
    lines = text.splitlines()
    if not lines or lines[0].strip() != "x,y,u,v":
        raise ValueError("curve CSV must start with the header x,y,u,v")
    curves, current = [], []
    for line in lines[1:]:
        if not line.strip():
            if current:
                curves.append(SphereCurve(np.array(current)))
                current = []
            continue
        current.append([float(c) for c in next(csv.reader(io.StringIO(line)))])
    if current:
        curves.append(SphereCurve(np.array(current)))
    return curves
