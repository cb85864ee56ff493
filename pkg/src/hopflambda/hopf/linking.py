"""Hopf invariant as the linking number of two preimage sets."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from ..errors import CurvesTooClose, MaxStepsExceeded, PoorConditioning, RankDrop
from ..sampling import random_unit_vectors, sphere_points
from . import kernels
from .estimate import HopfEstimate
from .sphere import SphereMap, Stereographic
from .tracing import DEFAULT_STEP, SphereCurve, trace_all_preimages

POOR_RESIDUAL = 0.3
MIN_VALUE_ANGLE = np.pi / 3


@dataclass(frozen=True)
class LinkingResult:
    value: int
    raw: float
    residual: float
    pole: tuple


def _points(c):
    return c.points if isinstance(c, SphereCurve) else np.asarray(c, dtype=float)


def _max_step(c):
    pts = _points(c)
    return float(np.linalg.norm(np.roll(pts, -1, axis=0) - pts, axis=1).max())


def choose_pole(*curves, n_candidates: int = 1024) -> np.ndarray:
    """Point of S^3 whose distance to every curve point is largest."""
    pts = np.vstack([_points(c) for c in curves])
    cand = np.vstack([sphere_points(n_candidates, seed=1), np.eye(4), -np.eye(4)])
    dist, _ = cKDTree(pts).query(cand)
    return cand[int(np.argmax(dist))]


def linking_number(c1, c2, separation_factor: float = 10.0) -> LinkingResult:
    """Linking number of two disjoint closed polylines on S^3.

    Both curves are projected to R^3 from a far-away pole (orientation
    preserving) and the Gauss double integral is summed over segment pairs
    with the midpoint rule.
    """
    p1, p2 = _points(c1), _points(c2)
    gap, _ = cKDTree(p2).query(p1)
    h = max(_max_step(c1), _max_step(c2))
    if gap.min() <= separation_factor * h:
        raise CurvesTooClose(f"curves are {gap.min():.3g} apart; need > {separation_factor * h:.3g}")
    pole = choose_pole(p1, p2)
    chart = Stereographic(pole)
    raw = float(kernels.gauss_linking_sum(chart.forward(p1), chart.forward(p2)))
    value = int(round(raw))
    residual = abs(raw - value)
    if residual > POOR_RESIDUAL:
        raise PoorConditioning(f"linking integral {raw:.4f} is not near an integer")
    return LinkingResult(value, raw, residual, tuple(pole))


def random_value_pair(rng: np.random.Generator, min_angle: float = MIN_VALUE_ANGLE):
    while True:
        q1, q2 = random_unit_vectors(rng, 2, 3)
        if np.arccos(np.clip(q1 @ q2, -1, 1)) > min_angle:
            return q1, q2


def hopf_via_linking(p: SphereMap, step: float = DEFAULT_STEP, seed: int = 0,
                     grid_density: int = 20_000, retries: int = 8, threads: int = 1,
                     values=None, curves_out: list | None = None) -> HopfEstimate:
    """Sum of lk(a, b) over components a of p^{-1}(q1) and b of p^{-1}(q2).

    Regular values are drawn from a generator seeded by ``seed`` unless
    ``values`` = (q1, q2) is given.  A failed attempt (rank drop, curves too
    close, poorly conditioned integral) is retried with fresh values.  When
    ``curves_out`` is a list, the two traced preimage sets are appended to it.
    """
    rng = np.random.default_rng(np.random.SeedSequence([seed, 0x11CC]))
    failures = []
    for attempt in range(retries):
        if values is not None and attempt == 0:
            q1, q2 = (np.asarray(v, dtype=float) / np.linalg.norm(v) for v in values)
        else:
            q1, q2 = random_value_pair(rng)
        try:
            if threads > 1:
                with ThreadPoolExecutor(max_workers=2) as pool:
                    f1 = pool.submit(trace_all_preimages, p, q1, step, grid_density)
                    f2 = pool.submit(trace_all_preimages, p, q2, step, grid_density)
                    curves1, curves2 = f1.result(), f2.result()
            else:
                curves1 = trace_all_preimages(p, q1, step, grid_density)
                curves2 = trace_all_preimages(p, q2, step, grid_density)
            pairs = [linking_number(a, b) for a in curves1 for b in curves2]
        except (RankDrop, CurvesTooClose, PoorConditioning, MaxStepsExceeded) as exc:
            failures.append(f"{type(exc).__name__}: {exc}")
            continue
        if curves_out is not None:
            curves_out.extend([curves1, curves2])
        raw = p.orientation * sum(r.raw for r in pairs)
        value = int(round(raw))
        return HopfEstimate(
            value=value,
            raw=float(raw),
            residual=abs(raw - value),
            method="linking",
            diagnostics={
                "regular_values": [q1.tolist(), q2.tolist()],
                "curve_counts": [len(curves1), len(curves2)],
                "curve_points": [[len(c) for c in curves1], [len(c) for c in curves2]],
                "pair_residuals": [r.residual for r in pairs],
                "max_pair_residual": max((r.residual for r in pairs), default=0.0),
                "orientation": p.orientation,
                "attempts": attempt + 1,
                "failures": failures,
                "seed": seed,
                "step": step,
            },
        )
    raise RankDrop(f"no usable regular values after {retries} attempts: {failures[-1:]}")
