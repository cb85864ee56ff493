"""Battery of algebraic identity checks run by ``hopflambda check``."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dsl import format_map, parse_map, parse_real
from .mapcore import MapR4R2, gram_norm_defect, mirror, plucker_relation_defect
from .poly import Poly4

IDENTITY_TOL = 1e-9

FIXED_BATTERY = (
    "F = z*w",
    "F = z*conj(w)",
    "F = z^2 - w^3",
    "F = z^3 - w^4",
    "F = z^2 + w^2",
    "f = x; g = y",
)


def random_map(rng: np.random.Generator, degree: int = 3, density: float = 0.5,
               coeff_range: int = 3) -> MapR4R2:
    """Random pair of integer-coefficient polynomials of degree <= ``degree``, F(0) = 0."""
    monos = [e for e in np.ndindex(*(degree + 1,) * 4) if 1 <= sum(e) <= degree]

    def one():
        while True:
            terms = {}
            for e in monos:
                if rng.random() < density:
                    c = int(rng.integers(-coeff_range, coeff_range + 1))
                    if c:
                        terms[tuple(int(k) for k in e)] = c
            if terms:
                return Poly4(terms)

    return MapR4R2(one(), one(), source_text="random")


def random_ball_points(rng: np.random.Generator, n: int) -> np.ndarray:
    v = rng.standard_normal((n, 4))
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    return v * rng.random((n, 1)) ** 0.25


@dataclass
class IdentityRow:
    name: str
    norm_defect: float
    plucker_defect: float
    roundtrip: bool

    @property
    def passed(self) -> bool:
        return (self.norm_defect < IDENTITY_TOL and self.plucker_defect < IDENTITY_TOL
                and self.roundtrip)


def check_map(name: str, F: MapR4R2, points) -> IdentityRow:
    again = parse_real(format_map(F))
    return IdentityRow(
        name=name,
        norm_defect=gram_norm_defect(F, points),
        plucker_defect=plucker_relation_defect(F, points, relative=True),
        roundtrip=(again == F),
    )


def run_identity_suite(n_random: int = 20, seed: int = 0, n_points: int = 1000) -> list:
    rng = np.random.default_rng(seed)
    rows = []
    for src in FIXED_BATTERY:
        F = parse_map(src)
        pts = random_ball_points(rng, n_points)
        rows.append(check_map(src, F, pts))
        rows.append(check_map(f"mirror({src})", mirror(F), pts))
    for k in range(n_random):
        F = random_map(rng)
        rows.append(check_map(f"random[{k}]", F, random_ball_points(rng, n_points)))
    return rows
