#! /usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Independent verification helpers: tangency residuals, a brute-force multi-start Newton solver
for the tangency system and seeded random ball sets.

Nothing in the kernel's own solving paths calls this module; tests and the benchmark do.
"""

# Common Python modules
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Tuple, Union

# Numerical modules
import numpy as np

# Apollo kernel
from kernel.apollonius import ApolloniusSolution, tangency_signs_agree
from kernel.geometry_types import Ball, BallSet, SignSet, Tolerances, validate_ball_set


class Conditioning(str, Enum):
    WELL_SEPARATED = "well_separated"
    OVERLAPPING = "overlapping"
    NEAR_DEGENERATE = "near_degenerate"


@dataclass(frozen=True)
class ResidualReport:
    """Signed residuals |x_i - x| - |s_i r_i + r| per generator and their largest magnitude."""
    residuals: Tuple[float, ...]
    max_abs: float


def tangency_residual(ball_set: BallSet, solution: Union[ApolloniusSolution, Tuple[np.ndarray, float]],
                      signs: Optional[SignSet] = None) -> ResidualReport:
    if isinstance(solution, ApolloniusSolution):
        x, r = np.asarray(solution.x, dtype=float), float(solution.r)
    else:
        x, r = np.asarray(solution[0], dtype=float), float(solution[1])
    radii = ball_set.radii if signs is None else signs.as_array() * ball_set.radii
    residuals = np.linalg.norm(ball_set.centers - x, axis=1) - np.abs(radii + r)
    return ResidualReport(tuple(float(value) for value in residuals), float(np.max(np.abs(residuals))))


def brute_force_solutions(ball_set: BallSet, signs: Optional[SignSet] = None, starts: Optional[int] = None,
                          tol: Optional[Tolerances] = None) -> List[Tuple[np.ndarray, float]]:
    """Every distinct real solution reached by damped Newton from a grid of starts.

    Unknowns are (x, r) and the equations F_i = |x_i - x|^2 - (s_i r_i + r)^2. Without signs,
    points where r_i + r changes sign over the generators are discarded. A start grid
    over the (expanded) bounding box of the centers is crossed with radius seeds in
    [-span, span]; a step is halved while it does not decrease |F|.

    Args:
        ball_set (BallSet): Generators.
        signs (SignSet): Tangency signs, all +1 when omitted.
        starts (int): Approximate number of starts (default 5^(d+1)).
        tol (Tolerances): dedupe_rel is used to merge converged points.

    Returns:
        list: (x, r) pairs sorted by descending radius, then lexicographically by center.
    """
    tol = tol or Tolerances()
    d = ball_set.dimension
    centers = ball_set.centers
    radii = ball_set.radii if signs is None else signs.as_array() * ball_set.radii
    scale = ball_set.scale

    # Start grid
    per_axis = 5 if starts is None else max(2, int(round(starts ** (1.0 / (d + 1)))))
    low, high = centers.min(axis=0), centers.max(axis=0)
    span = float(np.max(high - low) + 2.0 * np.max(np.abs(radii)))
    axes = [np.linspace(low[k] - 0.5 * span, high[k] + 0.5 * span, per_axis) for k in range(d)]
    axes.append(np.linspace(-span, span, per_axis))
    z = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, d + 1)

    def residual(points: np.ndarray) -> np.ndarray:
        offsets = centers[None, :, :] - points[:, None, :d]
        return np.einsum("sij,sij->si", offsets, offsets) - (radii[None, :] + points[:, None, d]) ** 2

    def jacobian(points: np.ndarray) -> np.ndarray:
        J = np.empty((len(points), d + 1, d + 1))
        J[:, :, :d] = 2.0 * (points[:, None, :d] - centers[None, :, :])
        J[:, :, d] = -2.0 * (radii[None, :] + points[:, None, d])
        return J

    threshold = 1e-12 * scale ** 2
    active = np.ones(len(z), dtype=bool)
    for _ in range(50):
        F = residual(z)
        norms = np.max(np.abs(F), axis=1)
        active &= norms > threshold
        if not np.any(active):
            break
        index = np.flatnonzero(active)
        step = -np.einsum("sij,sj->si", np.linalg.pinv(jacobian(z[index])), F[index])

        # Damping: halve the step while the residual does not decrease
        factor = np.ones(len(index))
        improved = np.zeros(len(index), dtype=bool)
        for _ in range(30):
            trial = z[index] + factor[:, None] * step
            trial_norms = np.max(np.abs(residual(trial)), axis=1)
            better = trial_norms < norms[index]
            improved |= better
            pending = ~improved
            if not np.any(pending):
                break
            factor[pending] *= 0.5
        z[index[improved]] = (z[index] + factor[:, None] * step)[improved]
        active[index[~improved]] = False

    converged = np.max(np.abs(residual(z)), axis=1) <= threshold
    found = []
    merge = tol.dedupe_rel * scale
    for point in z[converged]:
        if not any(np.max(np.abs(point - other)) <= merge for other in found):
            found.append(point)

    if signs is None:
        found = [point for point in found
                 if tangency_signs_agree(radii, point[d], tol.residual_rel * (scale + abs(point[d])))]

    found.sort(key=lambda point: (-point[d],) + tuple(point[:d]))
    return [(point[:d].copy(), float(point[d])) for point in found]


def random_ball_set(d: int, seed: int, conditioning: Conditioning = Conditioning.WELL_SEPARATED) -> BallSet:
    """Reproducible random set of d+1 balls.

    well_separated draws pairwise disjoint balls, overlapping allows intersections and hidden
    balls, near_degenerate puts the centers within 1e-8 of a random hyperplane.
    """
    rng = np.random.default_rng(seed)
    conditioning = Conditioning(conditioning)

    if conditioning == Conditioning.WELL_SEPARATED:
        while True:
            centers = rng.uniform(-10.0, 10.0, size=(d + 1, d))
            radii = rng.uniform(0.1, 1.0, size=d + 1)
            gaps = [np.linalg.norm(centers[i] - centers[j]) - radii[i] - radii[j]
                    for i in range(d + 1) for j in range(i + 1, d + 1)]
            if min(gaps) > 0.0:
                break
    elif conditioning == Conditioning.OVERLAPPING:
        centers = rng.uniform(-2.0, 2.0, size=(d + 1, d))
        radii = rng.uniform(0.5, 2.5, size=d + 1)
    else:
        basis, _ = np.linalg.qr(rng.normal(size=(d, d)))
        in_plane = rng.uniform(-10.0, 10.0, size=(d + 1, d - 1))
        centers = in_plane @ basis[:, :d - 1].T + rng.uniform(-10.0, 10.0, size=d)
        centers += rng.uniform(-1e-9, 1e-9, size=(d + 1, 1)) * basis[:, d - 1]
        radii = rng.uniform(0.1, 1.0, size=d + 1)

    balls = [Ball(tuple(float(value) for value in center), float(radius)) for center, radius in zip(centers, radii)]
    return validate_ball_set(balls, d)
