#! /usr/bin/env python3
# -*- coding: utf-8 -*-

#
# Apollo -- tangent-ball geometry kernel
# Copyright (C) 2026  Apollo kernel authors
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU Affero General Public License as published
# by the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU Affero General Public License for more details.
#
# You should have received a copy of the GNU Affero General Public License
# along with this program.  If not, see <https://www.gnu.org/licenses/>.
#


"""
Full-rank solvers of the tangent-ball (Apollonius vertex) problem for d+1 balls in R^d.

Three recipes are available:
    * recipe 1 -- power vertex p and power gradient ptilde from one linear solve,
    * recipe 2 -- two power vertices (original and unit-incremented radii),
    * recipe 3 -- lifted difference vectors in R^{d+1} and their cofactor normal.

Every recipe reduces the problem to solutions on a line, x = p + sigma * u with radius
r = sigma * rho, where sigma solves one scalar quadratic. The module also classifies roots
(positive, small negative, large negative), detects twin vertices and solves the signed
variant |x_i - x| = |s_i r_i + r| for one or all sign sets.
"""

# Common Python modules
import itertools
import logging
from dataclasses import dataclass, replace
from enum import Enum
from typing import Any, List, Optional, Tuple

# Numerical modules
import numpy as np

# Apollo kernel
from kernel import smallmat
from kernel.errors import (DegenerateNormalError, DegenerateQuadraticError,
                           RequiresNonNegativeRadiiError, SignSetTooLargeError)
from kernel.geometry_types import BallSet, SignSet, Tolerances, increment_radii
from kernel.power import power_vertex, power_vertex_columns


logger = logging.getLogger("apollo-kernel")

# |ptilde|^2 = 1 detection, relative to 1 + |ptilde|^2
UNIT_GRADIENT_REL = 1e-12

# Recipe 2 treats p' = p within this fraction of the input scale
COINCIDENT_VERTEX_REL = 1e-12

# Sign sets are enumerated up to this dimension (2^11 gradient columns)
MAX_SIGN_SET_DIMENSION = 10


class RootLabel(str, Enum):
    PLUS = "plus"
    MINUS = "minus"
    SINGLE = "single"


class TangencyClass(str, Enum):
    POSITIVE = "positive"
    SMALL_NEGATIVE = "small_negative"
    LARGE_NEGATIVE = "large_negative"
    ZERO_RADIUS = "zero_radius"


class SpecialCase(str, Enum):
    GENERIC = "generic"
    RP_ZERO = "rp_zero"
    PTILDE_UNIT = "ptilde_unit"
    PTILDE_ZERO = "ptilde_zero"
    IMAGINARY = "imaginary"


# Pair-level patterns of two classified roots (ordered by descending radius)
PAIR_PATTERNS = {
    (TangencyClass.POSITIVE, TangencyClass.POSITIVE): "two_positive",
    (TangencyClass.POSITIVE, TangencyClass.LARGE_NEGATIVE): "positive_large_negative",
    (TangencyClass.POSITIVE, TangencyClass.SMALL_NEGATIVE): "positive_small_negative",
    (TangencyClass.LARGE_NEGATIVE, TangencyClass.LARGE_NEGATIVE): "two_large_negative",
    (TangencyClass.SMALL_NEGATIVE, TangencyClass.LARGE_NEGATIVE): "small_large_negative",
    (TangencyClass.SMALL_NEGATIVE, TangencyClass.SMALL_NEGATIVE): "two_small_negative",
}


@dataclass(frozen=True)
class ApolloniusSolution:
    """Solution ball (x, r) tangent to every generator; r < 0 marks internal tangency."""
    x: Tuple[float, ...]
    r: float
    root: RootLabel
    klass: Optional[TangencyClass] = None
    diagram_relevant: Optional[bool] = None
    twin_id: Optional[int] = None


@dataclass(frozen=True)
class SolveOutcome:
    """Zero, one or two solutions of one quadratic together with its diagnostics."""
    solutions: Tuple[ApolloniusSolution, ...]
    discriminant: float
    special_case: SpecialCase
    recipe: str = "1"
    signs: Optional[SignSet] = None
    pattern: Optional[str] = None
    subdim: Optional[Any] = None

    @property
    def is_imaginary(self) -> bool:
        return self.special_case == SpecialCase.IMAGINARY

    @property
    def subdimensional(self) -> bool:
        return self.subdim is not None


def max_residual(ball_set: BallSet, x: np.ndarray, r: float, radii: np.ndarray) -> float:
    distances = np.linalg.norm(ball_set.centers - x, axis=1)
    return float(np.max(np.abs(distances - np.abs(radii + r))))


def tangency_signs_agree(radii: np.ndarray, r: float, zero: float) -> bool:
    """True when r_i + r does not change sign over the generators.

    A root of the squared tangency equations whose r_i + r changes sign touches some
    generators from outside and others from inside, so it solves none of the unsigned
    problems. Values within zero of 0 are compatible with either sign.
    """
    shifted = np.asarray(radii, dtype=float) + r
    return not (np.any(shifted > zero) and np.any(shifted < -zero))


def _solve_on_line(ball_set: BallSet, p: np.ndarray, rp2: float, direction: np.ndarray, radial: float,
                   radii: np.ndarray, tol: Tolerances, recipe: str, signs: Optional[SignSet] = None) -> SolveOutcome:
    """Solve |x_i - x|^2 = (r_i + r)^2 on the line x = p + sigma * direction, r = sigma * radial.

    Substituting into the tangency condition of the reference ball i gives
    (|u|^2 - rho^2) sigma^2 - 2 (v_i . u + r_i rho) sigma + rp2 = 0 with v_i = x_i - p.

    Without signs, roots with mixed signs of r_i + r are dropped and an outcome left
    without roots is imaginary. Labels keep the position of the root in the quadratic.
    """
    scale = ball_set.scale
    reference = int(np.argmax(np.abs(radii)))
    v = ball_set.centers[reference] - p
    direction = np.asarray(direction, dtype=float)

    if np.linalg.norm(direction) <= tol.singular_rel * abs(radial):
        # All solutions sit at the power vertex
        special_case = SpecialCase.PTILDE_ZERO
        direction = np.zeros_like(direction)
        roots = smallmat.stable_quadratic(-radial ** 2, -2.0 * radii[reference] * radial, rp2)
    else:
        a = float(direction @ direction - radial ** 2)
        half_b = float(v @ direction + radii[reference] * radial)
        if abs(a) <= UNIT_GRADIENT_REL * float(direction @ direction + radial ** 2):
            special_case = SpecialCase.PTILDE_UNIT
            roots = smallmat.stable_quadratic(0.0, -2.0 * half_b, rp2)
        else:
            special_case = SpecialCase.RP_ZERO if abs(rp2) <= tol.singular_rel * scale ** 2 else SpecialCase.GENERIC
            roots = smallmat.stable_quadratic(a, -2.0 * half_b, rp2)

    if roots.kind == smallmat.RootKind.DEGENERATE:
        raise DegenerateQuadraticError("Every radius solves the tangency quadratic.")
    if roots.kind == smallmat.RootKind.COMPLEX_PAIR:
        logger.debug(f"Recipe {recipe}: imaginary roots, discriminant {roots.discriminant!r}.")
        return SolveOutcome((), roots.discriminant, SpecialCase.IMAGINARY, recipe, signs)

    labels = (RootLabel.PLUS, RootLabel.MINUS) if len(roots.roots) == 2 else (RootLabel.SINGLE,)
    solutions = []
    for sigma, label in zip(roots.roots, labels):
        x = p + sigma * direction
        r = float(sigma * radial)
        if signs is None and not tangency_signs_agree(radii, r, tol.residual_rel * (scale + abs(r))):
            logger.debug(f"Recipe {recipe}: root r={r!r} touches the generators with mixed signs, dropped.")
            continue
        residual = max_residual(ball_set, x, r, radii)
        if residual > tol.residual_rel * (scale + abs(r)):
            logger.warning(f"Recipe {recipe}: solution r={r!r} has tangency residual {residual!r}.")
        solutions.append(ApolloniusSolution(tuple(float(value) for value in x), r, label))

    if not solutions:
        logger.debug(f"Recipe {recipe}: no sign-consistent root, discriminant {roots.discriminant!r}.")
        return SolveOutcome((), roots.discriminant, SpecialCase.IMAGINARY, recipe, signs)

    logger.debug(f"Recipe {recipe}: {special_case.value}, discriminant {roots.discriminant!r}.")
    return SolveOutcome(tuple(solutions), roots.discriminant, special_case, recipe, signs)


def solve_recipe1(ball_set: BallSet, tol: Optional[Tolerances] = None) -> SolveOutcome:
    """Solutions x = p + r * ptilde from a single linear solve for p and ptilde.

    Raises:
        SubDimensionalError: rank(V) < d.
    """
    tol = tol or Tolerances()
    power_solution = power_vertex(ball_set, tol)
    return _solve_on_line(ball_set, power_solution.p, power_solution.rp2, power_solution.ptilde, 1.0,
                          ball_set.radii, tol, "1")


def solve_recipe2(ball_set: BallSet, tol: Optional[Tolerances] = None) -> SolveOutcome:
    """Solutions from the power vertices of the set and of its unit-incremented copy.

    The gradient is rebuilt as h * a_hat where a_hat = (p' - p) / |p' - p| and
    h = -r_ik / (v_ik . a_hat) for the pair with the largest radius difference.
    """
    tol = tol or Tolerances()
    power_solution = power_vertex(ball_set, tol)
    incremented = power_vertex(increment_radii(ball_set, 1), tol)

    shift = incremented.p - power_solution.p
    length = float(np.linalg.norm(shift))
    direction = np.zeros(ball_set.dimension)
    if length > COINCIDENT_VERTEX_REL * ball_set.scale:
        a_hat = shift / length
        centers, radii = ball_set.centers, ball_set.radii

        # Pick the pair (i, k) maximizing |r_ik|, ties broken by |v_ik . a_hat|
        best_key, best_pair = None, None
        for i, k in itertools.combinations(range(len(radii)), 2):
            r_ik = radii[i] - radii[k]
            if r_ik == 0.0:
                continue
            projection = float((centers[i] - centers[k]) @ a_hat)
            key = (abs(r_ik), abs(projection))
            if best_key is None or key > best_key:
                best_key, best_pair = key, (r_ik, projection)

        if best_pair is not None and best_pair[1] != 0.0:
            h = -best_pair[0] / best_pair[1]
            direction = h * a_hat

    return _solve_on_line(ball_set, power_solution.p, power_solution.rp2, direction, 1.0, ball_set.radii, tol, "2")


def solve_recipe3(ball_set: BallSet, tol: Optional[Tolerances] = None) -> SolveOutcome:
    """Solutions along the unit normal of the lifted difference vectors alpha_i - alpha_{d+1}.

    The normal is oriented so that its radius component is non-negative, hence the sign of
    every solution radius equals the sign of its sigma root.

    Raises:
        SubDimensionalError: rank(V) < d.
        DegenerateNormalError: The lifted difference vectors are dependent.
    """
    tol = tol or Tolerances()
    power_solution = power_vertex(ball_set, tol)

    # Lift alpha_i = (x_i - p, r_i) and take the cofactor normal of the differences
    lifted = np.column_stack([ball_set.centers - power_solution.p, ball_set.radii])
    rows = lifted[:-1] - lifted[-1]
    # rows contain V, so they are independent once the power vertex exists
    normal = smallmat.cofactor_normal(rows)
    norm = float(np.linalg.norm(normal))
    if norm == 0.0:
        raise DegenerateNormalError("Lifted difference vectors are linearly dependent.")

    alpha_hat = normal / norm
    if alpha_hat[-1] < 0.0:
        alpha_hat = -alpha_hat
    if alpha_hat[-1] == 0.0:
        raise DegenerateNormalError("Lifted normal has no radius component.")

    return _solve_on_line(ball_set, power_solution.p, power_solution.rp2, alpha_hat[:-1], float(alpha_hat[-1]),
                          ball_set.radii, tol, "3")


def classify_roots(outcome: SolveOutcome, ball_set: BallSet, tol: Optional[Tolerances] = None) -> SolveOutcome:
    """Assign tangency classes and diagram relevance to every solution.

    A negative solution is "large" (encloses all generators, never a diagram vertex) when
    |r| exceeds the largest generator radius, otherwise "small".

    Raises:
        RequiresNonNegativeRadiiError: Some generator radius is negative (normalize first).
    """
    tol = tol or Tolerances()
    radii = ball_set.radii
    if np.any(radii < 0.0):
        raise RequiresNonNegativeRadiiError("Classification needs non-negative generator radii, normalize them first.")
    r_max = float(np.max(radii))
    zero_radius = tol.residual_rel * ball_set.scale

    solutions = []
    for solution in outcome.solutions:
        if abs(solution.r) <= zero_radius:
            klass = TangencyClass.ZERO_RADIUS
        elif solution.r > 0.0:
            klass = TangencyClass.POSITIVE
        elif -solution.r > r_max:
            klass = TangencyClass.LARGE_NEGATIVE
        else:
            klass = TangencyClass.SMALL_NEGATIVE
        solutions.append(replace(solution, klass=klass, diagram_relevant=klass != TangencyClass.LARGE_NEGATIVE))

    pattern = None
    if len(solutions) == 2:
        key = (solutions[0].klass, solutions[1].klass)
        pattern = PAIR_PATTERNS.get(key, f"{key[0].value}_{key[1].value}")
    elif len(solutions) == 1:
        pattern = solutions[0].klass.value
    return replace(outcome, solutions=tuple(solutions), pattern=pattern)


def detect_twin(outcome: SolveOutcome, twin_id: int = 1) -> SolveOutcome:
    """Mark two diagram-relevant roots of the same quadratic as twins."""
    solutions = outcome.solutions
    is_twin = len(solutions) == 2 and all(solution.diagram_relevant for solution in solutions)
    return replace(outcome, solutions=tuple(replace(solution, twin_id=twin_id if is_twin else None)
                                            for solution in solutions))


def solve_signed(ball_set: BallSet, signs: SignSet, tol: Optional[Tolerances] = None) -> SolveOutcome:
    """Solve |x_i - x| = |s_i r_i + r|; p and rp2 do not depend on the signs."""
    tol = tol or Tolerances()
    signs.check_length(ball_set.dimension)
    effective = signs.as_array() * ball_set.radii
    power_solution, gradients = power_vertex_columns(ball_set, effective, tol)
    return _solve_on_line(ball_set, power_solution.p, power_solution.rp2, gradients[:, 0], 1.0, effective, tol,
                          "signed", signs)


def solve_all_sign_sets(ball_set: BallSet, tol: Optional[Tolerances] = None) -> List[Tuple[SignSet, SolveOutcome]]:
    """Solve every sign set with a single factorization of V.

    Solutions are deduplicated across sign sets by (x, |r|), which merges each sign set with
    its mirror. Only sign sets contributing a new solution are returned.

    Raises:
        SignSetTooLargeError: Dimension above the enumeration cap.
    """
    tol = tol or Tolerances()
    d = ball_set.dimension
    if d > MAX_SIGN_SET_DIMENSION:
        raise SignSetTooLargeError(f"Sign-set enumeration supports d <= {MAX_SIGN_SET_DIMENSION}, got {d}.")

    sign_sets = [SignSet(signs) for signs in itertools.product((1, -1), repeat=d + 1)]
    columns = np.column_stack([signs.as_array() * ball_set.radii for signs in sign_sets])
    power_solution, gradients = power_vertex_columns(ball_set, columns, tol)

    threshold = tol.dedupe_rel * ball_set.scale
    kept_centers, kept_radii = [], []
    results = []
    for index, signs in enumerate(sign_sets):
        outcome = _solve_on_line(ball_set, power_solution.p, power_solution.rp2, gradients[:, index], 1.0,
                                 columns[:, index], tol, "signed", signs)
        fresh = []
        for solution in outcome.solutions:
            if kept_centers:
                same_center = np.max(np.abs(np.array(kept_centers) - solution.x), axis=1) <= threshold
                same_radius = np.abs(np.array(kept_radii) - abs(solution.r)) <= threshold
                if np.any(same_center & same_radius):
                    continue
            kept_centers.append(solution.x)
            kept_radii.append(abs(solution.r))
            fresh.append(solution)
        if fresh:
            results.append((signs, replace(outcome, solutions=tuple(fresh))))

    logger.debug(f"Sign-set enumeration found {len(kept_radii)} distinct solutions.")
    return results
