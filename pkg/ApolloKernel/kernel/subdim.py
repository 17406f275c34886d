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
Solver for sub-dimensional ball sets (det(V) = 0, rank(V) = d - 1), e.g. collinear centers
in 2-d or coplanar centers in 3-d, and the recipe dispatch built on top of it.

With the smallest ball moved last and u_i = x_i - x_{d+1}, w_i = r_i - r_{d+1}, a solution
is x = x_{d+1} + c +- h n_hat with c in the span of the u_i, shifted radius w and
h^2 = w^2 - |c|^2. Both solutions share one radius r = w - r_{d+1}.
"""

# Common Python modules
import logging
from dataclasses import dataclass, replace
from typing import Optional

# Numerical modules
import numpy as np
import scipy.linalg

# Apollo kernel
from kernel import smallmat
from kernel.apollonius import (ApolloniusSolution, RootLabel, SolveOutcome, SpecialCase, TangencyClass,
                               classify_roots, detect_twin, max_residual, solve_recipe1, solve_recipe2,
                               solve_recipe3, tangency_signs_agree)
from kernel.errors import (NotSubDimensionalError, RankTooLowError, SingularError, SubDimensionalError,
                           USingularError)
from kernel.geometry_types import BallSet, Tolerances, preprocess_translate


logger = logging.getLogger("apollo-kernel")

# w^2 - |c|^2 in [-GRAZING_REL * scale^2, 0] counts as a single grazing solution
GRAZING_REL = 1e-12

FULL_RANK_SOLVERS = {"1": solve_recipe1, "2": solve_recipe2, "3": solve_recipe3}

# Tangency classes that are diagram vertices of a translated set
VERTEX_CLASSES = (TangencyClass.POSITIVE, TangencyClass.ZERO_RADIUS)


@dataclass(frozen=True, eq=False)
class SubdimSolution:
    x_plus: np.ndarray
    x_minus: np.ndarray
    r: float
    c: np.ndarray
    w: float
    h: float
    n_hat: np.ndarray


def _orient(normal: np.ndarray, threshold: float) -> np.ndarray:
    """Flip the normal so that its first non-negligible component is positive."""
    for component in normal:
        if abs(component) > threshold:
            return normal if component > 0.0 else -normal
    return normal


def solve_subdimensional(ball_set: BallSet, tol: Optional[Tolerances] = None) -> SolveOutcome:
    """Two mirror solutions sharing one radius for a set whose centers span only d-1 dimensions.

    Args:
        ball_set (BallSet): Generators with rank(V) = d - 1.
        tol (Tolerances): Kernel tolerances.

    Raises:
        NotSubDimensionalError: V has full rank.
        RankTooLowError: rank(V) < d - 1.
        USingularError: All w_i vanish (equal radii) or U is singular.

    Returns:
        SolveOutcome: Recipe "4" outcome with the SubdimSolution attached, or the imaginary outcome.
    """
    tol = tol or Tolerances()
    d = ball_set.dimension
    scale = ball_set.scale
    centers, radii = ball_set.centers, ball_set.radii

    # Smallest ball becomes the base so that every w_i >= 0
    base = int(np.argmin(radii))
    others = [index for index in range(d + 1) if index != base]
    u = centers[others] - centers[base]
    w_i = radii[others] - radii[base]

    rank_u = smallmat.rank(u, tol)
    if rank_u == d:
        raise NotSubDimensionalError("Ball set has full rank, use a full-rank recipe.")
    if rank_u < d - 1:
        raise RankTooLowError(f"rank(V) = {rank_u} < {d - 1} is not supported.")
    if np.all(w_i == 0.0):
        raise USingularError("All shifted radii vanish, the sub-dimensional system has no solution.")

    # Greedy pivoted choice of d-1 basis vectors among the u_i
    _, _, pivots = scipy.linalg.qr(u.T, pivoting=True, check_finite=False)
    basis = u[pivots[:d - 1]]
    normal = smallmat.cofactor_normal_subspace(basis)
    n_hat = _orient(normal / np.linalg.norm(normal), tol.singular_rel)

    U = np.column_stack([u @ basis.T, w_i])
    t = 0.5 * (np.einsum("ij,ij->i", u, u) - w_i ** 2)
    try:
        g = smallmat.solve_linear(U, t, tol)
    except SingularError:
        raise USingularError("Matrix U is singular.")

    c = basis.T @ g[:-1]
    w = float(g[-1])
    h2 = w * w - float(c @ c)
    r = w - float(radii[base])

    if h2 < -GRAZING_REL * scale ** 2:
        logger.debug(f"Recipe 4: imaginary roots, h^2 = {h2!r}.")
        return SolveOutcome((), h2, SpecialCase.IMAGINARY, "4")
    if not tangency_signs_agree(radii, r, tol.residual_rel * (scale + abs(r))):
        logger.debug(f"Recipe 4: shared radius r={r!r} touches the generators with mixed signs.")
        return SolveOutcome((), h2, SpecialCase.IMAGINARY, "4")

    h = float(np.sqrt(h2)) if h2 > 0.0 else 0.0
    x_plus = centers[base] + c + h * n_hat
    x_minus = centers[base] + c - h * n_hat
    subdim = SubdimSolution(x_plus, x_minus, r, c, w, h, n_hat)

    if h == 0.0:
        points = ((x_plus, RootLabel.SINGLE),)
    else:
        points = ((x_plus, RootLabel.PLUS), (x_minus, RootLabel.MINUS))
    for x, _ in points:
        residual = max_residual(ball_set, x, r, radii)
        if residual > tol.residual_rel * (scale + abs(r)):
            logger.warning(f"Recipe 4: solution r={r!r} has tangency residual {residual!r}.")

    solutions = tuple(ApolloniusSolution(tuple(float(value) for value in x), r, label) for x, label in points)
    logger.debug(f"Recipe 4: w={w!r}, |c|={float(np.linalg.norm(c))!r}, h={h!r}.")
    return SolveOutcome(solutions, h2, SpecialCase.GENERIC, "4", subdim=subdim)


def dispatch_solve(ball_set: BallSet, tol: Optional[Tolerances] = None, recipe: str = "1") -> SolveOutcome:
    """Use the given full-rank recipe, or the sub-dimensional solver when det(V) vanishes.

    Raises:
        RankTooLowError: rank(V) < d - 1.
    """
    tol = tol or Tolerances()
    try:
        return FULL_RANK_SOLVERS[recipe](ball_set, tol)
    except SubDimensionalError as e:
        if e.rank < ball_set.dimension - 1:
            raise RankTooLowError(f"rank(V) = {e.rank} < {ball_set.dimension - 1} is not supported.")
        logger.debug("Singular V, switching to the sub-dimensional solver.")
        return solve_subdimensional(ball_set, tol)


def solve_preprocessed(ball_set: BallSet, tol: Optional[Tolerances] = None,
                       recipe: str = "1") -> SolveOutcome:
    """Solve after translating the smallest ball to a point at the origin.

    Only the positive solutions of the translated set are diagram vertices; a zero radius
    counts as positive. Solutions are mapped back to the original frame; classes and
    relevance refer to the translated set.
    """
    tol = tol or Tolerances()
    preprocessed = preprocess_translate(ball_set)
    outcome = classify_roots(dispatch_solve(preprocessed.ball_set, tol, recipe), preprocessed.ball_set, tol)
    outcome = detect_twin(replace(outcome, solutions=tuple(
        replace(solution, diagram_relevant=solution.klass in VERTEX_CLASSES) for solution in outcome.solutions)))

    solutions = []
    for solution in outcome.solutions:
        x, r = preprocessed.restore(solution.x, solution.r)
        solutions.append(replace(solution, x=x, r=r))
    return replace(outcome, solutions=tuple(solutions))
