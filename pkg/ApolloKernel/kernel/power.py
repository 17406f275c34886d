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
Power-diagram quantities of a ball set: power distance, power vertex and power radius,
power gradient, incremented vertices and the Voronoi reduction.

V has rows x_i - x_{d+1}; the vertex and every gradient column are obtained from one
factorization of V.
"""

# Common Python modules
import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

# Numerical modules
import numpy as np

# Apollo kernel
from kernel import smallmat
from kernel.errors import SingularError, SubDimensionalError
from kernel.geometry_types import Ball, BallSet, Tolerances


logger = logging.getLogger("apollo-kernel")


@dataclass(frozen=True, eq=False)
class PowerSolution:
    """Power vertex p, power radius squared rp2, power gradient ptilde and V diagnostics."""
    p: np.ndarray
    rp2: float
    ptilde: np.ndarray
    detV: float
    rankV: int
    V: np.ndarray


def _read_only(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


def power_distance(ball: Ball, point: Sequence[float]) -> float:
    """Squared tangent length |x_i - point|^2 - r_i^2; negative inside the ball."""
    offset = np.asarray(ball.center, dtype=float) - np.asarray(point, dtype=float)
    return float(offset @ offset - float(ball.radius) ** 2)


def power_vertex_columns(ball_set: BallSet, radius_columns: np.ndarray,
                         tol: Optional[Tolerances] = None) -> Tuple[PowerSolution, np.ndarray]:
    """Power vertex plus one power gradient for every column of effective radii.

    The first column of radius_columns provides the PowerSolution gradient. Only squared
    radii enter the vertex, so signed radii s_i r_i give the same p and rp2.

    Args:
        ball_set (BallSet): Generators.
        radius_columns (ndarray): Effective radii of shape (d+1, m), m >= 1.
        tol (Tolerances): Tolerances providing singular_rel.

    Raises:
        SubDimensionalError: rank(V) < d; carries rank(V) and det(V).

    Returns:
        tuple: PowerSolution and the gradients as a (d, m) array.
    """
    tol = tol or Tolerances()
    d = ball_set.dimension
    centers = ball_set.centers
    radii = ball_set.radii
    radius_columns = np.asarray(radius_columns, dtype=float).reshape(d + 1, -1)

    # Work in a frame translated to the last ball
    V = centers[:-1] - centers[-1]
    t = 0.5 * (np.einsum("ij,ij->i", V, V) - radii[:-1] ** 2 + radii[-1] ** 2)
    gradients_rhs = -(radius_columns[:-1] - radius_columns[-1])

    try:
        solution = smallmat.solve_linear(V, np.column_stack([t, gradients_rhs]), tol)
    except SingularError:
        detV = smallmat.determinant(V)
        rankV = smallmat.rank(V, tol)
        logger.debug(f"Power vertex is undefined, V has rank {rankV}.")
        raise SubDimensionalError(rankV, detV)

    p = centers[-1] + solution[:, 0]
    gradients = solution[:, 1:]

    # Power radius from the ball with the largest |r|
    reference = int(np.argmax(np.abs(radii)))
    offset = centers[reference] - p
    rp2 = float(offset @ offset - radii[reference] ** 2)

    power_solution = PowerSolution(
        p=_read_only(p),
        rp2=rp2,
        ptilde=_read_only(gradients[:, 0].copy()),
        detV=smallmat.determinant(V),
        rankV=d,
        V=_read_only(V),
    )
    return power_solution, gradients


def power_vertex(ball_set: BallSet, tol: Optional[Tolerances] = None) -> PowerSolution:
    """Point of equal power distance to all balls and its gradient under radius incrementation."""
    power_solution, _ = power_vertex_columns(ball_set, ball_set.radii, tol)
    return power_solution


def voronoi_vertex(ball_set: BallSet, tol: Optional[Tolerances] = None) -> Tuple[np.ndarray, float]:
    """Power vertex of the set with all radii zeroed (circumcenter and squared circumradius)."""
    power_solution = power_vertex(ball_set.with_radii([0.0] * len(ball_set.balls)), tol)
    return power_solution.p, power_solution.rp2


def incremented_power_vertex(ball_set: BallSet, r_eps: float, tol: Optional[Tolerances] = None,
                             power_solution: Optional[PowerSolution] = None) -> np.ndarray:
    """Power vertex of the set with every radius incremented by r_eps, p' = p + r_eps * ptilde."""
    power_solution = power_solution or power_vertex(ball_set, tol)
    return power_solution.p + r_eps * power_solution.ptilde
