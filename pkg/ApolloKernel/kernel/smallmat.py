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
Small dense linear algebra: linear solves with several right-hand sides, determinants,
numerical rank, cofactor normal vectors and a cancellation-free quadratic solver.

Dimensions 2 and 3 use closed forms; larger systems go through scipy's LU and QR.
"""

# Common Python modules
import math
import warnings
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

# Numerical modules
import numpy as np
import scipy.linalg

# Apollo kernel
from kernel.errors import DegenerateQuadraticError, DimensionMismatchError, SingularError
from kernel.geometry_types import Tolerances


# Dense real matrix (rows x cols)
Matrix = np.ndarray

# Leading coefficient below this fraction of the others makes the quadratic linear
LINEAR_THRESHOLD = 1e-14


class RootKind(str, Enum):
    TWO_REAL = "two_real"
    DOUBLE_REAL = "double_real"
    COMPLEX_PAIR = "complex_pair"
    LINEAR = "linear"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class QuadraticRoots:
    """Real roots of a quadratic sorted in descending order."""
    kind: RootKind
    roots: Tuple[float, ...]
    discriminant: float


def _matrix_scale(M: Matrix) -> float:
    return float(np.max(np.abs(M))) if M.size else 0.0


def determinant(M: Matrix) -> float:
    """Determinant with closed forms up to 3x3."""
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionMismatchError(f"Determinant needs a square matrix, got shape {M.shape}.")
    d = M.shape[0]
    if d == 1:
        return float(M[0, 0])
    if d == 2:
        return float(M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0])
    if d == 3:
        return float(np.dot(M[0], np.cross(M[1], M[2])))
    return float(np.linalg.det(M))


def solve_linear(M: Matrix, rhs: Matrix, tol: Optional[Tolerances] = None) -> Matrix:
    """Solve M X = rhs for one or several right-hand sides using a single factorization.

    Args:
        M (ndarray): Square d x d matrix.
        rhs (ndarray): Right-hand side of shape (d,) or (d, m).
        tol (Tolerances): Tolerances providing singular_rel.

    Raises:
        DimensionMismatchError: Shapes do not agree.
        SingularError: rank(M) < d, i.e. a pivoted QR pivot at or below singular_rel times the matrix scale.

    Returns:
        ndarray: Solution with the shape of rhs.
    """
    tol = tol or Tolerances()
    M = np.asarray(M, dtype=float)
    rhs = np.asarray(rhs, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionMismatchError(f"Linear solve needs a square matrix, got shape {M.shape}.")
    d = M.shape[0]
    if rhs.shape[0] != d:
        raise DimensionMismatchError(f"Right-hand side has {rhs.shape[0]} rows, expected {d}.")

    scale = _matrix_scale(M)
    if scale == 0.0:
        raise SingularError("Matrix is zero.")

    # One singularity criterion for every path, the one rank() uses
    if rank(M, tol) < d:
        raise SingularError("Matrix is singular (pivot below threshold).")

    if d <= 3:
        det = determinant(M)
        if det != 0.0:
            if d == 1:
                return rhs / M[0, 0]
            if d == 2:
                adjugate = np.array([[M[1, 1], -M[0, 1]], [-M[1, 0], M[0, 0]]])
            else:
                adjugate = np.array([np.cross(M[1], M[2]), np.cross(M[2], M[0]), np.cross(M[0], M[1])]).T
            return adjugate @ rhs / det

    # Badly scaled rows may underflow the closed-form determinant
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(M, check_finite=False)
    return scipy.linalg.lu_solve((lu, piv), rhs, check_finite=False)


def rank(M: Matrix, tol: Optional[Tolerances] = None) -> int:
    """Numerical rank from column-pivoted QR with threshold singular_rel times the matrix scale."""
    tol = tol or Tolerances()
    M = np.atleast_2d(np.asarray(M, dtype=float))
    scale = _matrix_scale(M)
    if scale == 0.0:
        return 0
    R, _ = scipy.linalg.qr(M, mode="r", pivoting=True, check_finite=False)
    return int(np.sum(np.abs(np.diag(R)) > tol.singular_rel * scale))


def _bottom_row_cofactors(rows: Matrix) -> np.ndarray:
    """Cofactors of the missing last row of the square matrix whose other rows are given."""
    n = rows.shape[1]
    kept = np.arange(n - 1)
    # Row j lists the columns of the minor that drops column j
    columns = kept[None, :] + (kept[None, :] >= np.arange(n)[:, None])
    minors = rows[:, columns].transpose(1, 0, 2)
    return (-1.0) ** (n - 1 + np.arange(n)) * np.linalg.det(minors)


def cofactor_normal(rows: Matrix) -> np.ndarray:
    """Vector of R^{d+1} orthogonal to d given rows; zero when the rows are dependent."""
    rows = np.atleast_2d(np.asarray(rows, dtype=float))
    d = rows.shape[0]
    if rows.shape[1] != d + 1:
        raise DimensionMismatchError(f"Expected {d} rows of {d + 1} components, got shape {rows.shape}.")
    if d == 2:
        return np.cross(rows[0], rows[1])
    return _bottom_row_cofactors(rows)


def cofactor_normal_subspace(rows: Matrix) -> np.ndarray:
    """Normal of the hyperplane of R^d spanned by d-1 rows; zero when the rows are dependent."""
    rows = np.atleast_2d(np.asarray(rows, dtype=float))
    d = rows.shape[1]
    if d < 2 or rows.shape[0] != d - 1:
        raise DimensionMismatchError(f"Expected {d - 1} rows of {d} components, got shape {rows.shape}.")
    if d == 2:
        # n = u12 e1 - u11 e2
        return np.array([rows[0, 1], -rows[0, 0]])
    if d == 3:
        return np.cross(rows[0], rows[1])
    return _bottom_row_cofactors(rows)


def stable_quadratic(a: float, b: float, c: float) -> QuadraticRoots:
    """Roots of a x^2 + b x + c = 0 without subtractive cancellation.

    Args:
        a (float): Quadratic coefficient.
        b (float): Linear coefficient.
        c (float): Constant coefficient.

    Raises:
        DegenerateQuadraticError: The equation reduces to c = 0 with c != 0.

    Returns:
        QuadraticRoots: Roots in descending order and the discriminant b^2 - 4ac.
    """
    a, b, c = float(a), float(b), float(c)
    discriminant = b * b - 4.0 * a * c

    if abs(a) <= LINEAR_THRESHOLD * max(abs(b), abs(c), 1.0):
        if b == 0.0:
            if c == 0.0:
                return QuadraticRoots(RootKind.DEGENERATE, (), discriminant)
            raise DegenerateQuadraticError(f"Equation {c!r} = 0 has no solution.")
        return QuadraticRoots(RootKind.LINEAR, (-c / b,), discriminant)

    if discriminant < 0.0:
        return QuadraticRoots(RootKind.COMPLEX_PAIR, (), discriminant)
    if discriminant == 0.0:
        return QuadraticRoots(RootKind.DOUBLE_REAL, (-b / (2.0 * a),), discriminant)

    # sign(0) is taken as +1
    q = -0.5 * (b + math.copysign(math.sqrt(discriminant), b if b != 0.0 else 1.0))
    first, second = q / a, c / q
    if first == second:
        return QuadraticRoots(RootKind.DOUBLE_REAL, (first,), discriminant)
    return QuadraticRoots(RootKind.TWO_REAL, tuple(sorted((first, second), reverse=True)), discriminant)
