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
Exact-sign predicates over integer input.

The power vertex and the power gradient are rational (Cramer's rule), so a solution radius
is alpha + beta * sqrt(D) with rational alpha, beta, D. Substituting it into the conflict
value |x_q - x|^2 - (r_q + r)^2 gives a + b * sqrt(c) with rational a, b, c, whose sign is
decided without rounding.
"""

# Common Python modules
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational, Real
from typing import List, Sequence

# Arbitrary precision floating point (cross-checks only)
import mpmath

# Apollo kernel
from kernel.apollonius import RootLabel
from kernel.errors import (DegenerateQuadraticError, ImaginaryRootError, NegativeRadicandError,
                           NonIntegerInputError, RankTooLowError, SingularExactError)
from kernel.geometry_types import Ball, BallSet


RationalScalar = Fraction


@dataclass(frozen=True)
class RadicalExpr:
    """a + b * sqrt(c) with rational a, b and radicand c >= 0."""
    a: RationalScalar
    b: RationalScalar
    c: RationalScalar

    def __post_init__(self) -> None:
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.c < 0:
            raise NegativeRadicandError(f"Radicand {self.c} is negative.")

    def approximate(self, prec: int = 256) -> mpmath.mpf:
        with mpmath.workprec(prec):
            def to_mpf(value: Fraction) -> mpmath.mpf:
                return mpmath.mpf(value.numerator) / value.denominator
            return +(to_mpf(self.a) + to_mpf(self.b) * mpmath.sqrt(to_mpf(self.c)))


def _sign(value: Rational) -> int:
    return (value > 0) - (value < 0)


def exact_determinant(M: Sequence[Sequence[Rational]]) -> Fraction:
    """Determinant by fraction-free (Bareiss) elimination; exact for integer and rational entries."""
    rows = [[Fraction(value) for value in row] for row in M]
    n = len(rows)
    if n == 0:
        return Fraction(1)
    sign = 1
    previous = Fraction(1)
    for k in range(n - 1):
        if rows[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if rows[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            rows[k], rows[swap] = rows[swap], rows[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                rows[i][j] = (rows[i][j] * rows[k][k] - rows[i][k] * rows[k][j]) / previous
        previous = rows[k][k]
    return sign * rows[n - 1][n - 1]


def det_sign(M: Sequence[Sequence[Rational]]) -> int:
    return _sign(exact_determinant(M))


def _replace_column(M: Sequence[Sequence[Rational]], column: Sequence[Rational], index: int) -> List[List[Rational]]:
    return [[column[i] if j == index else value for j, value in enumerate(row)] for i, row in enumerate(M)]


def cramer_component(V: Sequence[Sequence[Rational]], t: Sequence[Rational], i: int) -> RationalScalar:
    """i-th component of the solution of V p = t as an exact rational |V_i| / |V|.

    Raises:
        SingularExactError: |V| = 0.
    """
    det = exact_determinant(V)
    if det == 0:
        raise SingularExactError("Matrix V is exactly singular.")
    return exact_determinant(_replace_column(V, t, i)) / det


def _cramer_solve(V: Sequence[Sequence[Rational]], t: Sequence[Rational], det: Fraction) -> List[Fraction]:
    return [exact_determinant(_replace_column(V, t, i)) / det for i in range(len(V))]


def radical_sign(e: RadicalExpr) -> int:
    """Exact sign of a + b * sqrt(c)."""
    sign_a = _sign(e.a)
    sign_b = _sign(e.b) if e.c != 0 else 0
    if sign_b == 0:
        return sign_a
    if sign_a == 0 or sign_a == sign_b:
        return sign_b
    # Opposite signs: the term with the larger square wins
    return sign_a * _sign(e.a * e.a - e.b * e.b * e.c)


def _to_integer(value: Real) -> int:
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    if isinstance(value, float) and value.is_integer():
        return int(value)
    raise NonIntegerInputError(f"Exact predicates need integer input, got {value!r}.")


def _dot(a: Sequence[Rational], b: Sequence[Rational]) -> Rational:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def _sub(a: Sequence[Rational], b: Sequence[Rational]) -> List[Rational]:
    return [x - y for x, y in zip(a, b)]


def _exact_rank_basis(vectors: List[List[int]]) -> List[int]:
    """Indices of a greedy maximal independent subset of the vectors."""
    chosen, reduced = [], []
    for index, vector in enumerate(vectors):
        candidate = [Fraction(value) for value in vector]
        for pivot_column, pivot_row in reduced:
            factor = candidate[pivot_column] / pivot_row[pivot_column]
            candidate = [x - factor * y for x, y in zip(candidate, pivot_row)]
        pivot_column = next((j for j, value in enumerate(candidate) if value != 0), None)
        if pivot_column is not None:
            chosen.append(index)
            reduced.append((pivot_column, candidate))
    return chosen


def _conflict_full_rank(centers: List[List[int]], radii: List[int], det: Fraction, root: RootLabel,
                        query_center: List[int], query_radius: int) -> bool:
    d = len(centers) - 1
    V = [_sub(centers[i], centers[d]) for i in range(d)]
    t = [Fraction(_dot(centers[i], centers[i]) - radii[i] ** 2 - _dot(centers[d], centers[d]) + radii[d] ** 2, 2)
         for i in range(d)]
    gradient_rhs = [-(radii[i] - radii[d]) for i in range(d)]
    p = _cramer_solve(V, t, det)
    ptilde = _cramer_solve(V, gradient_rhs, det)

    offset = _sub(centers[0], p)
    rp2 = _dot(offset, offset) - radii[0] ** 2
    A = _dot(ptilde, ptilde) - 1
    L = radii[0] + _dot(offset, ptilde)

    w = _sub(query_center, p)
    f0 = _dot(w, w) - query_radius ** 2
    f1 = -2 * (_dot(w, ptilde) + query_radius)
    f2 = A

    if A == 0:
        # Linear quadratic: single rational root
        if L == 0:
            raise DegenerateQuadraticError("Tangency quadratic degenerates to a constant.")
        r = rp2 / (2 * L)
        return f0 + f1 * r + f2 * r * r < 0

    D = L * L - A * rp2
    if D < 0:
        raise ImaginaryRootError("Selected root is imaginary.")
    # Plus is the larger root: (L + s sqrt(D)) / A with s = sign(A)
    s = 1 if A > 0 else -1
    if root == RootLabel.MINUS:
        s = -s
    alpha = L / A
    beta = Fraction(s) / A
    expression = RadicalExpr(
        a=f0 + f1 * alpha + f2 * (alpha * alpha + beta * beta * D),
        b=f1 * beta + 2 * f2 * alpha * beta,
        c=D,
    )
    return radical_sign(expression) < 0


def _conflict_subdimensional(centers: List[List[int]], radii: List[int], root: RootLabel,
                             query_center: List[int], query_radius: int) -> bool:
    d = len(centers) - 1
    base = radii.index(min(radii))
    others = [index for index in range(d + 1) if index != base]
    u = [_sub(centers[index], centers[base]) for index in others]
    w_i = [radii[index] - radii[base] for index in others]

    chosen = _exact_rank_basis(u)
    if len(chosen) < d - 1:
        raise RankTooLowError(f"rank(V) = {len(chosen)} < {d - 1} is not supported.")
    basis = [u[index] for index in chosen[:d - 1]]

    # Cofactor normal of the basis, first non-zero component positive
    normal = []
    for j in range(d):
        minor = [[value for k, value in enumerate(row) if k != j] for row in basis]
        normal.append((-1) ** (d - 1 + j) * exact_determinant(minor))
    leading = next(value for value in normal if value != 0)
    if leading < 0:
        normal = [-value for value in normal]

    U = [[_dot(u_i, b) for b in basis] + [w] for u_i, w in zip(u, w_i)]
    t = [Fraction(_dot(u_i, u_i) - w * w, 2) for u_i, w in zip(u, w_i)]
    det = exact_determinant(U)
    if det == 0:
        raise SingularExactError("Matrix U is exactly singular.")
    g = _cramer_solve(U, t, det)

    c = [_dot([b[k] for b in basis], g[:-1]) for k in range(d)]
    w = g[-1]
    H = w * w - _dot(c, c)
    if H < 0:
        raise ImaginaryRootError("Sub-dimensional roots are imaginary.")
    r = w - radii[base]

    # x = x_base + c + s sqrt(H / |n|^2) n
    normal_sq = _dot(normal, normal)
    s = -1 if root == RootLabel.MINUS else 1
    y = _sub(_sub(query_center, centers[base]), c)
    expression = RadicalExpr(
        a=_dot(y, y) + H - (query_radius + r) ** 2,
        b=-2 * s * _dot(y, normal),
        c=H / normal_sq,
    )
    return radical_sign(expression) < 0


def incircle(ball_set: BallSet, root: RootLabel, query: Ball) -> bool:
    """Exact test whether the query ball conflicts with the selected solution ball.

    The query is in conflict when |x_q - x|^2 - (r_q + r)^2 < 0. Sets with |V| = 0 use the
    sub-dimensional closed form.

    Args:
        ball_set (BallSet): Generators with integer data.
        root (RootLabel): Selected root (ignored when the quadratic is linear).
        query (Ball): Query ball with integer data.

    Raises:
        NonIntegerInputError: Some coordinate or radius is not an integer.
        ImaginaryRootError: The selected root is not real.

    Returns:
        bool: True when the query ball conflicts with the solution ball.
    """
    centers = [[_to_integer(value) for value in ball.center] for ball in ball_set.balls]
    radii = [_to_integer(ball.radius) for ball in ball_set.balls]
    query_center = [_to_integer(value) for value in query.center]
    query_radius = _to_integer(query.radius)

    d = ball_set.dimension
    det = exact_determinant([_sub(centers[i], centers[d]) for i in range(d)])
    if det == 0:
        return _conflict_subdimensional(centers, radii, root, query_center, query_radius)
    return _conflict_full_rank(centers, radii, det, root, query_center, query_radius)


def conflict_value(x: Sequence[float], r: float, query: Ball) -> float:
    """Floating-point conflict value |x_q - x|^2 - (r_q + r)^2 (negative means conflict)."""
    offset = [float(a) - float(b) for a, b in zip(query.center, x)]
    return sum(value * value for value in offset) - (float(query.radius) + float(r)) ** 2
