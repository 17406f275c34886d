import itertools
import random
from fractions import Fraction

import mpmath
import pytest

from conftest import make_set
from kernel.apollonius import RootLabel
from kernel.errors import (ConcentricPairError, ImaginaryRootError, NegativeRadicandError, NonIntegerInputError,
                           SingularExactError)
from kernel.exactpred import (RadicalExpr, conflict_value, cramer_component, det_sign, exact_determinant, incircle,
                              radical_sign)
from kernel.geometry_types import Ball
from kernel.subdim import dispatch_solve


@pytest.mark.parametrize("M, expected", [
    ([[1, 2], [3, 4]], -2),
    ([[0, 1], [1, 0]], -1),
    ([[6, 1, 1], [4, -2, 5], [2, 8, 7]], -306),
    ([[2, 0, 1], [1, 3, 2], [1, 1, 1]], 0),
    ([[Fraction(1, 2), 1], [1, 2]], 0),
    ([[7]], 7),
])
def test_exact_determinant(M, expected):
    assert exact_determinant(M) == expected
    assert det_sign(M) == (expected > 0) - (expected < 0)


def test_cramer_component():
    V = [[2, 0], [0, 4]]
    assert cramer_component(V, [2, 2], 0) == 1
    assert cramer_component(V, [2, 2], 1) == Fraction(1, 2)
    with pytest.raises(SingularExactError):
        cramer_component([[1, 2], [2, 4]], [1, 1], 0)


def test_radical_expression_needs_non_negative_radicand():
    with pytest.raises(NegativeRadicandError):
        RadicalExpr(1, 1, -2)


@pytest.mark.parametrize("a, b, c, expected", [
    (1, 1, 2, 1),
    (-1, -1, 2, -1),
    (3, -2, 2, 1),
    (1, -1, 2, -1),
    (-3, 2, 2, -1),
    (0, 0, 5, 0),
    (2, -1, 4, 0),
    (-2, 5, 0, -1),
])
def test_radical_sign(a, b, c, expected):
    assert radical_sign(RadicalExpr(a, b, c)) == expected


def test_radical_sign_agrees_with_high_precision():
    rng = random.Random(7)
    for _ in range(500):
        a = Fraction(rng.randint(-10 ** 6, 10 ** 6), rng.randint(1, 1000))
        b = Fraction(rng.randint(-10 ** 6, 10 ** 6), rng.randint(1, 1000))
        c = Fraction(rng.randint(0, 10 ** 6), rng.randint(1, 1000))
        expression = RadicalExpr(a, b, c)
        value = expression.approximate()
        if value != 0:
            assert radical_sign(expression) == (1 if value > 0 else -1)


def test_incircle_on_the_worked_set(worked):
    assert incircle(worked, RootLabel.PLUS, Ball((0, 1), 0))
    assert not incircle(worked, RootLabel.PLUS, Ball((5, 5), 1))


def test_incircle_agrees_with_the_float_predicate(worked):
    outcome = dispatch_solve(worked)
    for solution in outcome.solutions:
        for x, y, r in itertools.product(range(-4, 5), range(-4, 5), range(0, 3)):
            query = Ball((x, y), r)
            value = conflict_value(solution.x, solution.r, query)
            if abs(value) > 1e-9:
                assert incircle(worked, solution.root, query) == (value < 0)


def test_incircle_on_a_collinear_set(collinear):
    query = Ball((0, 3), 1)
    assert incircle(collinear, RootLabel.PLUS, query)
    assert not incircle(collinear, RootLabel.MINUS, query)


def test_incircle_decides_exact_tangency():
    generators = [((3, 4), 3), ((-8, 6), 8), ((0, -13), 11)]
    outcome = dispatch_solve(make_set(generators))
    # Ball of radius 2 at the origin touches all three
    root = next(solution.root for solution in outcome.solutions if abs(solution.r - 2.0) < 1e-9)

    K = 2 ** 50
    scaled = make_set([((x * K, y * K), r * K) for (x, y), r in generators])
    assert not incircle(scaled, root, Ball((12 * K, -5 * K), 10 * K))
    assert not incircle(scaled, root, Ball((12 * K, -5 * K), 11 * K))
    assert incircle(scaled, root, Ball((12 * K, -5 * K), 12 * K))


def _high_precision_conflicts(centers, radii, query_center, query_radius):
    """Conflict values of both roots with 256-bit arithmetic, plus root first.

    Returns None for a linear or (near) double-root quadratic and "imaginary" when D < 0.
    """
    d = len(centers) - 1
    with mpmath.workprec(256):
        V = mpmath.matrix([[centers[i][k] - centers[d][k] for k in range(d)] for i in range(d)])
        t = mpmath.matrix([(sum(c * c for c in centers[i]) - radii[i] ** 2
                            - sum(c * c for c in centers[d]) + radii[d] ** 2) / mpmath.mpf(2) for i in range(d)])
        g = mpmath.matrix([-(radii[i] - radii[d]) for i in range(d)])
        p = mpmath.lu_solve(V, t)
        ptilde = mpmath.lu_solve(V, g)

        offset = [centers[0][k] - p[k] for k in range(d)]
        rp2 = sum(value ** 2 for value in offset) - radii[0] ** 2
        A = sum(ptilde[k] ** 2 for k in range(d)) - 1
        L = radii[0] + sum(offset[k] * ptilde[k] for k in range(d))
        D = L * L - A * rp2
        if abs(A) < mpmath.mpf(10) ** -40 or abs(D) < mpmath.mpf(10) ** -40:
            return None
        if D < 0:
            return "imaginary"
        roots = sorted(((L + mpmath.sqrt(D)) / A, (L - mpmath.sqrt(D)) / A), reverse=True)

        values = []
        for r in roots:
            x = [p[k] + r * ptilde[k] for k in range(d)]
            distance = sum((query_center[k] - x[k]) ** 2 for k in range(d))
            values.append(distance - (query_radius + r) ** 2)
        return values


@pytest.mark.parametrize("d", [2, 3])
def test_incircle_agrees_with_an_independent_high_precision_evaluation(d):
    rng = random.Random(100 + d)
    checked = 0
    for _ in range(60):
        centers = [tuple(rng.randint(-20, 20) for _ in range(d)) for _ in range(d + 1)]
        radii = [rng.randint(0, 6) for _ in range(d + 1)]
        try:
            ball_set = make_set(list(zip(centers, radii)))
        except ConcentricPairError:
            continue
        if exact_determinant([[a - b for a, b in zip(centers[i], centers[d])] for i in range(d)]) == 0:
            continue
        query = Ball(tuple(rng.randint(-20, 20) for _ in range(d)), rng.randint(0, 6))

        values = _high_precision_conflicts(centers, radii, query.center, query.radius)
        if values is None:
            continue
        if values == "imaginary":
            with pytest.raises(ImaginaryRootError):
                incircle(ball_set, RootLabel.PLUS, query)
            continue
        for root, value in zip((RootLabel.PLUS, RootLabel.MINUS), values):
            if abs(value) > mpmath.mpf(10) ** -40:
                assert incircle(ball_set, root, query) == (value < 0)
                checked += 1
    assert checked > 0


def test_incircle_needs_integer_input(worked):
    with pytest.raises(NonIntegerInputError):
        incircle(worked, RootLabel.PLUS, Ball((0.5, 0), 1))
