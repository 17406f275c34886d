import itertools
import math

import numpy as np
import numpy.testing as npt
import pytest

from conftest import WORKED, make_set
from kernel import smallmat, subdim
from kernel.apollonius import (ApolloniusSolution, RootLabel, SolveOutcome, SpecialCase, TangencyClass, classify_roots,
                               detect_twin, max_residual, solve_all_sign_sets, solve_recipe1, solve_recipe2,
                               solve_recipe3, solve_signed)
from kernel.errors import RequiresNonNegativeRadiiError, SignSetTooLargeError
from kernel.geometry_types import SignSet, increment_radii, preprocess_translate
from kernel.oracle import Conditioning, brute_force_solutions, random_ball_set, tangency_residual
from kernel.power import power_vertex
from kernel.subdim import solve_preprocessed


RECIPES = [solve_recipe1, solve_recipe2, solve_recipe3]

# Centered at (1/3, 1/4) with radius 5/12, internally tangent to the two negative balls
PTILDE_UNIT = [((2, 2), -2), ((1, -1), -1), ((0, 0), 0)]
# Every generator passes through the origin
RP_ZERO = [((2, 0), 2), ((0, 1), 1), ((-3, 0), 3)]


@pytest.mark.parametrize("solver", RECIPES)
def test_equal_radii_solutions_sit_at_the_circumcenter(equilateral, solver):
    outcome = solver(equilateral)
    assert outcome.special_case == SpecialCase.PTILDE_ZERO
    assert [solution.root for solution in outcome.solutions] == [RootLabel.PLUS, RootLabel.MINUS]
    for solution, expected in zip(outcome.solutions, (2.0 / math.sqrt(3.0), -2.0 / math.sqrt(3.0))):
        npt.assert_allclose(solution.x, [1.0, 1.0 / math.sqrt(3.0)], atol=1e-14)
        assert solution.r == pytest.approx(-1.0 + expected, abs=1e-14)


def test_equilateral_classification(equilateral):
    outcome = detect_twin(classify_roots(solve_recipe1(equilateral), equilateral))
    plus, minus = outcome.solutions
    assert plus.klass == TangencyClass.POSITIVE and plus.diagram_relevant
    assert minus.klass == TangencyClass.LARGE_NEGATIVE and not minus.diagram_relevant
    assert outcome.pattern == "positive_large_negative"
    assert plus.twin_id is None and minus.twin_id is None


@pytest.mark.parametrize("solver", RECIPES)
def test_worked_set(worked, solver):
    outcome = solver(worked)
    assert outcome.special_case == SpecialCase.GENERIC
    r_plus = (-1.0 + math.sqrt(28.0 / 3.0)) / 2.0
    r_minus = (-1.0 - math.sqrt(28.0 / 3.0)) / 2.0
    plus, minus = outcome.solutions
    assert plus.r == pytest.approx(r_plus, abs=1e-13)
    assert minus.r == pytest.approx(r_minus, abs=1e-13)
    npt.assert_allclose(plus.x, [0.75 - r_plus / 2.0, 1.0], atol=1e-13)
    npt.assert_allclose(minus.x, [0.75 - r_minus / 2.0, 1.0], atol=1e-13)
    assert max_residual(worked, np.array(plus.x), plus.r, worked.radii) < 1e-13


def test_unit_gradient_gives_a_single_solution():
    ball_set = make_set(PTILDE_UNIT)
    outcome = solve_recipe1(ball_set)
    assert outcome.special_case == SpecialCase.PTILDE_UNIT
    (solution,) = outcome.solutions
    assert solution.root == RootLabel.SINGLE
    assert solution.r == pytest.approx(-5.0 / 12.0, abs=1e-13)
    npt.assert_allclose(solution.x, [1.0 / 3.0, 0.25], atol=1e-13)


def test_zero_power_radius_gives_a_point_solution():
    ball_set = make_set(RP_ZERO)
    outcome = classify_roots(solve_recipe1(ball_set), ball_set)
    assert outcome.special_case == SpecialCase.RP_ZERO
    plus, minus = outcome.solutions
    assert plus.r == pytest.approx(4.8, abs=1e-12)
    npt.assert_allclose(plus.x, [0.96, 6.72], atol=1e-12)
    assert minus.r == pytest.approx(0.0, abs=1e-12)
    npt.assert_allclose(minus.x, [0.0, 0.0], atol=1e-12)
    assert minus.klass == TangencyClass.ZERO_RADIUS


def test_classification_needs_non_negative_radii():
    ball_set = make_set(PTILDE_UNIT)
    with pytest.raises(RequiresNonNegativeRadiiError):
        classify_roots(solve_recipe1(ball_set), ball_set)


def test_all_plus_signs_match_recipe1(worked):
    signed = solve_signed(worked, SignSet((1, 1, 1)))
    unsigned = solve_recipe1(worked)
    assert signed.signs == SignSet((1, 1, 1))
    for a, b in zip(signed.solutions, unsigned.solutions):
        npt.assert_allclose(a.x, b.x, atol=1e-15)
        assert a.r == pytest.approx(b.r, abs=1e-15)


def test_negated_signs_mirror_the_radius(disjoint):
    plain = solve_signed(disjoint, SignSet((1, -1, 1)))
    mirrored = solve_signed(disjoint, SignSet((-1, 1, -1)))
    assert len(plain.solutions) == len(mirrored.solutions) == 2
    for a, b in zip(sorted(plain.solutions, key=lambda s: s.r), sorted(mirrored.solutions, key=lambda s: -s.r)):
        npt.assert_allclose(a.x, b.x, atol=1e-12)
        assert a.r == pytest.approx(-b.r, abs=1e-12)


def test_signed_solutions_satisfy_signed_tangency(disjoint):
    signs = SignSet((1, -1, -1))
    outcome = solve_signed(disjoint, signs)
    assert outcome.solutions
    for solution in outcome.solutions:
        assert tangency_residual(disjoint, solution, signs).max_abs < 1e-12 * disjoint.scale


def test_all_sign_sets_of_disjoint_circles(disjoint):
    results = solve_all_sign_sets(disjoint)
    assert results[0][0] == SignSet((1, 1, 1))

    found = [(signs, solution) for signs, outcome in results for solution in outcome.solutions]
    assert len(found) == 8
    for signs, solution in found:
        assert tangency_residual(disjoint, solution, signs).max_abs < 1e-10 * disjoint.scale

    # No circle is reported twice, also not as its own mirror
    bound = 1e-9 * disjoint.scale
    for index, (_, first) in enumerate(found):
        for _, second in found[index + 1:]:
            assert not _same_circle(first.x, first.r, second.x, second.r, bound)

    expected = []
    for signs in itertools.product((1, -1), repeat=3):
        for x, r in brute_force_solutions(disjoint, SignSet(signs), starts=2000):
            if not any(_same_circle(x, r, other_x, other_r, bound) for other_x, other_r in expected):
                expected.append((x, r))
    assert len(expected) == 8
    for _, solution in found:
        assert any(_same_circle(solution.x, solution.r, x, r, bound) for x, r in expected)


def _same_circle(x, r, other_x, other_r, bound):
    return np.max(np.abs(np.subtract(x, other_x))) <= bound and abs(abs(r) - abs(other_r)) <= bound


def test_sign_set_enumeration_is_capped():
    with pytest.raises(SignSetTooLargeError):
        solve_all_sign_sets(random_ball_set(11, 0))


@pytest.mark.parametrize("d", [2, 3, 4, 5])
@pytest.mark.parametrize("conditioning", [Conditioning.WELL_SEPARATED, Conditioning.OVERLAPPING])
def test_recipe1_residuals_on_random_sets(d, conditioning):
    for seed in range(25):
        ball_set = random_ball_set(d, seed, conditioning)
        for solution in solve_recipe1(ball_set).solutions:
            residual = max_residual(ball_set, np.array(solution.x), solution.r, ball_set.radii)
            assert residual <= 1e-9 * (ball_set.scale + abs(solution.r))


@pytest.mark.parametrize("d", [2, 3])
def test_recipes_agree_on_random_sets(d):
    for seed in range(25):
        ball_set = random_ball_set(d, seed)
        reference = solve_recipe1(ball_set)
        for solver in (solve_recipe2, solve_recipe3):
            outcome = solver(ball_set)
            assert len(outcome.solutions) == len(reference.solutions)
            for a, b in zip(outcome.solutions, reference.solutions):
                bound = 1e-8 * (ball_set.scale + abs(b.r))
                assert a.r == pytest.approx(b.r, abs=bound)
                npt.assert_allclose(a.x, b.x, atol=bound)


@pytest.mark.parametrize("d", [2, 3, 4])
def test_preprocessed_disjoint_sets_have_no_small_negative_solution(d):
    for seed in range(25):
        ball_set = random_ball_set(d, seed)
        outcome = solve_preprocessed(ball_set)
        assert all(solution.klass != TangencyClass.SMALL_NEGATIVE for solution in outcome.solutions)
        for solution in outcome.solutions:
            residual = max_residual(ball_set, np.array(solution.x), solution.r, ball_set.radii)
            assert residual <= 1e-9 * (ball_set.scale + abs(solution.r))


@pytest.mark.parametrize("d", [2, 3])
def test_large_negative_solutions_enclose_every_generator(d):
    for seed in range(25):
        ball_set = random_ball_set(d, seed, Conditioning.OVERLAPPING)
        outcome = classify_roots(solve_recipe1(ball_set), ball_set)
        for solution in outcome.solutions:
            if solution.klass != TangencyClass.LARGE_NEGATIVE:
                continue
            reach = np.linalg.norm(ball_set.centers - np.array(solution.x), axis=1) + ball_set.radii
            assert np.all(reach <= -solution.r + 1e-9 * ball_set.scale)


def test_preprocess_maps_solutions_back(equilateral):
    assert preprocess_translate(equilateral).k == 0
    outcome = solve_preprocessed(equilateral)
    radii = [solution.r for solution in outcome.solutions]
    npt.assert_allclose(radii, [2.0 / math.sqrt(3.0) - 1.0, -2.0 / math.sqrt(3.0) - 1.0], atol=1e-14)
    npt.assert_allclose(outcome.solutions[0].x, [1.0, 1.0 / math.sqrt(3.0)], atol=1e-14)


def test_preprocessed_vertices_are_the_non_negative_solutions(monkeypatch):
    def fake_dispatch(radius):
        solutions = (ApolloniusSolution((1.0, 1.0), 0.5, RootLabel.PLUS),
                     ApolloniusSolution((0.5, 0.5), radius, RootLabel.MINUS))
        return lambda ball_set, tol, recipe: SolveOutcome(solutions, 1.0, SpecialCase.GENERIC, recipe)

    monkeypatch.setattr(subdim, "dispatch_solve", fake_dispatch(-0.25))
    plus, minus = solve_preprocessed(make_set(WORKED)).solutions
    assert minus.klass == TangencyClass.SMALL_NEGATIVE
    assert plus.diagram_relevant and not minus.diagram_relevant
    assert plus.twin_id is None and minus.twin_id is None

    monkeypatch.setattr(subdim, "dispatch_solve", fake_dispatch(0.0))
    plus, minus = solve_preprocessed(make_set(WORKED)).solutions
    assert minus.klass == TangencyClass.ZERO_RADIUS
    assert plus.diagram_relevant and minus.diagram_relevant
    assert plus.twin_id == minus.twin_id == 1


def _trivial_ball_set(rng, d):
    """Random set whose second ball lies strictly inside the first one, in shuffled order."""
    outer_radius = rng.uniform(1.0, 3.0)
    inner_radius = rng.uniform(0.0, 0.5) * outer_radius
    direction = rng.normal(size=d)
    direction /= np.linalg.norm(direction)
    outer_center = rng.uniform(-5.0, 5.0, size=d)
    inner_center = outer_center + rng.uniform(0.05, 0.9) * (outer_radius - inner_radius) * direction
    balls = [(outer_center, outer_radius), (inner_center, inner_radius)]
    balls += [(rng.uniform(-10.0, 10.0, size=d), rng.uniform(0.0, 2.0)) for _ in range(d - 1)]
    return make_set([(tuple(float(value) for value in balls[index][0]), float(balls[index][1]))
                     for index in rng.permutation(d + 1)])


@pytest.mark.parametrize("d", [2, 3])
def test_sets_with_a_contained_ball_have_no_solution(d):
    rng = np.random.default_rng(100 + d)
    for index in range(1000):
        ball_set = _trivial_ball_set(rng, d)
        for solver in RECIPES:
            outcome = solver(ball_set)
            assert outcome.is_imaginary
            assert outcome.solutions == ()
        if index < 20:
            assert brute_force_solutions(ball_set) == []


def test_trivial_fixture_has_no_solution(trivial):
    for solver in RECIPES:
        assert solver(trivial).solutions == ()


# External solutions lie on x = 0 but are too small to reach the far ball; the third ball
# sits inside the hull of the others and the first two are disjoint, so nothing encloses or
# is inside all of them
HULL = [((-2, 0, 0), 1), ((2, 0, 0), 1), ((0, 0, 0.2), 0.5), ((0, 20, 0), 1)]


@pytest.mark.parametrize("solver", RECIPES)
def test_mixed_sign_roots_are_dropped(solver):
    ball_set = make_set(HULL)
    outcome = solver(ball_set)
    assert outcome.is_imaginary
    assert outcome.solutions == ()


def test_oracle_agrees_that_the_hull_set_has_no_solution():
    assert brute_force_solutions(make_set(HULL)) == []


def _distance_to_line(point, origin, direction):
    offset = np.asarray(point, dtype=float) - origin
    unit = direction / np.linalg.norm(direction)
    return float(np.linalg.norm(offset - (offset @ unit) * unit)), float(np.linalg.norm(offset))


@pytest.mark.parametrize("d", [2, 3])
@pytest.mark.parametrize("conditioning", [Conditioning.WELL_SEPARATED, Conditioning.OVERLAPPING])
def test_power_vertices_and_solutions_are_collinear(d, conditioning):
    for seed in range(25):
        ball_set = random_ball_set(d, seed, conditioning)
        solution = power_vertex(ball_set)
        points = [power_vertex(increment_radii(ball_set, eps)).p for eps in (1.0, -2.0)]
        points += [np.array(root.x) for root in solve_recipe3(ball_set).solutions]
        for point in points:
            distance, length = _distance_to_line(point, solution.p, solution.ptilde)
            assert distance <= 1e-10 * (ball_set.scale + length)


@pytest.mark.parametrize("eps", [0.1, -0.1, 1.0, -1.0, 10.0, -10.0])
@pytest.mark.parametrize("d", [2, 3])
def test_incrementing_radii_shifts_the_solution_radius(d, eps):
    for seed in range(25):
        ball_set = random_ball_set(d, seed, Conditioning.OVERLAPPING)
        reference = solve_recipe1(ball_set).solutions
        shifted = solve_recipe1(increment_radii(ball_set, eps)).solutions
        assert len(shifted) == len(reference)
        for a, b in zip(shifted, reference):
            bound = 1e-9 * (ball_set.scale + abs(b.r) + abs(eps))
            npt.assert_allclose(a.x, b.x, atol=bound)
            assert a.r == pytest.approx(b.r - eps, abs=bound)


@pytest.mark.parametrize("d", [2, 3, 4])
@pytest.mark.parametrize("conditioning", [Conditioning.WELL_SEPARATED, Conditioning.OVERLAPPING])
def test_recipe3_radius_sign_follows_the_line_parameter(d, conditioning):
    for seed in range(25):
        ball_set = random_ball_set(d, seed, conditioning)
        p = power_vertex(ball_set).p
        lifted = np.column_stack([ball_set.centers - p, ball_set.radii])
        normal = smallmat.cofactor_normal(lifted[:-1] - lifted[-1])
        if normal[-1] < 0.0:
            normal = -normal
        direction = normal[:-1]
        for solution in solve_recipe3(ball_set).solutions:
            if abs(solution.r) <= 1e-9 * ball_set.scale:
                continue
            sigma = float((np.array(solution.x) - p) @ direction) / float(direction @ direction)
            assert np.sign(sigma) == np.sign(solution.r)
            assert sigma * normal[-1] == pytest.approx(solution.r, abs=1e-9 * (ball_set.scale + abs(solution.r)))
