import math

import numpy as np
import numpy.testing as npt
import pytest

from conftest import make_set
from kernel.errors import SubDimensionalError
from kernel.geometry_types import increment_radii
from kernel.oracle import Conditioning, random_ball_set
from kernel.power import (incremented_power_vertex, power_distance, power_vertex, power_vertex_columns,
                          voronoi_vertex)


def test_worked_power_vertex(worked):
    solution = power_vertex(worked)
    npt.assert_allclose(solution.p, [0.75, 1.0], atol=1e-15)
    assert solution.rp2 == pytest.approx(25.0 / 16.0, abs=1e-14)
    npt.assert_allclose(solution.ptilde, [-0.5, 0.0], atol=1e-15)
    assert solution.rankV == 2
    assert solution.detV == pytest.approx(4.0)


def test_badly_scaled_full_rank_set_has_a_power_vertex():
    ball_set = make_set([((10, 0, 0), 0.1), ((0, 1e-5, 0), 0.1), ((0, 0, 1e-6), 0.1), ((0, 0, 0), 0.2)])
    solution = power_vertex(ball_set)
    assert solution.rankV == 3
    npt.assert_allclose(solution.p, [5.0015, 1500.000005, 15000.0000005], rtol=1e-9)
    distances = [power_distance(ball, solution.p) for ball in ball_set.balls]
    npt.assert_allclose(distances, [solution.rp2] * 4, rtol=1e-9)


def test_power_vertex_arrays_are_read_only(worked):
    solution = power_vertex(worked)
    with pytest.raises(ValueError):
        solution.p[0] = 1.0


def test_power_vertex_has_equal_power_distances(disjoint):
    solution = power_vertex(disjoint)
    distances = [power_distance(ball, solution.p) for ball in disjoint.balls]
    npt.assert_allclose(distances, [solution.rp2] * 3, rtol=1e-12)


def test_voronoi_vertex_is_the_circumcenter(equilateral):
    p, rp2 = voronoi_vertex(equilateral)
    npt.assert_allclose(p, [1.0, 1.0 / math.sqrt(3.0)], atol=1e-15)
    assert rp2 == pytest.approx(4.0 / 3.0, rel=1e-14)


def test_equal_radii_have_zero_gradient(equilateral):
    npt.assert_allclose(power_vertex(equilateral).ptilde, [0.0, 0.0], atol=1e-15)


@pytest.mark.parametrize("eps", [0.3, -0.7, 2.0])
def test_incremented_power_vertex_is_linear_in_eps(worked, eps):
    expected = power_vertex(increment_radii(worked, eps)).p
    npt.assert_allclose(incremented_power_vertex(worked, eps), expected, atol=1e-14)


def test_power_vertex_columns_share_one_factorization(disjoint):
    columns = np.column_stack([disjoint.radii, -disjoint.radii])
    solution, gradients = power_vertex_columns(disjoint, columns)
    assert gradients.shape == (2, 2)
    npt.assert_array_equal(solution.ptilde, gradients[:, 0])
    npt.assert_allclose(gradients[:, 1], -gradients[:, 0], atol=1e-15)


def test_singular_set_reports_rank(collinear):
    with pytest.raises(SubDimensionalError) as error:
        power_vertex(collinear)
    assert error.value.rank == 1
    assert error.value.det == 0.0


@pytest.mark.parametrize("d", [2, 3, 5])
def test_power_vertex_random_sets(d):
    for seed in range(20):
        ball_set = random_ball_set(d, seed, Conditioning.OVERLAPPING)
        solution = power_vertex(ball_set)
        distances = [power_distance(ball, solution.p) for ball in ball_set.balls]
        npt.assert_allclose(distances, [solution.rp2] * (d + 1), atol=1e-10 * ball_set.scale ** 2)
