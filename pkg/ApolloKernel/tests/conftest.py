"""Shared ball-set fixtures."""

import json
import math

import pytest

from kernel.geometry_types import Ball, validate_ball_set


def make_set(balls, d=None):
    balls = [Ball(tuple(center), radius) for center, radius in balls]
    return validate_ball_set(balls, d or balls[0].dimension)


def write_generators(path, balls, ids=None, scale_exponent=None):
    """Write a JSON generator file and return its path as a string."""
    ids = ids or [f"b{index + 1}" for index in range(len(balls))]
    document = {
        "dimension": len(balls[0][0]),
        "balls": [{"id": ball_id, "center": list(center), "radius": radius}
                  for ball_id, (center, radius) in zip(ids, balls)],
    }
    if scale_exponent is not None:
        document["scale_exponent"] = scale_exponent
    path.write_text(json.dumps(document))
    return str(path)


EQUILATERAL = [((0.0, 0.0), 1.0), ((2.0, 0.0), 1.0), ((1.0, math.sqrt(3.0)), 1.0)]
WORKED = [((0, 0), 0), ((2, 0), 1), ((0, 2), 0)]
COLLINEAR = [((-2, 0), 1), ((2, 0), 1), ((0, 0), 0)]
DISJOINT = [((0.0, 0.0), 1.0), ((6.0, 0.0), 1.5), ((0.0, 6.0), 0.5)]
UNIT_SQUARE = [((0.0, 0.0), 0.5), ((1.0, 0.0), 0.5), ((0.0, 1.0), 0.5), ((1.0, 1.0), 1.0)]
# Ball 2 lies inside ball 1, so no ball touches all three
TRIVIAL = [((0.0, 0.0), 2.0), ((0.5, 0.0), 0.5), ((0.0, 5.0), 1.0)]


@pytest.fixture
def equilateral():
    return make_set(EQUILATERAL)


@pytest.fixture
def worked():
    return make_set(WORKED)


@pytest.fixture
def collinear():
    return make_set(COLLINEAR)


@pytest.fixture
def disjoint():
    return make_set(DISJOINT)


@pytest.fixture
def trivial():
    return make_set(TRIVIAL)


@pytest.fixture
def unit_square_balls():
    return [Ball(center, radius) for center, radius in UNIT_SQUARE]
