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
Core domain types of the kernel: balls, ball sets of size d+1, tangency sign sets and
tolerances, together with the validation and radius normalization used by every solver.

Centers and radii are stored exactly as the caller supplied them, so integer inputs stay
integers and can be handed to the exact predicates without loss.
"""

# Common Python modules
import math
from dataclasses import dataclass
from numbers import Real
from typing import List, NamedTuple, Sequence, Tuple

# Numerical modules
import numpy as np

# Apollo kernel
from kernel.errors import (ConcentricPairError, DimensionMismatchError, InvalidSignSetError,
                           InvalidTolerancesError, NonFiniteInputError, WrongCountError)


@dataclass(frozen=True)
class Ball:
    """Generator ball b_i = (x_i, r_i); the radius may be negative on input."""
    center: Tuple[Real, ...]
    radius: Real

    def __post_init__(self) -> None:
        object.__setattr__(self, "center", tuple(self.center))
        if len(self.center) == 0:
            raise DimensionMismatchError("Ball center must have at least one coordinate.")
        values = self.center + (self.radius,)
        if not all(math.isfinite(value) for value in values):
            raise NonFiniteInputError(f"Ball {self.center}, {self.radius} has a non-finite value.")

    @property
    def dimension(self) -> int:
        return len(self.center)


@dataclass(frozen=True)
class BallSet:
    """Exactly d+1 balls defining one vertex problem; build it with validate_ball_set."""
    dimension: int
    balls: Tuple[Ball, ...]

    @property
    def centers(self) -> np.ndarray:
        return np.array([ball.center for ball in self.balls], dtype=float)

    @property
    def radii(self) -> np.ndarray:
        return np.array([ball.radius for ball in self.balls], dtype=float)

    @property
    def scale(self) -> float:
        """Input scale max |coordinate| + max |radius| that all relative tolerances refer to."""
        scale = float(np.max(np.abs(self.centers)) + np.max(np.abs(self.radii)))
        return scale if scale > 0.0 else 1.0

    def with_radii(self, radii: Sequence[Real]) -> "BallSet":
        """Same centers with the given radii (centers are unchanged so validity is kept)."""
        return BallSet(self.dimension, tuple(Ball(ball.center, radius) for ball, radius in zip(self.balls, radii)))

    @classmethod
    def from_arrays(cls, centers: Sequence[Sequence[Real]], radii: Sequence[Real]) -> "BallSet":
        centers = [tuple(float(value) for value in center) for center in np.asarray(centers)]
        balls = [Ball(center, float(radius)) for center, radius in zip(centers, radii)]
        return validate_ball_set(balls, len(centers[0]))


@dataclass(frozen=True)
class SignSet:
    """Tangency selectors s_i used by the signed solver."""
    signs: Tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "signs", tuple(int(sign) for sign in self.signs))
        if not self.signs or any(sign not in (1, -1) for sign in self.signs):
            raise InvalidSignSetError(f"Sign set {self.signs} must contain only +1 and -1.")

    @classmethod
    def parse(cls, text: str) -> "SignSet":
        """Parse a comma separated list such as "+,-,+"."""
        mapping = {"+": 1, "+1": 1, "1": 1, "-": -1, "-1": -1}
        tokens = [token.strip() for token in text.split(",")]
        if any(token not in mapping for token in tokens):
            raise InvalidSignSetError(f"Given sign set '{text}' is not a comma separated list of '+' and '-'.")
        return cls(tuple(mapping[token] for token in tokens))

    def check_length(self, dimension: int) -> None:
        if len(self.signs) != dimension + 1:
            raise InvalidSignSetError(f"Sign set has {len(self.signs)} entries, expected {dimension + 1}.")

    def negated(self) -> "SignSet":
        return SignSet(tuple(-sign for sign in self.signs))

    def as_array(self) -> np.ndarray:
        return np.array(self.signs, dtype=float)

    def __str__(self) -> str:
        return ",".join("+" if sign > 0 else "-" for sign in self.signs)


@dataclass(frozen=True)
class Tolerances:
    """Relative thresholds; all of them are multiplied by the input scale (or its powers)."""
    singular_rel: float = 1e-12
    residual_rel: float = 1e-9
    dedupe_rel: float = 1e-9

    def __post_init__(self) -> None:
        for name in ("singular_rel", "residual_rel", "dedupe_rel"):
            value = getattr(self, name)
            if not 0.0 < value < 1.0:
                raise InvalidTolerancesError(f"Tolerance {name}={value} must lie in the open interval (0, 1).")


class PreprocessedSet(NamedTuple):
    """Result of preprocess_translate together with the data needed to undo it."""
    ball_set: BallSet
    k: int
    center_offset: Tuple[Real, ...]
    radius_offset: Real

    def undo(self) -> BallSet:
        balls = tuple(
            Ball(tuple(value + offset for value, offset in zip(ball.center, self.center_offset)),
                 ball.radius + self.radius_offset)
            for ball in self.ball_set.balls
        )
        return BallSet(self.ball_set.dimension, balls)

    def restore(self, x: Sequence[float], r: float) -> Tuple[Tuple[float, ...], float]:
        """Map a solution of the translated set back to the original one."""
        center = tuple(float(value) + float(offset) for value, offset in zip(x, self.center_offset))
        return center, float(r) - float(self.radius_offset)


def validate_ball_set(balls: List[Ball], d: int) -> BallSet:
    """Validate d+1 balls and wrap them in a BallSet.

    Overlapping, hidden and trivial balls are accepted; only identical or concentric pairs
    are rejected, using exact comparison of the coordinates.

    Args:
        balls (list): Generator balls.
        d (int): Space dimension.

    Raises:
        WrongCountError: Number of balls differs from d+1.
        DimensionMismatchError: Some ball is not d-dimensional.
        ConcentricPairError: Two balls share a center.

    Returns:
        BallSet: Validated set.
    """
    if d < 1:
        raise DimensionMismatchError(f"Dimension {d} must be at least 1.")
    if len(balls) != d + 1:
        raise WrongCountError(f"Expected {d + 1} balls for dimension {d}, got {len(balls)}.")

    seen = {}
    for index, ball in enumerate(balls):
        if ball.dimension != d:
            raise DimensionMismatchError(f"Ball {index} has dimension {ball.dimension}, expected {d}.")
        if ball.center in seen:
            raise ConcentricPairError(seen[ball.center], index)
        seen[ball.center] = index

    return BallSet(d, tuple(balls))


def increment_radii(ball_set: BallSet, eps: Real) -> BallSet:
    return BallSet(ball_set.dimension, tuple(Ball(ball.center, ball.radius + eps) for ball in ball_set.balls))


def normalize_radii(ball_set: BallSet) -> Tuple[BallSet, Real]:
    """Shift all radii so that the smallest one is zero when some radius is negative.

    Returns:
        tuple: Normalized set and the applied shift (0 when all radii are already non-negative).
    """
    smallest = min(ball.radius for ball in ball_set.balls)
    if smallest >= 0:
        return ball_set, 0
    shift = -smallest
    return increment_radii(ball_set, shift), shift


def restore_radius(r: float, shift: Real) -> float:
    """Radius of a normalized-set solution expressed for the original set."""
    return float(r) + float(shift)


def preprocess_translate(ball_set: BallSet) -> PreprocessedSet:
    """Translate the set so that its smallest ball becomes a point at the origin.

    Ties on the smallest radius go to the lowest index.
    """
    radii = [ball.radius for ball in ball_set.balls]
    k = radii.index(min(radii))
    center_offset = ball_set.balls[k].center
    radius_offset = ball_set.balls[k].radius

    balls = tuple(
        Ball(tuple(value - offset for value, offset in zip(ball.center, center_offset)), ball.radius - radius_offset)
        for ball in ball_set.balls
    )
    return PreprocessedSet(BallSet(ball_set.dimension, balls), k, center_offset, radius_offset)
