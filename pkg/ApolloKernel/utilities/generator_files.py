#! /usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Reading generator files (JSON or CSV) into validated balls.

JSON: {"dimension": d, "scale_exponent": e, "balls": [{"id": "...", "center": [...], "radius": x}]}
CSV:  header "id,x1,...,xd,r" followed by one ball per row.
"""

# Common Python modules
import csv
import io
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Tuple

# Data models
import pydantic

# Apollo kernel
from kernel.errors import DimensionMismatchError, DuplicateIdError, InputParseError, NonIntegerInputError
from kernel.geometry_types import Ball, BallSet, validate_ball_set
from models.query_models import GeneratorBall, GeneratorFile


def parse_json(text: str) -> GeneratorFile:
    try:
        return GeneratorFile.model_validate_json(text)
    except pydantic.ValidationError as e:
        raise InputParseError(f"Generator file is not valid: {e}")


def parse_csv(text: str) -> GeneratorFile:
    rows = [row for row in csv.reader(io.StringIO(text)) if row and any(cell.strip() for cell in row)]
    if not rows:
        raise InputParseError("Generator CSV file is empty.")
    header = [cell.strip() for cell in rows[0]]
    if len(header) < 3 or header[0] != "id" or header[-1] != "r":
        raise InputParseError("Generator CSV header must read 'id,x1,...,xd,r'.")

    dimension = len(header) - 2
    balls = []
    for line, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise InputParseError(f"Line {line} has {len(row)} columns, expected {len(header)}.")
        try:
            values = [float(cell) for cell in row[1:]]
        except ValueError:
            raise InputParseError(f"Line {line} contains a value that is not a number.")
        balls.append(GeneratorBall(id=row[0].strip(), center=values[:-1], radius=values[-1]))
    return GeneratorFile(dimension=dimension, balls=balls)


def load_generator_file(path: str) -> GeneratorFile:
    """Load a generator file, choosing the parser by suffix (JSON unless the suffix is .csv).

    Raises:
        InputParseError: File cannot be read or parsed.
    """
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise InputParseError(f"Cannot read generator file '{path}': {e}")
    if path.lower().endswith(".csv"):
        return parse_csv(text)
    return parse_json(text)


def to_balls(generator_file: GeneratorFile) -> Tuple[List[str], List[Ball]]:
    """Ids and balls of a generator file.

    Raises:
        DuplicateIdError: Two balls share an id.
        DimensionMismatchError: Some center does not have the declared dimension.
    """
    ids, balls = [], []
    for generator in generator_file.balls:
        if generator.id in ids:
            raise DuplicateIdError(f"Ball id '{generator.id}' is not unique.")
        if len(generator.center) != generator_file.dimension:
            raise DimensionMismatchError(
                f"Ball '{generator.id}' has {len(generator.center)} coordinates, expected {generator_file.dimension}.")
        ids.append(generator.id)
        balls.append(Ball(tuple(generator.center), generator.radius))
    return ids, balls


def to_ball_set(generator_file: GeneratorFile) -> Tuple[List[str], BallSet]:
    ids, balls = to_balls(generator_file)
    return ids, validate_ball_set(balls, generator_file.dimension)


def integerize(balls: List[Ball], scale_exponent: Optional[int] = None) -> List[Ball]:
    """Scale decimal input by 10^scale_exponent into exact integers.

    Raises:
        NonIntegerInputError: Some scaled value is not an integer.
    """
    factor = Fraction(10) ** (scale_exponent or 0)

    def exact(value: float) -> int:
        scaled = Fraction(repr(float(value))) * factor
        if scaled.denominator != 1:
            raise NonIntegerInputError(
                f"Value {value!r} is not an integer after scaling by 10^{scale_exponent or 0}.")
        return scaled.numerator

    return [Ball(tuple(exact(value) for value in ball.center), exact(ball.radius)) for ball in balls]

