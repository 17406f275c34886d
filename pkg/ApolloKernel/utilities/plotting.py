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
SVG rendering of 2-d generator sets and their solution circles.

Generators are drawn blue and translucent, positive solutions are stroked green and negative
ones red with radius |r|. Every element carries an id (generator-i, solution-positive-i,
solution-negative-i) and the document is free of dates and random ids, so identical input
renders to identical bytes.
"""

# Common Python modules
import csv
import io
import json
import logging
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

# Plotting modules
import matplotlib
matplotlib.use("Agg")
import matplotlib.patches as patches
from matplotlib.figure import Figure

# Apollo kernel
from kernel.errors import InputParseError, UnsupportedDimensionError
from kernel.geometry_types import Ball, Tolerances, validate_ball_set
from utilities.enumeration import enumerate_vertices
from utilities.reports import solve_unsigned


logger = logging.getLogger("apollo-kernel")

GENERATOR_COLOR = "#1f77b4"
POSITIVE_COLOR = "#2ca02c"
NEGATIVE_COLOR = "#d62728"

Circle = Tuple[Tuple[float, float], float]


def render_svg(generators: Sequence[Ball], solutions: Sequence[Circle]) -> str:
    """SVG document with generator circles and solution circles.

    Args:
        generators (list): 2-d generator balls.
        solutions (list): (center, r) pairs; the sign of r selects the stroke color.

    Returns:
        str: SVG document.
    """
    matplotlib.rcParams["svg.hashsalt"] = "apollo-kernel"
    figure = Figure(figsize=(6, 6))
    axes = figure.add_axes((0.02, 0.02, 0.96, 0.96))
    axes.set_axis_off()
    axes.set_aspect("equal")

    bounds = []
    for index, ball in enumerate(generators):
        center, radius = (float(ball.center[0]), float(ball.center[1])), abs(float(ball.radius))
        circle = patches.Circle(center, radius, facecolor=GENERATOR_COLOR, edgecolor=GENERATOR_COLOR, alpha=0.35)
        circle.set_gid(f"generator-{index}")
        axes.add_patch(circle)
        bounds.append((center, radius))

    counts = {"positive": 0, "negative": 0}
    for center, r in solutions:
        kind = "positive" if r >= 0.0 else "negative"
        circle = patches.Circle((float(center[0]), float(center[1])), abs(float(r)), fill=False,
                                edgecolor=POSITIVE_COLOR if kind == "positive" else NEGATIVE_COLOR, linewidth=1.2)
        circle.set_gid(f"solution-{kind}-{counts[kind]}")
        counts[kind] += 1
        axes.add_patch(circle)
        bounds.append(((float(center[0]), float(center[1])), abs(float(r))))

    # Square view around every circle with a 5 % margin
    low_x = min(center[0] - radius for center, radius in bounds)
    high_x = max(center[0] + radius for center, radius in bounds)
    low_y = min(center[1] - radius for center, radius in bounds)
    high_y = max(center[1] + radius for center, radius in bounds)
    half = 0.525 * max(high_x - low_x, high_y - low_y, 1e-9)
    middle_x, middle_y = 0.5 * (low_x + high_x), 0.5 * (low_y + high_y)
    axes.set_xlim(middle_x - half, middle_x + half)
    axes.set_ylim(middle_y - half, middle_y + half)

    output = io.StringIO()
    figure.savefig(output, format="svg", metadata={"Date": None})
    return output.getvalue()


def load_vertex_file(path: str) -> List[Circle]:
    """Solution circles of a vertex report written by the vertices command (JSON or CSV).

    An empty file holds no vertices.

    Raises:
        InputParseError: File cannot be read or parsed.
    """
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise InputParseError(f"Cannot read vertex file '{path}': {e}")
    if not text.strip():
        return []

    try:
        if path.lower().endswith(".csv"):
            return [((float(row["x1"]), float(row["x2"])), float(row["radius"]))
                    for row in csv.DictReader(io.StringIO(text))]
        document = json.loads(text)
        records = document["vertices"] if isinstance(document, dict) else document
        return [((float(record["center"][0]), float(record["center"][1])), float(record["radius"]))
                for record in records]
    except (ValueError, KeyError, TypeError, IndexError) as e:
        raise InputParseError(f"Vertex file '{path}' is not a vertex report: {e}")


def plot_generators(balls: List[Ball], dimension: int, vertex_path: Optional[str] = None,
                    tol: Optional[Tolerances] = None, workers: int = 1) -> str:
    """SVG of a 2-d generator set with the given vertices, or with solutions computed here.

    Without a vertex file a set of exactly three balls is solved directly (both roots are drawn);
    larger sets are enumerated.

    Raises:
        UnsupportedDimensionError: Dimension is not 2.
    """
    if dimension != 2:
        raise UnsupportedDimensionError(f"Plotting supports dimension 2 only, got {dimension}.")

    if vertex_path is not None:
        solutions = load_vertex_file(vertex_path)
    elif len(balls) == dimension + 1:
        outcome = solve_unsigned(validate_ball_set(balls, dimension), tol=tol)
        solutions = [(solution.x, solution.r) for solution in outcome.solutions]
    else:
        vertices = enumerate_vertices(balls, dimension, tol, workers=workers)
        solutions = [(vertex.center, vertex.radius) for vertex in vertices]

    logger.debug(f"Rendering {len(balls)} generators and {len(solutions)} solutions.")
    return render_svg(balls, solutions)
