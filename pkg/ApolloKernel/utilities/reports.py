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
Solve reports shared by the command line and the HTTP surface.

A report is a plain dictionary; dumps_report writes it as JSON with every finite float
printed to 17 significant digits.
"""

# Common Python modules
import json
import logging
import math
import re
from dataclasses import replace
from typing import Any, List, Optional

# Numerical modules
import numpy as np

# Apollo kernel
from kernel.apollonius import (SolveOutcome, classify_roots, detect_twin, max_residual, solve_all_sign_sets,
                               solve_signed)
from kernel.geometry_types import BallSet, SignSet, Tolerances, normalize_radii, restore_radius
from kernel.power import power_vertex
from kernel.subdim import FULL_RANK_SOLVERS, dispatch_solve, solve_preprocessed, solve_subdimensional


logger = logging.getLogger("apollo-kernel")

# Floats travel through json.dumps as NUL-delimited strings and are unquoted afterwards
_FLOAT_TOKEN = re.compile(r'"\\u0000([^"\\]*)\\u0000"')


def _mark_floats(value: Any) -> Any:
    if isinstance(value, float) and math.isfinite(value):
        return f"\x00{format(value, '.17g')}\x00"
    if isinstance(value, dict):
        return {key: _mark_floats(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_mark_floats(item) for item in value]
    return value


def dumps_report(report: dict) -> str:
    """Indented JSON text of a report with floats printed to 17 significant digits."""
    return _FLOAT_TOKEN.sub(r"\1", json.dumps(_mark_floats(report), indent=2)) + "\n"


def _solution_records(outcome: SolveOutcome, ball_set: BallSet, radii: np.ndarray) -> List[dict]:
    records = []
    for solution in outcome.solutions:
        records.append({
            "root": solution.root.value,
            "center": list(solution.x),
            "radius": solution.r,
            "klass": solution.klass.value if solution.klass else None,
            "diagram_relevant": solution.diagram_relevant,
            "twin_id": solution.twin_id,
            "residual": max_residual(ball_set, np.asarray(solution.x), solution.r, radii),
        })
    return records


def outcome_report(outcome: SolveOutcome, ball_set: BallSet, radii: Optional[np.ndarray] = None,
                   radius_shift: float = 0.0) -> dict:
    """Report of one outcome, residuals measured against ball_set with the given effective radii."""
    radii = ball_set.radii if radii is None else radii
    return {
        "status": "imaginary" if outcome.is_imaginary else "ok",
        "recipe": outcome.recipe,
        "special_case": outcome.special_case.value,
        "discriminant": float(outcome.discriminant),
        "subdimensional": outcome.subdimensional,
        "pattern": outcome.pattern,
        "signs": str(outcome.signs) if outcome.signs else None,
        "radius_shift": float(radius_shift),
        "solutions": _solution_records(outcome, ball_set, radii),
    }


def solve_unsigned(ball_set: BallSet, recipe: str = "auto", preprocess: bool = False,
                   tol: Optional[Tolerances] = None) -> SolveOutcome:
    """Classified outcome for the original set.

    Radii are normalized first so that classification is defined; solution radii are mapped
    back afterwards. Recipe "auto" uses recipe 1 and falls back to the sub-dimensional solver.

    Raises:
        SubDimensionalError: An explicit full-rank recipe was requested for a singular set.
        NotSubDimensionalError: Recipe "4" was requested for a full-rank set.
    """
    tol = tol or Tolerances()
    normalized, shift = normalize_radii(ball_set)
    full_rank_recipe = recipe if recipe in FULL_RANK_SOLVERS else "1"

    if preprocess:
        outcome = solve_preprocessed(normalized, tol, full_rank_recipe)
    else:
        if recipe == "auto":
            outcome = dispatch_solve(normalized, tol, full_rank_recipe)
        elif recipe == "4":
            outcome = solve_subdimensional(normalized, tol)
        else:
            outcome = FULL_RANK_SOLVERS[recipe](normalized, tol)
        outcome = detect_twin(classify_roots(outcome, normalized, tol))

    if shift:
        logger.debug(f"Radii were shifted by {shift!r} before solving.")
        outcome = replace(outcome, solutions=tuple(replace(solution, r=restore_radius(solution.r, shift))
                                                   for solution in outcome.solutions))
    return outcome


def solve_ball_set(ball_set: BallSet, recipe: str = "auto", signs: Optional[SignSet] = None,
                   all_signs: bool = False, preprocess: bool = False,
                   tol: Optional[Tolerances] = None) -> dict:
    """Solve one set of d+1 balls and build its report.

    Signed solving (a single sign set or all of them) neither normalizes nor classifies.

    Args:
        ball_set (BallSet): Generators.
        recipe (str): "1", "2", "3", "4" or "auto".
        signs (SignSet): Solve |x_i - x| = |s_i r_i + r| for this sign set.
        all_signs (bool): Solve every sign set.
        preprocess (bool): Translate the smallest ball to the origin before solving.
        tol (Tolerances): Kernel tolerances.

    Returns:
        dict: Solve report.
    """
    tol = tol or Tolerances()
    d = ball_set.dimension

    if all_signs:
        entries = []
        for sign_set, outcome in solve_all_sign_sets(ball_set, tol):
            entries.append(outcome_report(outcome, ball_set, sign_set.as_array() * ball_set.radii))
        return {
            "status": "ok" if entries else "imaginary",
            "dimension": d,
            "sign_sets": entries,
        }

    if signs is not None:
        outcome = solve_signed(ball_set, signs, tol)
        report = outcome_report(outcome, ball_set, signs.as_array() * ball_set.radii)
    else:
        _, shift = normalize_radii(ball_set)
        outcome = solve_unsigned(ball_set, recipe, preprocess, tol)
        report = outcome_report(outcome, ball_set, radius_shift=shift)
    report["dimension"] = d
    return report


def power_vertex_report(ball_set: BallSet, tol: Optional[Tolerances] = None) -> dict:
    power_solution = power_vertex(ball_set, tol)
    return {
        "p": [float(value) for value in power_solution.p],
        "rp2": power_solution.rp2,
        "ptilde": [float(value) for value in power_solution.ptilde],
        "detV": float(power_solution.detV),
        "rankV": power_solution.rankV,
    }
