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
Definition of queries solving a single set of d+1 balls.
"""

# FastAPI modules
from fastapi import APIRouter

# Apollo kernel
from kernel.errors import ApolloError
from kernel.geometry_types import SignSet
from models import query_models
from utilities import validation
from utilities.generator_files import to_ball_set
from utilities.reports import power_vertex_report, solve_ball_set
from utilities.settings import KernelSettings


# Initialize FastAPI router
router = APIRouter()


@router.post("/solve",
    response_model=query_models.GeneralResponseDict,
    summary="Balls tangent to every generator, classified, for one or all sign sets")
def solve(request: query_models.SolveQuery) -> dict:
    """
    Solve the tangent-ball problem for exactly d+1 generators. Imaginary sets return status "imaginary".
    """
    # Validate optional parameters and raise exception if not valid
    if request.signs is not None:
        validation.validate(request.signs, "signs")
    if request.tolerance is not None:
        validation.validate(request.tolerance, "tolerance")

    try:
        _, ball_set = to_ball_set(request.generators)
        tol = KernelSettings().tolerances_for(request.tolerance)
        signs = SignSet.parse(request.signs) if request.signs is not None else None
        report = solve_ball_set(ball_set, recipe=request.recipe, signs=signs, all_signs=request.all_signs,
                                preprocess=request.preprocess, tol=tol)
    except ApolloError as e:
        validation.raise_error(e.message)
    return {"response": report}


@router.post("/power_vertex",
    response_model=query_models.GeneralResponseDict,
    summary="Power vertex, power radius and power gradient of d+1 balls")
def power_vertex(request: query_models.GeneratorFile) -> dict:
    """
    Point of equal power distance to all generators and its movement under radius incrementation.
    """
    try:
        _, ball_set = to_ball_set(request)
        report = power_vertex_report(ball_set, KernelSettings().tolerances)
    except ApolloError as e:
        validation.raise_error(e.message)
    return {"response": report}
