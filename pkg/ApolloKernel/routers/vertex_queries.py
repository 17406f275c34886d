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
Definition of queries enumerating diagram vertices of larger generator sets.
"""

# FastAPI modules
from fastapi import APIRouter

# Apollo kernel
from kernel.errors import ApolloError
from models import query_models
from utilities import validation
from utilities.data_processing import VertexDataProcessing
from utilities.enumeration import enumerate_vertices
from utilities.generator_files import integerize, to_balls
from utilities.settings import KernelSettings


# Initialize FastAPI router
router = APIRouter()


@router.post("/vertices",
    response_model=query_models.GeneralResponseDict,
    summary="Apollonius diagram vertices of a generator set")
def vertices(request: query_models.VertexQuery) -> dict:
    """
    Solve every (d+1)-subset of the generators and keep the conflict-free solutions. Requests are
    solved in the server process; use the command line for large sets.
    """
    if request.tolerance is not None:
        validation.validate(request.tolerance, "tolerance")

    try:
        ids, balls = to_balls(request.generators)
        exact_balls = integerize(balls, request.generators.scale_exponent) if request.exact else None
        found = enumerate_vertices(
            balls,
            request.generators.dimension,
            KernelSettings().tolerances_for(request.tolerance),
            prune=request.prune,
            min_radius=request.min_radius,
            exact=request.exact,
            exact_balls=exact_balls,
            max_combinations=request.max_combinations,
            workers=1,
        )
    except ApolloError as e:
        validation.raise_error(e.message)

    data_processing = VertexDataProcessing("json", ids)
    return {"response": data_processing.process_response(found, request.generators.dimension)}
