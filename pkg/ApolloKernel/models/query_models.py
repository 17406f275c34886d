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
Data models for generator files, API queries and vertex records.

Documentation: https://fastapi.tiangolo.com/tutorial/body-nested-models/
"""

# Modules used by FastAPI to check data models
from pydantic import BaseModel, Field
from typing_extensions import Literal
from typing import List, Optional


class GeneratorBall(BaseModel):
    id: str = Field(..., examples=["b1"])
    center: List[float] = Field(..., examples=[[0.0, 0.0]])
    radius: float = Field(..., examples=[1.0])

class GeneratorFile(BaseModel):
    dimension: int = Field(..., ge=1, examples=[2])
    scale_exponent: Optional[int] = Field(None, examples=[0])
    balls: List[GeneratorBall] = Field(..., examples=[[
        {"id": "b1", "center": [0.0, 0.0], "radius": 1.0},
        {"id": "b2", "center": [2.0, 0.0], "radius": 1.0},
        {"id": "b3", "center": [1.0, 1.7320508075688772], "radius": 1.0},
    ]])

class SolveQuery(BaseModel):
    generators: GeneratorFile
    recipe: Literal["1", "2", "3", "4", "auto"] = Field("auto", examples=["auto"])
    signs: Optional[str] = Field(None, examples=["+,-,+"])
    all_signs: bool = Field(False, examples=[False])
    preprocess: bool = Field(False, examples=[False])
    tolerance: Optional[float] = Field(None, examples=[1e-9])

class VertexQuery(BaseModel):
    generators: GeneratorFile
    prune: Optional[float] = Field(None, examples=[2.0])
    min_radius: Optional[float] = Field(None, examples=[0.0])
    exact: bool = Field(False, examples=[False])
    max_combinations: int = Field(200000, ge=1, examples=[200000])
    tolerance: Optional[float] = Field(None, examples=[1e-9])

class VertexRecord(BaseModel):
    generator_ids: List[str] = Field(..., examples=[["b1", "b2", "b3"]])
    root: Literal["plus", "minus", "single"] = Field(..., examples=["plus"])
    center: List[float] = Field(..., examples=[[1.0, 0.5773502691896258]])
    radius: float = Field(..., examples=[0.15470053837925146])
    klass: str = Field(..., examples=["positive"])
    twin_id: Optional[int] = Field(None, examples=[1])
    residual: float = Field(..., examples=[2.220446049250313e-16])

class GeneralResponseDict(BaseModel):
    response: dict = Field(None, examples=[{"status": "ok", "solutions": []}])
