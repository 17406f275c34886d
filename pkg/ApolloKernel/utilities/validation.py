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
Definition of functions to ease validation of API request values.
"""

# FastAPI modules
from fastapi import HTTPException

# Apollo kernel
from kernel.errors import ApolloError
from kernel.geometry_types import SignSet


def is_sign_set(text: str) -> bool:
    """Validation of a given string if it is a comma separated list of tangency signs.

    Args:
        text (str): String to validate.

    Returns:
        bool: True if given string parses as a sign set, False otherwise.
    """
    try:
        SignSet.parse(text)
        return True
    except ApolloError:
        pass
    return False


def is_tolerance(value: float) -> bool:
    return 0.0 < value < 1.0


def validate(variable, type: str) -> bool:
    """Universal validation function that raise HTTPException if the variable is not valid.

    Args:
        variable (any type): Variable that should be validated.
        type (str): Required type of the variable. Available options: signs, tolerance

    Raises:
        HTTPException (status 400): Details about the validations if the variable is not valid.

    Returns:
        bool: True if given variable is valid, False othervise.
    """
    # Default validation response
    validation_result = False
    validation_fail_detail = ""

    # Validate given variable according to the requested type
    if type == "signs":
        validation_result = is_sign_set(variable)
        validation_fail_detail = f"Given sign set '{variable}' is not a comma separated list of '+' and '-'."
    elif type == "tolerance":
        validation_result = is_tolerance(variable)
        validation_fail_detail = f"Given tolerance '{variable}' must lie in the open interval (0, 1)."

    # Raise HTTPException if the validation failed
    if not validation_result:
        raise_error(validation_fail_detail)

    return validation_result


def raise_error(detail: str) -> None:
    """Raise HTTPException with status 400 and the given detail."""
    raise HTTPException(
        status_code = 400,
        detail = detail
    )
