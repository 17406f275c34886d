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
Exceptions raised by the Apollo kernel.

Every exception carries an ``exit_code`` used by the command-line front end:
2 parse error, 3 validation or numerical error, 4 combination guard, 5 unsupported input.
"""


class ApolloError(Exception):
    """Base class of all kernel errors."""
    exit_code = 1

    def __init__(self, message: str) -> None:
        super().__init__(message)
        self.message = message


#
# Input parsing and validation
#

class InputParseError(ApolloError):
    exit_code = 2


class InputError(ApolloError):
    exit_code = 3


class WrongCountError(InputError):
    pass


class DimensionMismatchError(InputError):
    pass


class ConcentricPairError(InputError):
    def __init__(self, first: int, second: int) -> None:
        super().__init__(f"Balls {first} and {second} are concentric.")
        self.first = first
        self.second = second


class NonFiniteInputError(InputError):
    pass


class InvalidSignSetError(InputError):
    pass


class InvalidTolerancesError(InputError):
    pass


class NonIntegerInputError(InputError):
    pass


class DuplicateIdError(InputError):
    pass


class RequiresNonNegativeRadiiError(InputError):
    pass


#
# Numerical failures
#

class NumericalError(ApolloError):
    exit_code = 3


class SingularError(NumericalError):
    pass


class SubDimensionalError(NumericalError):
    """Raised when rank(V) < d; ``rank`` tells callers whether the
    sub-dimensional solver applies."""

    def __init__(self, rank: int, det: float) -> None:
        super().__init__(f"Matrix V is singular (rank {rank}, det {det!r}).")
        self.rank = rank
        self.det = det


class NotSubDimensionalError(NumericalError):
    pass


class DegenerateNormalError(NumericalError):
    pass


class USingularError(NumericalError):
    pass


class DegenerateQuadraticError(NumericalError):
    pass


class SingularExactError(NumericalError):
    pass


class NegativeRadicandError(NumericalError):
    pass


class ImaginaryRootError(NumericalError):
    pass


#
# Guards and unsupported configurations
#

class CombinationGuardError(ApolloError):
    exit_code = 4


class UnsupportedDimensionError(ApolloError):
    exit_code = 5


class RankTooLowError(UnsupportedDimensionError):
    pass


class SignSetTooLargeError(UnsupportedDimensionError):
    pass
