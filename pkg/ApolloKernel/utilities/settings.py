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
Singleton holding the runtime configuration shared by the CLI and the API: kernel tolerances
and the number of worker processes. The singleton pattern follows
https://refactoring.guru/design-patterns/singleton/python/example.
"""

# Common Python modules
import logging
import os
from dataclasses import replace
from typing import Optional

# Apollo kernel
from kernel.geometry_types import Tolerances


logger = logging.getLogger("apollo-kernel")


class SingletonMeta(type):
    """
    Meta class to provide singleton functionality.
    """
    _instances = {}

    def __call__(cls, *args, **kwargs):
        if cls not in cls._instances:
            instance = super().__call__(*args, **kwargs)
            cls._instances[cls] = instance
        return cls._instances[cls]


def workers_from_environment() -> int:
    """Worker count from APOLLO_THREADS, otherwise the number of CPUs (at least 1)."""
    value = os.environ.get("APOLLO_THREADS")
    if value:
        try:
            return max(1, int(value))
        except ValueError:
            logger.warning(f"Ignoring APOLLO_THREADS='{value}', it is not an integer.")
    return max(1, os.cpu_count() or 1)


class KernelSettings(metaclass=SingletonMeta):
    """Process-wide settings available as a singleton to ease access from routers and commands."""
    tolerances: Tolerances = Tolerances()
    workers: int = 1

    def __init__(self) -> None:
        self.reset()

    def reset(self) -> None:
        """Restore defaults (tolerances of the kernel, workers from the environment)."""
        self.tolerances = Tolerances()
        self.workers = workers_from_environment()

    def configure(self, residual_rel: Optional[float] = None, workers: Optional[int] = None) -> None:
        """Override the residual tolerance and/or the worker count.

        Raises:
            InvalidTolerancesError: residual_rel is outside (0, 1).
        """
        if residual_rel is not None:
            self.tolerances = replace(self.tolerances, residual_rel=residual_rel)
        if workers is not None:
            self.workers = max(1, int(workers))

    def tolerances_for(self, residual_rel: Optional[float] = None) -> Tolerances:
        """Active tolerances, optionally with a per-request residual tolerance."""
        if residual_rel is None:
            return self.tolerances
        return replace(self.tolerances, residual_rel=residual_rel)
