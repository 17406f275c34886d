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
Enumeration of Apollonius diagram vertices over a generator set with more than d+1 balls.

Every (d+1)-subset (or every clique of the neighbor graph when pruning) is solved; a solution
is a diagram vertex when it is not large-negative and no other generator conflicts with it,
i.e. no generator ball overlaps the solution ball. Subsets are solved by a process pool and
merged in canonical order, so the output does not depend on the number of workers.
"""

# Common Python modules
import itertools
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Iterable, List, Optional, Sequence, Tuple

# Numerical modules
import numpy as np
import networkx as nx

# Apollo kernel
from kernel.apollonius import TangencyClass, classify_roots, detect_twin, max_residual
from kernel.errors import (CombinationGuardError, ConcentricPairError, DegenerateNormalError,
                           DegenerateQuadraticError, ImaginaryRootError, InputError, NotSubDimensionalError,
                           RankTooLowError, SingularExactError, USingularError, WrongCountError)
from kernel.exactpred import incircle
from kernel.geometry_types import Ball, BallSet, Tolerances, validate_ball_set
from kernel.subdim import dispatch_solve


logger = logging.getLogger("apollo-kernel")

# Subsets the kernel declines to solve; they simply contribute no vertex
SKIPPED_SUBSET_ERRORS = (RankTooLowError, USingularError, DegenerateQuadraticError, DegenerateNormalError,
                         NotSubDimensionalError)

# State shared with the pool workers, set by _init_worker
_STATE = {}


@dataclass(frozen=True)
class Vertex:
    """Diagram vertex found for the generator subset `members` (0-based indices, ascending)."""
    members: Tuple[int, ...]
    root: str
    center: Tuple[float, ...]
    radius: float
    klass: str
    twin_id: Optional[int]
    residual: float


def _init_worker(balls: List[Ball], exact_balls: Optional[List[Ball]], dimension: int, tol: Tolerances,
                 shift: float, scale: float) -> None:
    _STATE["balls"] = balls
    _STATE["exact_balls"] = exact_balls
    _STATE["dimension"] = dimension
    _STATE["tol"] = tol
    _STATE["shift"] = shift
    _STATE["scale"] = scale
    _STATE["centers"] = np.array([ball.center for ball in balls], dtype=float)
    _STATE["radii"] = np.array([ball.radius for ball in balls], dtype=float)


def _conflicts_float(x: np.ndarray, r: float, members: Sequence[int]) -> bool:
    centers, radii = _STATE["centers"], _STATE["radii"]
    offsets = centers - x
    values = np.einsum("ij,ij->i", offsets, offsets) - (radii + r) ** 2
    values[list(members)] = np.inf
    return bool(np.any(values < -_STATE["tol"].residual_rel * _STATE["scale"] ** 2))


def _conflicts_exact(root, members: Sequence[int], x: np.ndarray, r: float) -> bool:
    exact_balls = _STATE["exact_balls"]
    subset = BallSet(_STATE["dimension"], tuple(exact_balls[index] for index in members))
    member_set = set(members)
    try:
        return any(incircle(subset, root, query)
                   for index, query in enumerate(exact_balls) if index not in member_set)
    except (ImaginaryRootError, SingularExactError, DegenerateQuadraticError) as e:
        logger.debug(f"Exact test of subset {tuple(members)} failed ({e.message}), using floating point.")
        return _conflicts_float(x, r, members)


def _solve_subset(members: Tuple[int, ...]) -> List[Vertex]:
    """Conflict-free, diagram-relevant solutions of one subset (radii still normalized)."""
    tol = _STATE["tol"]
    try:
        subset = validate_ball_set([_STATE["balls"][index] for index in members], _STATE["dimension"])
        outcome = dispatch_solve(subset, tol)
    except SKIPPED_SUBSET_ERRORS as e:
        logger.debug(f"Subset {members} skipped: {e.message}")
        return []
    if outcome.is_imaginary:
        return []
    outcome = detect_twin(classify_roots(outcome, subset, tol))

    vertices = []
    for solution in outcome.solutions:
        if solution.klass == TangencyClass.LARGE_NEGATIVE:
            continue
        x = np.asarray(solution.x)
        if _STATE["exact_balls"] is not None:
            conflict = _conflicts_exact(solution.root, members, x, solution.r)
        else:
            conflict = _conflicts_float(x, solution.r, members)
        if conflict:
            continue
        vertices.append(Vertex(
            members=members,
            root=solution.root.value,
            center=solution.x,
            radius=solution.r + _STATE["shift"],
            klass=solution.klass.value,
            twin_id=solution.twin_id,
            residual=max_residual(subset, x, solution.r, subset.radii),
        ))
    return vertices


def _check_generators(balls: List[Ball], dimension: int) -> None:
    if len(balls) < dimension + 1:
        raise WrongCountError(f"At least {dimension + 1} balls are needed in dimension {dimension}, got {len(balls)}.")
    seen = {}
    for index, ball in enumerate(balls):
        if ball.center in seen:
            raise ConcentricPairError(seen[ball.center], index)
        seen[ball.center] = index


def candidate_subsets(balls: List[Ball], dimension: int, prune: Optional[float] = None,
                      max_combinations: int = 200000) -> List[Tuple[int, ...]]:
    """Subsets of d+1 generator indices in lexicographic order.

    Without pruning these are all combinations; with a prune radius R only cliques of the graph
    joining generators whose gap |x_i - x_j| - r_i - r_j is at most R are kept.

    Raises:
        CombinationGuardError: More than max_combinations subsets would be solved.
    """
    size = dimension + 1
    if prune is None:
        count = math.comb(len(balls), size)
        if count > max_combinations:
            raise CombinationGuardError(
                f"{count} subsets exceed the limit of {max_combinations}, use --prune or --max-combinations.")
        return list(itertools.combinations(range(len(balls)), size))

    graph = nx.Graph()
    graph.add_nodes_from(range(len(balls)))
    centers = np.array([ball.center for ball in balls], dtype=float)
    radii = np.array([ball.radius for ball in balls], dtype=float)
    for i, j in itertools.combinations(range(len(balls)), 2):
        if np.linalg.norm(centers[i] - centers[j]) - radii[i] - radii[j] <= prune:
            graph.add_edge(i, j)

    subsets = []
    for clique in nx.enumerate_all_cliques(graph):
        if len(clique) > size:
            break
        if len(clique) == size:
            subsets.append(tuple(sorted(clique)))
            if len(subsets) > max_combinations:
                raise CombinationGuardError(
                    f"More than {max_combinations} pruned subsets, lower --prune or raise --max-combinations.")
    logger.debug(f"Pruning radius {prune!r} keeps {len(subsets)} of {math.comb(len(balls), size)} subsets.")
    return sorted(subsets)


def _renumber_twins(vertices: List[Vertex]) -> List[Vertex]:
    """Keep twin marks only where both twins survived and number the pairs in output order."""
    counts = {}
    for vertex in vertices:
        if vertex.twin_id is not None:
            counts[vertex.members] = counts.get(vertex.members, 0) + 1

    numbering, result = {}, []
    for vertex in vertices:
        twin_id = None
        if vertex.twin_id is not None and counts[vertex.members] == 2:
            twin_id = numbering.setdefault(vertex.members, len(numbering) + 1)
        result.append(replace(vertex, twin_id=twin_id))
    return result


def _run(subsets: List[Tuple[int, ...]], initargs: tuple, workers: int) -> Iterable[List[Vertex]]:
    if workers <= 1 or len(subsets) < 2:
        _init_worker(*initargs)
        return [_solve_subset(members) for members in subsets]
    chunksize = max(1, len(subsets) // (4 * workers))
    with ProcessPoolExecutor(max_workers=workers, initializer=_init_worker, initargs=initargs) as executor:
        return list(executor.map(_solve_subset, subsets, chunksize=chunksize))


def enumerate_vertices(balls: List[Ball], dimension: int, tol: Optional[Tolerances] = None,
                       prune: Optional[float] = None, min_radius: Optional[float] = None,
                       exact: bool = False, exact_balls: Optional[List[Ball]] = None,
                       max_combinations: int = 200000, workers: int = 1) -> List[Vertex]:
    """All diagram vertices of a generator set.

    Radii are normalized globally before solving (conflicts and tangency do not change under a
    common radius shift) and reported in the original frame.

    Args:
        balls (list): Generators, N >= d+1.
        dimension (int): Space dimension d.
        tol (Tolerances): Kernel tolerances.
        prune (float): Only solve subsets whose generators are pairwise within this gap.
        min_radius (float): Drop vertices with a smaller radius.
        exact (bool): Decide conflicts with the exact predicate on exact_balls.
        exact_balls (list): Integer copies of the generators, required when exact is set.
        max_combinations (int): Guard on the number of subsets.
        workers (int): Number of worker processes.

    Raises:
        CombinationGuardError: Too many subsets.
        InputError: Generators are not a valid input.

    Returns:
        list: Vertices ordered by generator indices, then by root.
    """
    tol = tol or Tolerances()
    _check_generators(balls, dimension)
    if exact and exact_balls is None:
        raise InputError("Exact conflict tests need integer generators.")

    smallest = min(ball.radius for ball in balls)
    shift = -smallest if smallest < 0 else 0
    normalized = [Ball(ball.center, ball.radius + shift) for ball in balls]
    exact_normalized = None
    if exact:
        exact_smallest = min(ball.radius for ball in exact_balls)
        exact_shift = -exact_smallest if exact_smallest < 0 else 0
        exact_normalized = [Ball(ball.center, ball.radius + exact_shift) for ball in exact_balls]

    centers = np.array([ball.center for ball in balls], dtype=float)
    radii = np.array([ball.radius for ball in balls], dtype=float)
    scale = float(np.max(np.abs(centers)) + np.max(np.abs(radii))) or 1.0

    subsets = candidate_subsets(balls, dimension, prune, max_combinations)
    logger.info(f"Solving {len(subsets)} subsets with {workers} worker(s).")
    initargs = (normalized, exact_normalized, dimension, tol, float(shift), scale)

    vertices = []
    for subset_vertices in _run(subsets, initargs, workers):
        for vertex in subset_vertices:
            if min_radius is not None and vertex.radius < min_radius:
                continue
            if vertex.residual > tol.residual_rel * (scale + abs(vertex.radius)):
                logger.warning(f"Vertex of subset {vertex.members} dropped, residual {vertex.residual!r}.")
                continue
            vertices.append(vertex)

    vertices = _renumber_twins(vertices)
    logger.info(f"Found {len(vertices)} diagram vertices.")
    return vertices
