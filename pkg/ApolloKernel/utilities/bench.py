#! /usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Timing of the full-rank recipes over seeded random ball sets.
"""

# Common Python modules
import csv
import io
import logging
import time
from typing import Dict, List, Optional, Sequence

# Numerical modules
import numpy as np
import scipy.optimize

# Apollo kernel
from kernel.apollonius import max_residual
from kernel.errors import NumericalError
from kernel.geometry_types import Tolerances
from kernel.oracle import Conditioning, random_ball_set
from kernel.subdim import FULL_RANK_SOLVERS


logger = logging.getLogger("apollo-kernel")

HEADER = ["d", "recipe", "ns_per_solve", "residual_p50", "residual_p99"]


def _relative_residuals(ball_set, outcome) -> List[float]:
    scale = ball_set.scale
    return [max_residual(ball_set, np.asarray(solution.x), solution.r, ball_set.radii) / (scale + abs(solution.r))
            for solution in outcome.solutions]


def scaling_exponent(dims: Sequence[int], times: Sequence[float]) -> float:
    """Exponent k of the fit t = a + b * d^k with a constant per-call overhead 0 <= a < min(t).

    The overhead is chosen to minimize the residual of the log-log line through t - a. With
    fewer than three distinct dimensions it cannot be separated and the plain log-log slope
    is returned.
    """
    log_d = np.log(np.asarray(dims, dtype=float))
    times = np.asarray(times, dtype=float)
    if len(set(dims)) < 3:
        return float(np.polyfit(log_d, np.log(times), 1)[0])

    def misfit(overhead: float) -> float:
        residuals = np.polyfit(log_d, np.log(times - overhead), 1, full=True)[1]
        return float(residuals[0]) if len(residuals) else 0.0

    best = scipy.optimize.minimize_scalar(misfit, bounds=(0.0, 0.99 * float(times.min())), method="bounded")
    logger.debug(f"Fitted per-call overhead {best.x:.0f} ns.")
    return float(np.polyfit(log_d, np.log(times - best.x), 1)[0])


def run_bench(dims: Sequence[int], trials: int, seed: int = 0, tol: Optional[Tolerances] = None) -> str:
    """CSV table with the time per solve and the residual percentiles of every recipe and dimension.

    When at least two dimensions were timed, a second table (after a blank line) lists the
    scaling exponent of time against dimension for every recipe, see scaling_exponent.

    Args:
        dims (list): Dimensions to time.
        trials (int): Random well-separated sets per dimension.
        seed (int): Seed of the first set; set k uses seed + k.
        tol (Tolerances): Kernel tolerances.

    Returns:
        str: CSV document.
    """
    tol = tol or Tolerances()
    output = io.StringIO()
    writer = csv.writer(output, lineterminator="\n")
    writer.writerow(HEADER)
    if trials <= 0:
        return output.getvalue()

    timings: Dict[str, List[tuple]] = {recipe: [] for recipe in FULL_RANK_SOLVERS}
    for d in dims:
        ball_sets = [random_ball_set(d, seed + k, Conditioning.WELL_SEPARATED) for k in range(trials)]
        for recipe, solver in FULL_RANK_SOLVERS.items():
            outcomes = []
            start = time.perf_counter_ns()
            for ball_set in ball_sets:
                try:
                    outcomes.append((ball_set, solver(ball_set, tol)))
                except NumericalError as e:
                    logger.debug(f"Recipe {recipe} failed for d={d}: {e.message}")
            elapsed = time.perf_counter_ns() - start

            ns_per_solve = elapsed / len(ball_sets)
            residuals = [value for ball_set, outcome in outcomes for value in _relative_residuals(ball_set, outcome)]
            p50, p99 = (np.percentile(residuals, [50, 99]) if residuals else (float("nan"), float("nan")))
            writer.writerow([d, recipe, format(ns_per_solve, ".17g"), format(float(p50), ".17g"),
                             format(float(p99), ".17g")])
            timings[recipe].append((d, ns_per_solve))
            logger.info(f"d={d} recipe {recipe}: {ns_per_solve:.0f} ns per solve.")

    if len(set(dims)) >= 2:
        output.write("\n")
        writer.writerow(["recipe", "exponent"])
        for recipe, points in timings.items():
            exponent = scaling_exponent([d for d, _ in points], [ns for _, ns in points])
            writer.writerow([recipe, format(exponent, ".17g")])
    return output.getvalue()
