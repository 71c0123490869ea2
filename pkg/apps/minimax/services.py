"""
E_n(|x - x0|^alpha, E) - похибка найкращого рівномірного наближення на E.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial import Chebyshev, Polynomial

from Potentia.exceptions import DomainError, MonotonicityError
from apps.intervals.conf import potentia_setting
from apps.intervals.sets import IntervalSet, chebyshev_grid
from .remez import PowerTarget, RemezEngine

logger = logging.getLogger(__name__)

MONOTONE_SLACK = 1e-12


def is_even_integer(alpha: float) -> bool:
    return float(alpha).is_integer() and int(alpha) % 2 == 0


@dataclass(frozen=True)
class MinimaxProblem:
    set: IntervalSet
    x0: float
    alpha: float
    degree: int

    def __post_init__(self):
        if not self.set.contains(self.x0):
            raise DomainError(f"x0={self.x0!r} is not in E={self.set.to_spec()}")
        if not self.alpha > 0:
            raise DomainError(f"alpha={self.alpha!r} must be positive")
        if self.degree < 0:
            raise DomainError(f"degree={self.degree!r} must be >= 0")

    @property
    def target(self) -> PowerTarget:
        return PowerTarget(self.x0, self.alpha)


@dataclass(frozen=True)
class MinimaxResult:
    degree: int
    error: float
    # (levelled, error) - двостороння оцінка E_n
    levelled: float
    coefficients: Chebyshev = field(repr=False)
    alternation_points: Tuple[float, ...]
    iterations: int

    @property
    def bracket(self) -> Tuple[float, float]:
        return self.levelled, self.error

    def residual(self, problem: MinimaxProblem, x):
        return problem.target(x) - self.coefficients(np.asarray(x, dtype=float))

    def to_row(self) -> dict:
        return {"n": self.degree, "error": self.error, "levelled": self.levelled, "iterations": self.iterations}


def _grid(E: IntervalSet, x0: float, points_per_band: int):
    grid = chebyshev_grid(E, points_per_band)
    band_ids = np.repeat(np.arange(E.m), points_per_band)
    if not np.any(grid == x0):
        pos = int(np.searchsorted(grid, x0))
        grid = np.insert(grid, pos, x0)
        band_ids = np.insert(band_ids, pos, E.band_of(x0))
    return grid, band_ids


def default_points_per_band(E: IntervalSet, degree: int) -> int:
    return int(math.ceil(max(
        potentia_setting("GRID_POINTS") / E.m,
        potentia_setting("GRID_PER_DEGREE") * (degree + 1) / E.m,
    )))


def remez(problem: MinimaxProblem, grid_points_per_band: Optional[int] = None,
          tol: Optional[float] = None) -> MinimaxResult:
    E, n = problem.set, problem.degree
    domain = [E.left, E.right]

    if is_even_integer(problem.alpha) and n >= problem.alpha:
        # f сама є многочленом степеня alpha
        exact = Polynomial([-problem.x0, 1.0]) ** int(problem.alpha)
        logger.info(f"remez n={n}: alpha={problem.alpha} is an even integer <= n, E_n = 0")
        return MinimaxResult(n, 0.0, 0.0, exact.convert(kind=Chebyshev, domain=domain), (), 0)

    tol = potentia_setting("REMEZ_TOL") if tol is None else float(tol)
    if tol < 1e-13:
        raise DomainError(f"tol={tol!r} must be >= 1e-13")
    points = grid_points_per_band or default_points_per_band(E, n)
    if points < 10 * (n + 1) / E.m:
        raise DomainError(f"grid_points_per_band={points} must be >= 10*(n+1)/m = {10 * (n + 1) / E.m:g}")

    grid, band_ids = _grid(E, problem.x0, points)
    engine = RemezEngine(
        problem.target, n, E.carrier, tol,
        max_iter=potentia_setting("REMEZ_MAX_ITER"),
        extended_from=potentia_setting("EXTENDED_PRECISION_DEGREE"),
    )
    ref, error, extrema = engine.run(grid, band_ids)
    result = MinimaxResult(
        degree=n,
        error=error,
        levelled=abs(ref.levelled),
        coefficients=Chebyshev(ref.coefficients, domain=domain),
        alternation_points=tuple(float(x) for x in extrema),
        iterations=engine.iterations,
    )
    logger.info(f"remez n={n} alpha={problem.alpha} x0={problem.x0}: E_n={error:.17g} "
                f"levelled={result.levelled:.17g} iterations={engine.iterations}")
    return result


def check_monotone(rows: Sequence[dict]):
    """
    E_{n+1} <= E_n + 1e-12, перевірене на двосторонніх оцінках:
    нижня оцінка levelled_{n+1} не може перевищувати верхню error_n.
    """
    for prev, cur in zip(rows, rows[1:]):
        lower = cur.get("levelled", cur["error"])
        if lower > prev["error"] + MONOTONE_SLACK:
            raise MonotonicityError(
                f"E_n increased from n={prev['n']} ({prev['error']!r}) to n={cur['n']} "
                f"(levelled {lower!r}, error {cur['error']!r})"
            )


def remez_sweep(E: IntervalSet, x0: float, alpha: float, degrees: Sequence[int],
                grid_points_per_band: Optional[int] = None, tol: Optional[float] = None) -> List[dict]:
    """Рядки {n, error, levelled, iterations} для кожного степеня; порядок як у degrees."""
    from .tasks import remez_degree_task, run_sweep

    degrees = list(degrees)
    if any(b <= a for a, b in zip(degrees, degrees[1:])):
        raise DomainError(f"degrees {degrees} must be strictly increasing")
    jobs = [
        {"spec": E.to_spec(), "x0": x0, "alpha": alpha, "degree": n,
         "grid_points_per_band": grid_points_per_band, "tol": tol}
        for n in degrees
    ]
    rows = run_sweep(remez_degree_task, jobs)
    check_monotone(rows)
    return rows


def en_sequence(E: IntervalSet, x0: float, alpha: float, degrees: Sequence[int],
                grid_points_per_band: Optional[int] = None, tol: Optional[float] = None) -> List[Tuple[int, float]]:
    rows = remez_sweep(E, x0, alpha, degrees, grid_points_per_band, tol)
    return [(row["n"], row["error"]) for row in rows]
