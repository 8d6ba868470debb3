# Copyright 2025 InstaDeep Ltd
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""
Minimization of det P(w) over w.

det P(w) > 0 and ln is strictly increasing, so det P and ln det P share their minimizer; the
search works on ln det P, whose convexity in w makes the sign of its derivative a reliable
bisection criterion.
"""
from __future__ import annotations

from typing import NamedTuple, Optional

import numpy as np
from loguru import logger
from numpy.linalg import LinAlgError
from numpy.typing import ArrayLike, NDArray

from splitcif.exceptions import NotPositiveDefinite
from splitcif.objective import SplitPair, d1_logdet, logdet_objective
from splitcif.optimizer.options import OptimizeOptions, OptimizeResult, Status
from splitcif.optimizer.search_factory import WSearchFactory
from splitcif.optimizer.search_strategies import BoundedSearch, SearchOutcome

_GRID_CHUNK_ENTRIES = 1 << 20


class GridScanResult(NamedTuple):
    """Best grid point and its objective ln det P."""

    w_best: float
    objective: float


def _stacked_logdet(stack: NDArray[np.floating]) -> NDArray[np.floating]:
    try:
        factors = np.linalg.cholesky(stack)
    except LinAlgError as error:
        raise NotPositiveDefinite(f"Family is not positive definite: {error}") from error
    return 2.0 * np.sum(np.log(np.diagonal(factors, axis1=1, axis2=2)), axis=1)


def logdet_grid(pair: SplitPair, ws: ArrayLike) -> NDArray[np.floating]:
    """
    Evaluate ln det P(w) on many weights at once.

    The weights are processed in chunks; within a chunk P1(w), P2(w) and P1(w) + P2(w) are
    stacked and factorized by a single batched Cholesky call.

    Args:
        pair: The split pair.
        ws: One-dimensional array of weights in (0, 1).

    Raises:
        ValueError: If a weight lies outside (0, 1).
        NotPositiveDefinite: If the family is not positive definite at one of the weights.
    """
    weights = np.asarray(ws, dtype=np.float64)
    if weights.ndim != 1:
        raise ValueError(f"Weights must form a one-dimensional array, got shape {weights.shape}.")
    if np.any(weights <= 0.0) or np.any(weights >= 1.0):
        raise ValueError("All weights must lie in the open interval (0, 1).")

    chunk = max(1, _GRID_CHUNK_ENTRIES // (pair.n * pair.n))
    values = np.empty(weights.size, dtype=np.float64)
    for start in range(0, weights.size, chunk):
        w = weights[start : start + chunk, None, None]
        p1 = pair.P1d.array / w + pair.P1i.array
        p2 = pair.P2d.array / (1.0 - w) + pair.P2i.array
        values[start : start + chunk] = (
            _stacked_logdet(p1) + _stacked_logdet(p2) - _stacked_logdet(p1 + p2)
        )
    return values


def grid_scan(pair: SplitPair, samples: int, delta: float = 1e-6) -> GridScanResult:
    """
    Brute-force minimization of ln det P(w) over `samples` equally spaced points of
    [delta, 1 - delta]. Ties resolve to the smallest w.

    Raises:
        ValueError: If samples < 3 or delta is outside (0, 0.5).
        NotPositiveDefinite: If the family is not positive definite on the grid.
    """
    if samples < 3:
        raise ValueError(f"A grid scan needs at least 3 samples, got {samples}.")
    if not 0.0 < delta < 0.5:
        raise ValueError(f"delta must lie in (0, 0.5), got {delta}.")
    weights = np.linspace(delta, 1.0 - delta, samples)
    values = logdet_grid(pair, weights)
    best = int(np.argmin(values))
    return GridScanResult(w_best=float(weights[best]), objective=float(values[best]))


def _d1_at_solution(pair: SplitPair, w: float) -> float:
    """Return d/dw ln det P at w, from a central difference when the trace formula fails."""
    try:
        return d1_logdet(pair, w)
    except LinAlgError as error:
        logger.debug(f"d1 unavailable at w={w} ({error}); using a central difference.")
    step = 1e-5 * min(w, 1.0 - w)
    return (logdet_objective(pair, w + step) - logdet_objective(pair, w - step)) / (2.0 * step)


def _build_result(
    pair: SplitPair,
    w: float,
    status: Status,
    method: str,
    iterations: int = 0,
    bracket_history: Optional[list[tuple[float, float]]] = None,
) -> OptimizeResult:
    objective = logdet_objective(pair, w)
    return OptimizeResult(
        w_star=w,
        objective_logdet=objective,
        objective_det=float(np.exp(objective)),
        status=status,
        iterations=iterations,
        d1_at_solution=_d1_at_solution(pair, w),
        method=method,
        bracket_history=bracket_history or [],
    )


def _status_from_position(w: float, lower: float, upper: float, options: OptimizeOptions) -> Status:
    slack = max(10.0 * options.w_tol, 1e-8)
    if w - lower <= slack:
        return Status.LOWER_BOUNDARY
    if upper - w <= slack:
        return Status.UPPER_BOUNDARY
    return Status.INTERIOR


def _is_flat(pair: SplitPair, lower: float, upper: float, options: OptimizeOptions) -> bool:
    probe = logdet_grid(pair, np.linspace(lower, upper, options.probe_samples))
    variation = float(np.max(probe) - np.min(probe))
    return variation <= options.flat_tol * (1.0 + float(np.max(np.abs(probe))))


def minimize_w(pair: SplitPair, options: Optional[OptimizeOptions] = None) -> OptimizeResult:
    """
    Find w in [delta, 1 - delta] minimizing det P(w).

    The search proceeds as follows:

    1. Fast paths: a zero P1d makes the objective increasing (minimum at delta), a zero P2d
       makes it decreasing (minimum at 1 - delta), and both zero make it constant (w = 0.5).
    2. Flat probe: if ln det P varies by at most flat_tol (relative) over a probe grid, the
       objective is treated as constant and w = 0.5 is returned.
    3. Boundary signs: d1(delta) >= 0 gives a lower-boundary minimum and d1(1 - delta) <= 0 an
       upper-boundary one.
    4. Otherwise the configured search strategy brackets the interior minimizer. If a derivative
       evaluation fails, the derivative-free bounded search takes over.

    Args:
        pair: The split pair.
        options: Search options; defaults to OptimizeOptions().

    Raises:
        NotPositiveDefinite: If the family cannot be evaluated.
        MaxIterExceeded: If the bracket cannot be narrowed to w_tol within max_iter iterations.
        NotImplementedError: If options.method is not a registered strategy.
    """
    options = options or OptimizeOptions()
    lower, upper = options.delta, 1.0 - options.delta

    first_zero, second_zero = pair.dependent_is_zero(1), pair.dependent_is_zero(2)
    if first_zero and second_zero:
        logger.debug("Both dependent parts vanish: the objective does not depend on w.")
        return _build_result(pair, 0.5, Status.FLAT, "fast_path")
    if first_zero:
        logger.debug("P1d vanishes: the objective increases with w.")
        return _build_result(pair, lower, Status.LOWER_BOUNDARY, "fast_path")
    if second_zero:
        logger.debug("P2d vanishes: the objective decreases with w.")
        return _build_result(pair, upper, Status.UPPER_BOUNDARY, "fast_path")

    if _is_flat(pair, lower, upper, options):
        logger.debug(f"Objective varies by less than flat_tol={options.flat_tol} over the probe.")
        return _build_result(pair, 0.5, Status.FLAT, "probe")

    strategy = WSearchFactory.get_strategy(options.method)(pair, options)
    try:
        if d1_logdet(pair, lower) >= 0.0:
            return _build_result(pair, lower, Status.LOWER_BOUNDARY, options.method)
        if d1_logdet(pair, upper) <= 0.0:
            return _build_result(pair, upper, Status.UPPER_BOUNDARY, options.method)
        outcome = strategy.search(lower, upper)
        status = Status.INTERIOR
        method = options.method
    except LinAlgError as error:
        if isinstance(strategy, BoundedSearch):
            raise
        logger.debug(f"Derivative evaluation failed ({error}); falling back to bounded search.")
        outcome = BoundedSearch(pair, options).search(lower, upper)
        status = _status_from_position(outcome.w, lower, upper, options)
        method = "bounded"
    return _finish(pair, outcome, status, method)


def _finish(pair: SplitPair, outcome: SearchOutcome, status: Status, method: str) -> OptimizeResult:
    return _build_result(
        pair,
        outcome.w,
        status,
        method,
        iterations=outcome.iterations,
        bracket_history=outcome.bracket_history,
    )
