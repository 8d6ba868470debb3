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

"""Search strategies locating the minimizer of ln det P(w) inside a bracket."""
from __future__ import annotations

from abc import ABC, abstractmethod
from typing import NamedTuple

from loguru import logger
from scipy import optimize

from splitcif.exceptions import MaxIterExceeded
from splitcif.objective import SplitPair, d1_logdet, logdet_objective
from splitcif.optimizer.options import OptimizeOptions


class SearchOutcome(NamedTuple):
    """Result of a search inside a bracket."""

    w: float
    iterations: int
    bracket_history: list[tuple[float, float]]


class WSearch(ABC):
    """
    Base class of the strategies searching [lower, upper] for the minimizer of ln det P(w).

    Args:
        pair: The split pair whose objective is minimized.
        options: Tolerances and iteration budget.
    """

    def __init__(self, pair: SplitPair, options: OptimizeOptions):
        self._pair = pair
        self._options = options

    @abstractmethod
    def search(self, lower: float, upper: float) -> SearchOutcome:
        """
        Locate the minimizer inside [lower, upper].

        Raises:
            MaxIterExceeded: If the iteration budget runs out before the bracket is narrow enough.
        """


class BisectionSearch(WSearch):
    """
    Bisection on the sign of d/dw ln det P.

    ln det P(w) is convex, so its derivative is non-decreasing and the sign of the derivative at
    the midpoint tells which half holds the minimizer. The caller guarantees d1(lower) < 0 and
    d1(upper) > 0.
    """

    def search(self, lower: float, upper: float) -> SearchOutcome:  # noqa: D102
        history = [(lower, upper)]
        iterations = 0
        while upper - lower > self._options.w_tol:
            if iterations >= self._options.max_iter:
                raise MaxIterExceeded(
                    f"Bisection bracket [{lower:.17g}, {upper:.17g}] still wider than "
                    f"w_tol={self._options.w_tol} after {iterations} iterations."
                )
            iterations += 1
            middle = 0.5 * (lower + upper)
            slope = d1_logdet(self._pair, middle)
            if slope > 0.0:
                upper = middle
            elif slope < 0.0:
                lower = middle
            else:
                lower = upper = middle
            history.append((lower, upper))
        return SearchOutcome(
            w=0.5 * (lower + upper), iterations=iterations, bracket_history=history
        )


class BoundedSearch(WSearch):
    """Derivative-free bounded Brent minimization (golden section with parabolic steps)."""

    def search(self, lower: float, upper: float) -> SearchOutcome:  # noqa: D102
        result = optimize.minimize_scalar(
            lambda w: logdet_objective(self._pair, w),
            bounds=(lower, upper),
            method="bounded",
            options={"xatol": self._options.w_tol, "maxiter": self._options.max_iter},
        )
        if not result.success:
            raise MaxIterExceeded(f"Bounded search did not converge: {result.message}")
        logger.debug(f"Bounded search converged to w={result.x:.17g} in {result.nfev} evaluations.")
        return SearchOutcome(
            w=float(result.x),
            iterations=int(result.get("nit", result.nfev)),
            bracket_history=[],
        )
