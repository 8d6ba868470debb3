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
w-parameterized matrix families and the Jacobi-formula check

    d/dw ln det M(w) = tr{M(w)^-1 dM/dw}.
"""
from __future__ import annotations

from abc import ABC, abstractmethod
from collections.abc import Callable, Sequence

import numpy as np
from numpy.typing import NDArray

from splitcif.objective import SplitPair, check_open_unit
from splitcif.symmat import chol_logdet, spd_solve

ArrayFunction = Callable[[float], NDArray[np.floating]]


class MatrixFamily(ABC):
    """
    A symmetric matrix-valued function of a scalar, together with its analytic derivative.

    Implementations only need to be defined (and positive definite) in a neighborhood of the
    points where they are checked.
    """

    @abstractmethod
    def value(self, w: float) -> NDArray[np.floating]:
        """Return M(w)."""

    @abstractmethod
    def derivative(self, w: float) -> NDArray[np.floating]:
        """Return dM/dw at w."""


class CallableMatrixFamily(MatrixFamily):
    """A family given by two plain functions, e.g. `CallableMatrixFamily(np.diag..., ...)`."""

    def __init__(self, value: ArrayFunction, derivative: ArrayFunction):
        self._value = value
        self._derivative = derivative

    def value(self, w: float) -> NDArray[np.floating]:  # noqa: D102
        return np.asarray(self._value(w), dtype=np.float64)

    def derivative(self, w: float) -> NDArray[np.floating]:  # noqa: D102
        return np.asarray(self._derivative(w), dtype=np.float64)


class SplitCovarianceFamily(MatrixFamily):
    """
    One side of a split pair: P1(w) = P1d / w + P1i (side 1) or P2(w) = P2d / (1 - w) + P2i
    (side 2).
    """

    def __init__(self, pair: SplitPair, side: int):
        if side not in (1, 2):
            raise ValueError(f"side must be 1 or 2, got {side}.")
        self.side = side
        self._dependent = (pair.P1d if side == 1 else pair.P2d).array
        self._independent = (pair.P1i if side == 1 else pair.P2i).array

    def _weight(self, w: float) -> float:
        check_open_unit(w)
        return w if self.side == 1 else 1.0 - w

    def value(self, w: float) -> NDArray[np.floating]:  # noqa: D102
        return self._dependent / self._weight(w) + self._independent

    def derivative(self, w: float) -> NDArray[np.floating]:  # noqa: D102
        weight = self._weight(w)
        sign = -1.0 if self.side == 1 else 1.0
        return sign * self._dependent / weight**2


def jacobi_residual(family: MatrixFamily, w: float, h: float) -> float:
    """
    Compare a central difference of ln det M with the analytic trace tr{M^-1 dM/dw}.

    Args:
        family: Matrix family, positive definite on [w - h, w + h].
        w: Point of evaluation.
        h: Central-difference half step.

    Returns:
        |(ln det M(w + h) - ln det M(w - h)) / 2h - tr{M(w)^-1 M'(w)}|.

    Raises:
        ValueError: If h is not positive.
        NotPositiveDefinite: If the family is not positive definite at one of the three points.
    """
    if h <= 0.0:
        raise ValueError(f"Step must be positive, got {h}.")
    finite_difference = (chol_logdet(family.value(w + h)) - chol_logdet(family.value(w - h))) / (
        2.0 * h
    )
    analytic = float(np.trace(spd_solve(family.value(w), family.derivative(w))))
    return abs(finite_difference - analytic)


def jacobi_convergence(
    family: MatrixFamily, w: float, steps: Sequence[float] | None = None
) -> list[float]:
    """
    Return the observed convergence orders of jacobi_residual between successive steps.

    A central difference has order 2, so the returned values approach 2 for as long as the
    residual is dominated by truncation rather than rounding.

    Args:
        family: Matrix family.
        w: Point of evaluation.
        steps: Decreasing steps; defaults to (1e-2, 1e-3, 1e-4) times min(w, 1 - w).

    Returns:
        log(r_k / r_k+1) / log(h_k / h_k+1) for consecutive pairs of steps (NaN where a
        residual is exactly zero).
    """
    if steps is None:
        base = min(w, 1.0 - w) if 0.0 < w < 1.0 else 1.0
        steps = [factor * base for factor in (1e-2, 1e-3, 1e-4)]
    if len(steps) < 2:
        raise ValueError("At least two steps are needed to estimate an order.")
    residuals = [jacobi_residual(family, w, h) for h in steps]
    orders = []
    for (h_coarse, r_coarse), (h_fine, r_fine) in zip(
        zip(steps, residuals), zip(steps[1:], residuals[1:])
    ):
        if r_coarse == 0.0 or r_fine == 0.0:
            orders.append(float("nan"))
            continue
        orders.append(float(np.log(r_coarse / r_fine) / np.log(h_coarse / h_fine)))
    return orders
