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
The w-parameterized covariance family

    P1(w) = P1d / w + P1i,   P2(w) = P2d / (1 - w) + P2i,   P(w) = (P1(w)^-1 + P2(w)^-1)^-1,

evaluated on the open interval 0 < w < 1.
"""
from __future__ import annotations

from functools import cached_property
from typing import NamedTuple

import numpy as np
from numpy.typing import NDArray
from scipy import linalg

from splitcif.exceptions import NotPositiveDefinite
from splitcif.objective.split_pair import SplitPair
from splitcif.symmat import (
    SymMatrix,
    cholesky_factor,
    logdet_from_factor,
    spd_inverse,
)


def check_open_unit(w: float) -> None:
    """Raise ValueError unless 0 < w < 1."""
    if not 0.0 < w < 1.0:
        raise ValueError(f"w must lie in the open interval (0, 1), got {w}.")


class FamilyValue(NamedTuple):
    """The two weighted covariances and their combination at one w."""

    P1: SymMatrix
    P2: SymMatrix
    P: SymMatrix


class SplitFamilyPoint:
    """
    Dense arrays of the family at a single w.

    The Cholesky factors of P1, P2 and P3 = P1 + P2 are computed at construction, so building a
    point is also the positive-definiteness check. The explicit inverses are computed lazily,
    once each, since every trace term of the derivatives reuses them.

    Args:
        pair: The split pair defining the family.
        w: Weight in (0, 1).

    Raises:
        ValueError: If w is outside (0, 1).
        NotPositiveDefinite: If P1(w), P2(w) or P1(w) + P2(w) fails Cholesky.
    """

    def __init__(self, pair: SplitPair, w: float):
        check_open_unit(w)
        self.w = float(w)
        self.D1 = pair.P1d.array / self.w
        self.D2 = pair.P2d.array / (1.0 - self.w)
        self.P1 = self.D1 + pair.P1i.array
        self.P2 = self.D2 + pair.P2i.array
        self.P3 = self.P1 + self.P2
        self.factor1 = cholesky_factor(self.P1)
        self.factor2 = cholesky_factor(self.P2)
        self.factor3 = cholesky_factor(self.P3)

    @cached_property
    def P1_inv(self) -> NDArray[np.floating]:
        """Explicit inverse of P1."""
        return spd_inverse(self.P1)

    @cached_property
    def P2_inv(self) -> NDArray[np.floating]:
        """Explicit inverse of P2."""
        return spd_inverse(self.P2)

    @cached_property
    def P3_inv(self) -> NDArray[np.floating]:
        """Explicit inverse of P3 = P1 + P2."""
        return spd_inverse(self.P3)

    @cached_property
    def P(self) -> NDArray[np.floating]:
        """P = P1 (P1 + P2)^-1 P2, symmetrized."""
        combined = self.P1 @ linalg.cho_solve(self.factor3, self.P2, check_finite=False)
        return 0.5 * (combined + combined.T)

    def logdet(self) -> float:
        """ln det P = ln det P1 + ln det P2 - ln det (P1 + P2)."""
        return (
            logdet_from_factor(self.factor1)
            + logdet_from_factor(self.factor2)
            - logdet_from_factor(self.factor3)
        )


def eval_family(pair: SplitPair, w: float) -> FamilyValue:
    """
    Evaluate P1(w), P2(w) and P(w).

    Raises:
        ValueError: If w is outside (0, 1).
        NotPositiveDefinite: If P1(w) or P2(w) is not positive definite.
    """
    point = SplitFamilyPoint(pair, w)
    return FamilyValue(
        P1=SymMatrix(entries=point.P1),
        P2=SymMatrix(entries=point.P2),
        P=SymMatrix(entries=point.P),
    )


def logdet_objective(pair: SplitPair, w: float) -> float:
    """Return ln det P(w) from the Cholesky factors of P1(w), P2(w) and P1(w) + P2(w)."""
    return SplitFamilyPoint(pair, w).logdet()


def boundary_limit(pair: SplitPair, side: int) -> SymMatrix:
    """
    Return the limit of P(w) as w tends to 0 (side=0) or 1 (side=1).

    The limit exists in closed form when the dependent part whose weight vanishes is zero or
    positive definite:

    - w -> 0 with P1d = 0: P1 stays P1i, so P(0) = (P1i^-1 + (P2d + P2i)^-1)^-1.
    - w -> 0 with P1d > 0: P1(w)^-1 -> 0, so P(0) = P2d + P2i.

    The w -> 1 limit is the w -> 0 limit of the swapped pair.

    Raises:
        ValueError: If side is not 0 or 1.
        NotPositiveDefinite: If the vanishing-weight dependent part is singular but non-zero,
            where the limit depends on its null space.
    """
    if side not in (0, 1):
        raise ValueError(f"side must be 0 or 1, got {side}.")
    if side == 1:
        return boundary_limit(pair.swap(), 0)

    remaining = (pair.P2d + pair.P2i).array
    if pair.dependent_is_zero(1):
        factor = cholesky_factor(pair.P1i + pair.P2d + pair.P2i)
        limit = pair.P1i.array @ linalg.cho_solve(factor, remaining, check_finite=False)
        return SymMatrix(entries=limit)
    try:
        cholesky_factor(pair.P1d)
    except NotPositiveDefinite as error:
        raise NotPositiveDefinite(
            "The boundary limit is only available for a zero or positive definite dependent "
            "part; this one is singular but non-zero."
        ) from error
    return SymMatrix(entries=remaining)
