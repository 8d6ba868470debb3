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

from __future__ import annotations

from typing import Any

from pydantic import field_validator, model_validator

from splitcif.exceptions import NotPositiveDefinite
from splitcif.symmat import SymMatrix, cholesky_factor, is_psd
from splitcif.utils import FrozenPydanticBaseModel

PSD_TOLERANCE = 1e-9  # relative tolerance of the PSD checks on the four input matrices
ZERO_THRESHOLD = 1e-14  # a dependent part below this (relative to the pair scale) counts as zero


class SplitPair(FrozenPydanticBaseModel):
    """
    The quadruple (P1d, P1i, P2d, P2i) defining the w-parameterized covariance family

        P1(w) = P1d / w + P1i,   P2(w) = P2d / (1 - w) + P2i,   P(w) = (P1(w)^-1 + P2(w)^-1)^-1.

    Attributes:
        P1d: Dependent (possibly correlated) part of the first covariance.
        P1i: Independent part of the first covariance.
        P2d: Dependent part of the second covariance.
        P2i: Independent part of the second covariance.

    All four must be PSD. In addition P1d + P1i and P2d + P2i must be positive definite: since
    P1d / w >= P1d for w in (0, 1], this makes P1(w) >= P1d + P1i > 0 (and likewise P2(w)) on the
    whole open interval, which is the positive-definiteness assumption the family relies on.
    """

    P1d: SymMatrix
    P1i: SymMatrix
    P2d: SymMatrix
    P2i: SymMatrix

    @field_validator("P1d", "P1i", "P2d", "P2i", mode="before")
    @classmethod
    def coerce_matrix(cls, value: Any) -> SymMatrix:
        """Accept numpy arrays, nested lists and scalars in place of SymMatrix instances."""
        if isinstance(value, SymMatrix):
            return value
        return SymMatrix(entries=value)

    @model_validator(mode="after")
    def check_split_pair(self) -> SplitPair:
        """
        Check dimensions, PSD-ness of each member and positive definiteness of each side.

        Raises:
            ValueError: Naming the offending member or sum.
        """
        members = {"P1d": self.P1d, "P1i": self.P1i, "P2d": self.P2d, "P2i": self.P2i}
        dimensions = {name: matrix.n for name, matrix in members.items()}
        if len(set(dimensions.values())) != 1:
            raise ValueError(f"All members of a SplitPair must share one dimension: {dimensions}.")
        for name, matrix in members.items():
            if not is_psd(matrix, PSD_TOLERANCE):
                raise ValueError(f"{name} is not positive semi-definite.")
        for name, total in (("P1d + P1i", self.P1d + self.P1i), ("P2d + P2i", self.P2d + self.P2i)):
            try:
                cholesky_factor(total)
            except NotPositiveDefinite as error:
                raise ValueError(
                    f"{name} must be positive definite (the two parts share a null vector)."
                ) from error
        return self

    @property
    def n(self) -> int:
        """Return the common dimension."""
        return self.P1d.n

    def scale(self) -> float:
        """Return the largest |entry| over the four members."""
        return max(self.P1d.max_abs(), self.P1i.max_abs(), self.P2d.max_abs(), self.P2i.max_abs())

    def dependent_is_zero(self, side: int) -> bool:
        """Return True if the dependent part of side 1 or 2 is numerically zero."""
        dependent = self.P1d if side == 1 else self.P2d
        return dependent.max_abs() <= ZERO_THRESHOLD * self.scale()

    def swap(self) -> SplitPair:
        """Exchange the two sides; the family of the swapped pair at w equals this one at 1 - w."""
        return SplitPair(P1d=self.P2d, P1i=self.P2i, P2d=self.P1d, P2i=self.P1i)

    def scaled(self, factor: float) -> SplitPair:
        """Return the pair with all four members multiplied by factor > 0."""
        if factor <= 0.0:
            raise ValueError(f"Scale factor must be positive, got {factor}.")
        return SplitPair(
            P1d=self.P1d * factor,
            P1i=self.P1i * factor,
            P2d=self.P2d * factor,
            P2i=self.P2i * factor,
        )
