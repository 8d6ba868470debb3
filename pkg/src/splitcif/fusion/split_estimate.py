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

import numpy as np
from pydantic import field_validator, model_validator

from splitcif.exceptions import DimensionMismatch, NotPositiveDefinite
from splitcif.objective import PSD_TOLERANCE
from splitcif.symmat import SymMatrix, cholesky_factor, is_psd
from splitcif.utils import FrozenPydanticBaseModel


class SplitEstimate(FrozenPydanticBaseModel):
    """
    An estimate whose error covariance is split into two parts.

    Attributes:
        x: State estimate, a vector of length n.
        cov_d: Dependent part, bounding errors possibly correlated with other estimates.
        cov_i: Independent part, covering errors known to be independent of other estimates.
    """

    x: np.ndarray
    cov_d: SymMatrix
    cov_i: SymMatrix

    @field_validator("x", mode="before")
    @classmethod
    def coerce_vector(cls, value: Any) -> np.ndarray:
        """Convert the state to a read-only one-dimensional float64 array."""
        vector = np.array(value, dtype=np.float64).reshape(-1)
        if vector.size == 0 or not np.all(np.isfinite(vector)):
            raise ValueError("x must be a non-empty vector of finite values.")
        vector.setflags(write=False)
        return vector

    @field_validator("cov_d", "cov_i", mode="before")
    @classmethod
    def coerce_matrix(cls, value: Any) -> SymMatrix:
        """Accept arrays and nested lists in place of SymMatrix instances."""
        if isinstance(value, SymMatrix):
            return value
        return SymMatrix(entries=value)

    @model_validator(mode="after")
    def check_estimate(self) -> SplitEstimate:
        """Check dimensions, PSD-ness of both parts and positive definiteness of their sum."""
        if not self.x.size == self.cov_d.n == self.cov_i.n:
            raise DimensionMismatch(
                f"x has length {self.x.size} but cov_d is {self.cov_d.n} x {self.cov_d.n} and "
                f"cov_i is {self.cov_i.n} x {self.cov_i.n}."
            )
        for name, matrix in (("cov_d", self.cov_d), ("cov_i", self.cov_i)):
            if not is_psd(matrix, PSD_TOLERANCE):
                raise ValueError(f"{name} is not positive semi-definite.")
        try:
            cholesky_factor(self.cov_d + self.cov_i)
        except NotPositiveDefinite as error:
            raise ValueError("cov_d + cov_i must be positive definite.") from error
        return self

    @property
    def n(self) -> int:
        """Return the state dimension."""
        return int(self.x.size)

    @property
    def covariance(self) -> SymMatrix:
        """Return the total covariance cov_d + cov_i."""
        return self.cov_d + self.cov_i
