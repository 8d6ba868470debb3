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

from pathlib import Path
from typing import Optional

from pydantic import ValidationError, field_validator, model_validator

from splitcif.fusion import SplitEstimate
from splitcif.objective import SplitPair
from splitcif.symmat import SymMatrix
from splitcif.utils import PydanticBaseModel

MATRIX_FIELDS = ("P1d", "P1i", "P2d", "P2i")


class ScenarioFile(PydanticBaseModel):
    """
    JSON input of the command-line interface.

    Attributes:
        n: State dimension.
        P1d: Dependent part of the first covariance, n * n values row-major.
        P1i: Independent part of the first covariance, n * n values row-major.
        P2d: Dependent part of the second covariance, n * n values row-major.
        P2i: Independent part of the second covariance, n * n values row-major.
        x1: First state estimate (required by `fuse`).
        x2: Second state estimate (required by `fuse`).
    """

    n: int
    P1d: list[float]
    P1i: list[float]
    P2d: list[float]
    P2i: list[float]
    x1: Optional[list[float]] = None
    x2: Optional[list[float]] = None

    @field_validator("n")
    @classmethod
    def check_n(cls, value: int) -> int:  # noqa: D102
        if value < 1:
            raise ValueError(f"n must be positive, got {value}.")
        return value

    @model_validator(mode="after")
    def check_scenario(self) -> ScenarioFile:
        """Check array lengths against n and the split-pair conditions on the matrices."""
        for name in MATRIX_FIELDS:
            values = getattr(self, name)
            if len(values) != self.n * self.n:
                raise ValueError(
                    f"{name} must hold n * n = {self.n * self.n} row-major values, "
                    f"got {len(values)}."
                )
        for name in ("x1", "x2"):
            values = getattr(self, name)
            if values is not None and len(values) != self.n:
                raise ValueError(f"{name} must hold n = {self.n} values, got {len(values)}.")
        try:
            self.to_split_pair()
        except ValidationError as error:
            raise ValueError(f"The matrices do not form a valid split pair: {error}") from error
        return self

    def to_split_pair(self) -> SplitPair:
        """Return the SplitPair described by the four row-major matrices."""
        matrices = {
            name: SymMatrix.from_row_major(getattr(self, name), self.n) for name in MATRIX_FIELDS
        }
        return SplitPair(**matrices)

    def to_estimates(self) -> tuple[SplitEstimate, SplitEstimate]:
        """
        Return the two split estimates.

        Raises:
            ValueError: If x1 or x2 is missing.
        """
        if self.x1 is None or self.x2 is None:
            raise ValueError("The scenario must provide both x1 and x2 to be fused.")
        pair = self.to_split_pair()
        return (
            SplitEstimate(x=self.x1, cov_d=pair.P1d, cov_i=pair.P1i),
            SplitEstimate(x=self.x2, cov_d=pair.P2d, cov_i=pair.P2i),
        )


def load_scenario(path: Path) -> ScenarioFile:
    """
    Read and validate a scenario file.

    Raises:
        OSError: If the file cannot be read.
        ValidationError: If the content is not valid JSON or violates the scenario schema.
    """
    return ScenarioFile.model_validate_json(Path(path).read_text())
