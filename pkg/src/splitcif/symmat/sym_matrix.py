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

from typing import Any, Union

import numpy as np
from numpy.typing import NDArray
from pydantic import field_validator

from splitcif.utils import FrozenPydanticBaseModel


class SymMatrix(FrozenPydanticBaseModel):
    """
    Dense real symmetric matrix of dimension n x n.

    The entries are symmetrized at construction, M <- (M + M^T) / 2, rather than rejected when
    slightly asymmetric: products such as P^-1 D P^-1 lose symmetry in the last bits and the
    symmetrized matrix keeps the downstream Cholesky factorizations stable. The stored array is
    read-only.

    Attributes:
        entries: n x n float64 array (a scalar is accepted and stored as a 1 x 1 matrix).
    """

    entries: np.ndarray

    @field_validator("entries", mode="before")
    @classmethod
    def symmetrize(cls, value: Any) -> np.ndarray:
        """
        Convert the input to a read-only, symmetrized float64 square array.

        Raises:
            ValueError: If the input is not a non-empty square matrix of finite values.
        """
        if isinstance(value, SymMatrix):
            return value.entries
        array = np.array(value, dtype=np.float64)
        if array.ndim == 0:
            array = array.reshape(1, 1)
        if array.ndim != 2 or array.shape[0] != array.shape[1] or array.shape[0] < 1:
            raise ValueError(
                f"SymMatrix entries must form a non-empty square matrix, got shape {array.shape}."
            )
        if not np.all(np.isfinite(array)):
            raise ValueError("SymMatrix entries must be finite.")
        array = 0.5 * (array + array.T)
        array.setflags(write=False)
        return array

    @property
    def n(self) -> int:
        """Return the dimension of the matrix."""
        return int(self.entries.shape[0])

    @property
    def array(self) -> NDArray[np.floating]:
        """Return the read-only entries, without copying."""
        return self.entries

    def max_abs(self) -> float:
        """Return max |entry|, the scale used by the relative tolerances."""
        return float(np.max(np.abs(self.entries)))

    def to_np_array(self) -> NDArray[np.floating]:
        """Return a writable copy of the entries."""
        return np.array(self.entries)

    @classmethod
    def from_np_array(cls, np_array: NDArray[np.floating]) -> SymMatrix:
        """Return an instance of the class initialized by a numpy array."""
        return cls(entries=np_array)

    @classmethod
    def from_row_major(cls, values: list[float], n: int) -> SymMatrix:
        """Return an instance built from n*n values stored row-major."""
        if len(values) != n * n:
            raise ValueError(f"Expected {n * n} row-major values for n={n}, got {len(values)}.")
        return cls(entries=np.asarray(values, dtype=np.float64).reshape(n, n))

    @classmethod
    def identity(cls, n: int) -> SymMatrix:
        """Return the n x n identity."""
        return cls(entries=np.eye(n))

    @classmethod
    def zeros(cls, n: int) -> SymMatrix:
        """Return the n x n zero matrix."""
        return cls(entries=np.zeros((n, n)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SymMatrix):
            return NotImplemented
        return bool(np.array_equal(self.entries, other.entries))

    def __add__(self, other: SymMatrix) -> SymMatrix:
        return SymMatrix(entries=self.entries + other.entries)

    def __sub__(self, other: SymMatrix) -> SymMatrix:
        return SymMatrix(entries=self.entries - other.entries)

    def __mul__(self, factor: float) -> SymMatrix:
        return SymMatrix(entries=float(factor) * self.entries)

    __rmul__ = __mul__

    def __truediv__(self, divisor: float) -> SymMatrix:
        return SymMatrix(entries=self.entries / float(divisor))


MatrixLike = Union[SymMatrix, NDArray[np.floating]]


def as_array(matrix: MatrixLike) -> NDArray[np.floating]:
    """Return the numpy view of a SymMatrix, or the input converted to a float64 array."""
    if isinstance(matrix, SymMatrix):
        return matrix.array
    return np.asarray(matrix, dtype=np.float64)
