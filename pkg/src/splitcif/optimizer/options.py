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

from enum import Enum

from pydantic import field_validator

from splitcif.utils import FrozenPydanticBaseModel


class Status(str, Enum):
    """Where the minimizer of ln det P(w) was found."""

    INTERIOR = "interior"
    LOWER_BOUNDARY = "lower_boundary"
    UPPER_BOUNDARY = "upper_boundary"
    FLAT = "flat"


class OptimizeOptions(FrozenPydanticBaseModel):
    """
    Options of the w-optimization.

    Attributes:
        delta: Boundary clamp; the search interval is [delta, 1 - delta].
        w_tol: Bracket width at which the search stops.
        flat_tol: Relative objective variation below which the objective counts as flat.
        max_iter: Maximum number of search iterations.
        method: Name of a registered w-search strategy ("bisection" or "bounded").
        probe_samples: Number of equally spaced points of the flatness probe.
    """

    delta: float = 1e-6
    w_tol: float = 1e-10
    flat_tol: float = 1e-12
    max_iter: int = 200
    method: str = "bisection"
    probe_samples: int = 11

    @field_validator("delta")
    @classmethod
    def check_delta(cls, value: float) -> float:  # noqa: D102
        if not 0.0 < value < 0.5:
            raise ValueError(f"delta must lie in (0, 0.5), got {value}.")
        return value

    @field_validator("w_tol")
    @classmethod
    def check_w_tol(cls, value: float) -> float:  # noqa: D102
        if value <= 0.0:
            raise ValueError(f"w_tol must be positive, got {value}.")
        return value

    @field_validator("flat_tol")
    @classmethod
    def check_flat_tol(cls, value: float) -> float:  # noqa: D102
        if value < 0.0:
            raise ValueError(f"flat_tol must be non-negative, got {value}.")
        return value

    @field_validator("max_iter")
    @classmethod
    def check_max_iter(cls, value: int) -> int:  # noqa: D102
        if value < 1:
            raise ValueError(f"max_iter must be at least 1, got {value}.")
        return value

    @field_validator("probe_samples")
    @classmethod
    def check_probe_samples(cls, value: int) -> int:  # noqa: D102
        if value < 3:
            raise ValueError(f"probe_samples must be at least 3, got {value}.")
        return value


class OptimizeResult(FrozenPydanticBaseModel):
    """
    Minimizer of det P(w) over [delta, 1 - delta].

    Attributes:
        w_star: The minimizing weight.
        objective_logdet: ln det P(w_star).
        objective_det: det P(w_star).
        status: Interior minimum, boundary minimum or flat objective.
        iterations: Number of search iterations (0 on the fast paths).
        d1_at_solution: d/dw ln det P at w_star (a central difference when the trace formula
            fails).
        method: Strategy that produced w_star ("fast_path" and "probe" for the shortcuts).
        bracket_history: Brackets [a, b] visited by the bisection, initial bracket first.
    """

    w_star: float
    objective_logdet: float
    objective_det: float
    status: Status
    iterations: int
    d1_at_solution: float
    method: str
    bracket_history: list[tuple[float, float]] = []
