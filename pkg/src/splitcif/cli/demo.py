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
Repeated fusion of two simulated estimate streams.

At every step both streams observe the same truth. Their errors share a common component, which
is what makes the dependent parts necessary, plus a dependent component whose covariance ellipse
rotates with the step index and an independent component. The two ellipses stay orthogonal, so
the optimal weight moves back and forth through (0, 1) as they rotate.
"""
from __future__ import annotations

import numpy as np
from loguru import logger
from numpy.typing import NDArray
from pydantic import field_validator

from splitcif.fusion import SplitEstimate, split_ci_fuse
from splitcif.utils import FrozenPydanticBaseModel

DEMO_HEADER = ("step", "w", "det_P", "err_norm")


class DemoConfig(FrozenPydanticBaseModel):
    """
    Configuration of the repeated-fusion demo.

    Attributes:
        steps: Number of fusion steps.
        seed: Seed of the numpy generator.
        dim: State dimension, 1 or 2.
        common_std: Standard deviation of the error shared by both streams.
        ellipse_axes: Variances along the principal axes of the rotating dependent ellipses.
        independent_std: Standard deviation of each stream's independent error.
        rotation_step: Rotation of the ellipses per step, in radians.
        truth_std: Standard deviation of the simulated true state.
    """

    steps: int = 50
    seed: int = 7
    dim: int = 2
    common_std: float = 0.5
    ellipse_axes: tuple[float, float] = (4.0, 0.25)
    independent_std: float = 0.5
    rotation_step: float = np.pi / 12.0
    truth_std: float = 10.0

    @field_validator("steps")
    @classmethod
    def check_steps(cls, value: int) -> int:  # noqa: D102
        if value < 1:
            raise ValueError(f"steps must be at least 1, got {value}.")
        return value

    @field_validator("dim")
    @classmethod
    def check_dim(cls, value: int) -> int:  # noqa: D102
        if value not in (1, 2):
            raise ValueError(f"dim must be 1 or 2, got {value}.")
        return value


def _rotated_ellipse(axes: tuple[float, float], angle: float, dim: int) -> NDArray[np.floating]:
    rotation = np.array([[np.cos(angle), -np.sin(angle)], [np.sin(angle), np.cos(angle)]])
    ellipse = rotation @ np.diag(axes) @ rotation.T
    return ellipse[:dim, :dim]


def run_demo(config: DemoConfig) -> NDArray[np.floating]:
    """
    Run the demo.

    Returns:
        One row (step, w, det P, |x_fused - truth|) per step.
    """
    rng = np.random.default_rng(config.seed)
    dim = config.dim
    common = config.common_std**2 * np.eye(dim)
    independent = config.independent_std**2 * np.eye(dim)

    rows = np.empty((config.steps, len(DEMO_HEADER)))
    for step in range(config.steps):
        angle = step * config.rotation_step
        dependents = (
            common + _rotated_ellipse(config.ellipse_axes, angle, dim),
            common + _rotated_ellipse(config.ellipse_axes, angle + 0.5 * np.pi, dim),
        )
        truth = config.truth_std * rng.standard_normal(dim)
        shared_error = rng.multivariate_normal(np.zeros(dim), common)
        estimates = []
        for dependent in dependents:
            own_error = rng.multivariate_normal(np.zeros(dim), dependent - common)
            noise = rng.multivariate_normal(np.zeros(dim), independent)
            estimates.append(
                SplitEstimate(
                    x=truth + shared_error + own_error + noise,
                    cov_d=dependent,
                    cov_i=independent,
                )
            )
        fusion = split_ci_fuse(estimates[0], estimates[1])
        error_norm = float(np.linalg.norm(fusion.fused.x - truth))
        rows[step] = (step, fusion.w, fusion.result.objective_det, error_norm)
        logger.debug(
            f"Demo step {step}: w={fusion.w:.6f} ({fusion.result.status.value}), "
            f"error {error_norm:.4f}."
        )
    return rows
