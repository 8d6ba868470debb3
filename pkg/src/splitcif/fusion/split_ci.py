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
Fusion of two split estimates with the optimized weight, plus the two classic rules the split
rule reduces to: covariance intersection (no independent parts) and information fusion (no
dependent parts).
"""
from __future__ import annotations

from typing import NamedTuple, Optional

import numpy as np
from loguru import logger
from numpy.typing import ArrayLike, NDArray
from scipy import linalg

from splitcif.exceptions import DimensionMismatch
from splitcif.fusion.split_estimate import SplitEstimate
from splitcif.objective import SplitFamilyPoint, SplitPair
from splitcif.optimizer import OptimizeOptions, OptimizeResult, minimize_w
from splitcif.symmat import MatrixLike, SymMatrix, as_array, clip_psd, spd_inverse, spd_solve

OUTPUT_PSD_TOLERANCE = 1e-9


class SplitFusionResult(NamedTuple):
    """Fused estimate, the weight used, the optimizer record and the clipping counter."""

    fused: SplitEstimate
    w: float
    result: OptimizeResult
    clipped_eigenvalues: int


class FusedMoments(NamedTuple):
    """Mean and covariance of a fused estimate."""

    x: NDArray[np.floating]
    P: SymMatrix


def split_ci_fuse(
    e1: SplitEstimate, e2: SplitEstimate, options: Optional[OptimizeOptions] = None
) -> SplitFusionResult:
    """
    Fuse two split estimates.

    With w minimizing det P(w) over the pair (e1.cov_d, e1.cov_i, e2.cov_d, e2.cov_i),
    P1 = P1(w), P2 = P2(w) and P = (P1^-1 + P2^-1)^-1:

        x     = P (P1^-1 x1 + P2^-1 x2),
        cov_d = P (P1^-1 D1 P1^-1 + P2^-1 D2 P2^-1) P,   D1 = cov_d1 / w, D2 = cov_d2 / (1 - w),
        cov_i = P - cov_d.

    Negative eigenvalues of cov_d at rounding level are clipped to zero and counted; cov_i
    absorbs the clipped amount, so cov_d + cov_i = P holds up to one rounding.

    Args:
        e1: First estimate.
        e2: Second estimate, of the same dimension.
        options: Options of the weight optimization.

    Raises:
        DimensionMismatch: If the estimates differ in dimension.
        NotPositiveDefinite: If the covariance family cannot be evaluated.
    """
    if e1.n != e2.n:
        raise DimensionMismatch(f"Cannot fuse estimates of dimensions {e1.n} and {e2.n}.")
    pair = SplitPair(P1d=e1.cov_d, P1i=e1.cov_i, P2d=e2.cov_d, P2i=e2.cov_i)
    result = minimize_w(pair, options)
    w = result.w_star

    point = SplitFamilyPoint(pair, w)
    fused_covariance = point.P
    information_mean = linalg.cho_solve(point.factor1, e1.x, check_finite=False) + linalg.cho_solve(
        point.factor2, e2.x, check_finite=False
    )
    x = fused_covariance @ information_mean

    inner = point.P1_inv @ point.D1 @ point.P1_inv + point.P2_inv @ point.D2 @ point.P2_inv
    cov_d, clipped = clip_psd(fused_covariance @ inner @ fused_covariance, OUTPUT_PSD_TOLERANCE)
    if clipped:
        logger.debug(f"Clipped {clipped} rounding-level negative eigenvalue(s) of the fused cov_d.")
    cov_i = fused_covariance - cov_d.array

    fused = SplitEstimate(x=x, cov_d=cov_d, cov_i=cov_i)
    return SplitFusionResult(fused=fused, w=w, result=result, clipped_eigenvalues=clipped)


def _check_moments(
    x1: ArrayLike, S1: MatrixLike, x2: ArrayLike, S2: MatrixLike
) -> tuple[NDArray[np.floating], NDArray[np.floating], NDArray[np.floating], NDArray[np.floating]]:
    mean1 = np.asarray(x1, dtype=np.float64).reshape(-1)
    mean2 = np.asarray(x2, dtype=np.float64).reshape(-1)
    cov1, cov2 = np.atleast_2d(as_array(S1)), np.atleast_2d(as_array(S2))
    if not mean1.size == mean2.size == cov1.shape[0] == cov2.shape[0]:
        raise DimensionMismatch(
            f"Incompatible shapes: x1 {mean1.shape}, S1 {cov1.shape}, x2 {mean2.shape}, "
            f"S2 {cov2.shape}."
        )
    return mean1, cov1, mean2, cov2


def covariance_intersection(
    x1: ArrayLike, S1: MatrixLike, x2: ArrayLike, S2: MatrixLike, w: float
) -> FusedMoments:
    """
    Classic covariance intersection at weight w in [0, 1]:

        P = (w S1^-1 + (1 - w) S2^-1)^-1,   x = P (w S1^-1 x1 + (1 - w) S2^-1 x2).

    Raises:
        ValueError: If w is outside [0, 1].
        DimensionMismatch: If the shapes do not agree.
        NotPositiveDefinite: If S1 or S2 is not positive definite.
    """
    if not 0.0 <= w <= 1.0:
        raise ValueError(f"w must lie in [0, 1], got {w}.")
    mean1, cov1, mean2, cov2 = _check_moments(x1, S1, x2, S2)
    information = w * spd_inverse(cov1) + (1.0 - w) * spd_inverse(cov2)
    information_mean = w * spd_solve(cov1, mean1) + (1.0 - w) * spd_solve(cov2, mean2)
    covariance = spd_inverse(information)
    return FusedMoments(x=covariance @ information_mean, P=SymMatrix(entries=covariance))


def information_fusion(
    x1: ArrayLike, S1: MatrixLike, x2: ArrayLike, S2: MatrixLike
) -> FusedMoments:
    """
    Fusion of two estimates with independent errors (the Kalman update in information form):

        P = (S1^-1 + S2^-1)^-1,   x = P (S1^-1 x1 + S2^-1 x2).

    Raises:
        DimensionMismatch: If the shapes do not agree.
        NotPositiveDefinite: If S1 or S2 is not positive definite.
    """
    mean1, cov1, mean2, cov2 = _check_moments(x1, S1, x2, S2)
    information = spd_inverse(cov1) + spd_inverse(cov2)
    information_mean = spd_solve(cov1, mean1) + spd_solve(cov2, mean2)
    covariance = spd_inverse(information)
    return FusedMoments(x=covariance @ information_mean, P=SymMatrix(entries=covariance))
