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
Analytic w-derivatives of ln det P(w).

With D1 = P1d / w, D2 = P2d / (1 - w) and P3 = P1 + P2, the weighted covariances have

    dP1/dw = -D1 / w,   dP2/dw = D2 / (1 - w),
    d2P1/dw2 = 2 D1 / w^2,   d2P2/dw2 = 2 D2 / (1 - w)^2,

and ln det P = ln det P1 + ln det P2 - ln det P3 is differentiated term by term with Jacobi's
formula. The second derivative is available in two algebraically equal forms (term by term, and
regrouped into the T1, T2, T3 traces), together with the non-negative lower bound that proves
convexity.
"""
from __future__ import annotations

from typing import NamedTuple

import numpy as np
from numpy.typing import NDArray

from splitcif.objective.family import SplitFamilyPoint
from splitcif.objective.split_pair import SplitPair
from splitcif.symmat import cholesky_factor, trace_product


class DecomposedSecondDerivative(NamedTuple):
    """d2 = T1 / w^2 + T2 / (1 - w)^2 - 2 T3 / (w (1 - w))."""

    d2: float
    T1: float
    T2: float
    T3: float


class DetDerivatives(NamedTuple):
    """det P(w) and its first two w-derivatives."""

    det: float
    d_det: float
    d2_det: float


def _trace_of_product(first: NDArray[np.floating], second: NDArray[np.floating]) -> float:
    """tr{AB} for general square A, B."""
    return float(np.sum(first * second.T))


def _second_order_term(
    inverse: NDArray[np.floating],
    first: NDArray[np.floating],
    second: NDArray[np.floating],
) -> float:
    """d2/dw2 ln det M = -tr{M^-1 M' M^-1 M'} + tr{M^-1 M''}."""
    product = inverse @ first
    return -_trace_of_product(product, product) + trace_product(inverse, second)


def d1_at(point: SplitFamilyPoint) -> float:
    """First derivative of ln det P at a prepared family point."""
    w = point.w
    dP1 = -point.D1 / w
    dP2 = point.D2 / (1.0 - w)
    return (
        trace_product(point.P1_inv, dP1)
        + trace_product(point.P2_inv, dP2)
        - trace_product(point.P3_inv, dP1 + dP2)
    )


def d2_direct_at(point: SplitFamilyPoint) -> float:
    """Second derivative of ln det P, term by term over P1, P2 and P3."""
    w = point.w
    dP1 = -point.D1 / w
    dP2 = point.D2 / (1.0 - w)
    ddP1 = 2.0 * point.D1 / w**2
    ddP2 = 2.0 * point.D2 / (1.0 - w) ** 2
    return (
        _second_order_term(point.P1_inv, dP1, ddP1)
        + _second_order_term(point.P2_inv, dP2, ddP2)
        - _second_order_term(point.P3_inv, dP1 + dP2, ddP1 + ddP2)
    )


def decomposed_terms_at(point: SplitFamilyPoint) -> tuple[DecomposedSecondDerivative, float]:
    """
    Return the regrouped second derivative and its term scale.

    T1 = tr{2 P1^-1 D1 - 2 P3^-1 D1 - P1^-1 D1 P1^-1 D1 + P3^-1 D1 P3^-1 D1},
    T2 is the same with index 2, and T3 = tr{P3^-1 D1 P3^-1 D2}.

    The term scale is the sum of the absolute values of every trace entering d2, each with its
    weight. Cancellation between those traces is the only source of rounding in d2, so the
    scale is the natural unit for tolerances on d2 and on the bounds below it.
    """
    w = point.w
    first1 = point.P1_inv @ point.D1
    third1 = point.P3_inv @ point.D1
    first2 = point.P2_inv @ point.D2
    third2 = point.P3_inv @ point.D2

    t1_parts = (
        2.0 * np.trace(first1),
        -2.0 * np.trace(third1),
        -_trace_of_product(first1, first1),
        _trace_of_product(third1, third1),
    )
    t2_parts = (
        2.0 * np.trace(first2),
        -2.0 * np.trace(third2),
        -_trace_of_product(first2, first2),
        _trace_of_product(third2, third2),
    )
    T1 = float(sum(t1_parts))
    T2 = float(sum(t2_parts))
    T3 = _trace_of_product(third1, third2)

    weight1 = 1.0 / w**2
    weight2 = 1.0 / (1.0 - w) ** 2
    weight3 = 2.0 / (w * (1.0 - w))
    d2 = weight1 * T1 + weight2 * T2 - weight3 * T3
    term_scale = (
        weight1 * float(sum(abs(part) for part in t1_parts))
        + weight2 * float(sum(abs(part) for part in t2_parts))
        + weight3 * abs(T3)
    )
    return DecomposedSecondDerivative(d2=d2, T1=T1, T2=T2, T3=T3), term_scale


def curvature_matrix_at(point: SplitFamilyPoint) -> NDArray[np.floating]:
    """C = P1^-1 (D1 / w) P1^-1 - P2^-1 (D2 / (1 - w)) P2^-1."""
    w = point.w
    first = point.P1_inv @ (point.D1 / w) @ point.P1_inv
    second = point.P2_inv @ (point.D2 / (1.0 - w)) @ point.P2_inv
    curvature = first - second
    return 0.5 * (curvature + curvature.T)


def lower_bound_at(point: SplitFamilyPoint) -> float:
    """
    tr{B3^-1 C B3^-1 C} with B3^-1 = P.

    Evaluated as ||L^T C L||_F^2 with P = L L^T, which equals the trace and is non-negative
    in floating point as well.
    """
    lower_factor = np.tril(cholesky_factor(point.P)[0])
    congruent = lower_factor.T @ curvature_matrix_at(point) @ lower_factor
    return float(np.sum(congruent * congruent))


def intermediate_bound_at(point: SplitFamilyPoint) -> float:
    """
    The bound reached after replacing T1 and T2 by their lower bounds:

        tr{E1 D1' E1 D1'} + tr{E2 D2' E2 D2'} - 2 tr{P3^-1 D1' P3^-1 D2'},

    where E1 = P1^-1 - P3^-1, E2 = P2^-1 - P3^-1, D1' = D1 / w and D2' = D2 / (1 - w).
    """
    w = point.w
    scaled1 = point.D1 / w
    scaled2 = point.D2 / (1.0 - w)
    excess1 = (point.P1_inv - point.P3_inv) @ scaled1
    excess2 = (point.P2_inv - point.P3_inv) @ scaled2
    cross = _trace_of_product(point.P3_inv @ scaled1, point.P3_inv @ scaled2)
    return (
        _trace_of_product(excess1, excess1) + _trace_of_product(excess2, excess2) - 2.0 * cross
    )


def d1_logdet(pair: SplitPair, w: float) -> float:
    """
    Return d/dw ln det P(w).

    Raises:
        ValueError: If w is outside (0, 1).
        NotPositiveDefinite: If the family is not positive definite at w.
    """
    return d1_at(SplitFamilyPoint(pair, w))


def d2_logdet_direct(pair: SplitPair, w: float) -> float:
    """Return d2/dw2 ln det P(w) from the term-by-term expression."""
    return d2_direct_at(SplitFamilyPoint(pair, w))


def d2_logdet_decomposed(pair: SplitPair, w: float) -> DecomposedSecondDerivative:
    """Return d2/dw2 ln det P(w) from the T1, T2, T3 decomposition, with the three traces."""
    return decomposed_terms_at(SplitFamilyPoint(pair, w))[0]


def convexity_lower_bound(pair: SplitPair, w: float) -> float:
    """Return the non-negative lower bound tr{B3^-1 C B3^-1 C} of d2/dw2 ln det P(w)."""
    return lower_bound_at(SplitFamilyPoint(pair, w))


def intermediate_bound(pair: SplitPair, w: float) -> float:
    """Return the bound between d2 and convexity_lower_bound; it equals the latter exactly."""
    return intermediate_bound_at(SplitFamilyPoint(pair, w))


def det_derivatives(pair: SplitPair, w: float) -> DetDerivatives:
    """
    Return det P(w) with d/dw det P = det P * d1 and d2/dw2 det P = det P * (d2 + d1^2).

    Since det P > 0, a non-negative d2 makes d2/dw2 det P non-negative, which is how convexity
    of ln det carries over to det.
    """
    point = SplitFamilyPoint(pair, w)
    return det_derivatives_at(point)


def det_derivatives_at(point: SplitFamilyPoint) -> DetDerivatives:
    """det_derivatives at a prepared family point."""
    det = float(np.exp(point.logdet()))
    first = d1_at(point)
    second = d2_direct_at(point)
    return DetDerivatives(det=det, d_det=det * first, d2_det=det * (second + first**2))
