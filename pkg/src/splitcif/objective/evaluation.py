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

import numpy as np

from splitcif.objective.derivatives import (
    curvature_matrix_at,
    d1_at,
    d2_direct_at,
    decomposed_terms_at,
    intermediate_bound_at,
    lower_bound_at,
)
from splitcif.objective.family import SplitFamilyPoint
from splitcif.objective.split_pair import SplitPair
from splitcif.symmat import SymMatrix
from splitcif.utils import FrozenPydanticBaseModel


class WEvaluation(FrozenPydanticBaseModel):
    """
    Every quantity of the convexity argument at a single w.

    Attributes:
        w: The weight, in (0, 1).
        P1: P1d / w + P1i.
        P2: P2d / (1 - w) + P2i.
        P: (P1^-1 + P2^-1)^-1.
        P3: P1 + P2.
        det_P: det P, as exp(logdet_P).
        logdet_P: ln det P.
        d1: First w-derivative of ln det P.
        d2_direct: Second w-derivative of ln det P, term by term.
        d2_decomposed: Second w-derivative of ln det P, from T1, T2 and T3.
        T1: Trace grouping the P1-side terms of the second derivative.
        T2: Trace grouping the P2-side terms of the second derivative.
        T3: Cross trace tr{P3^-1 D1 P3^-1 D2}.
        lower_bound: tr{B3^-1 C B3^-1 C}, non-negative.
        intermediate_bound: The bound after replacing T1 and T2 by their lower bounds.
        term_scale: Weighted sum of the absolute traces entering the second derivative.
        d_det: First w-derivative of det P.
        d2_det: Second w-derivative of det P.
        B3: P1^-1 + P2^-1.
        C: P1^-1 (D1 / w) P1^-1 - P2^-1 (D2 / (1 - w)) P2^-1.
        D1: P1d / w.
        D2: P2d / (1 - w).
    """

    w: float
    P1: SymMatrix
    P2: SymMatrix
    P: SymMatrix
    P3: SymMatrix
    det_P: float
    logdet_P: float
    d1: float
    d2_direct: float
    d2_decomposed: float
    T1: float
    T2: float
    T3: float
    lower_bound: float
    intermediate_bound: float
    term_scale: float
    d_det: float
    d2_det: float
    B3: SymMatrix
    C: SymMatrix
    D1: SymMatrix
    D2: SymMatrix


def evaluate(pair: SplitPair, w: float) -> WEvaluation:
    """
    Evaluate the family and all of its derivatives at w, sharing one set of factorizations.

    Raises:
        ValueError: If w is outside (0, 1).
        NotPositiveDefinite: If the family is not positive definite at w.
    """
    point = SplitFamilyPoint(pair, w)
    logdet = point.logdet()
    det = float(np.exp(logdet))
    d1 = d1_at(point)
    d2 = d2_direct_at(point)
    decomposed, term_scale = decomposed_terms_at(point)
    return WEvaluation(
        w=point.w,
        P1=SymMatrix(entries=point.P1),
        P2=SymMatrix(entries=point.P2),
        P=SymMatrix(entries=point.P),
        P3=SymMatrix(entries=point.P3),
        det_P=det,
        logdet_P=logdet,
        d1=d1,
        d2_direct=d2,
        d2_decomposed=decomposed.d2,
        T1=decomposed.T1,
        T2=decomposed.T2,
        T3=decomposed.T3,
        lower_bound=lower_bound_at(point),
        intermediate_bound=intermediate_bound_at(point),
        term_scale=term_scale,
        d_det=det * d1,
        d2_det=det * (d2 + d1**2),
        B3=SymMatrix(entries=point.P1_inv + point.P2_inv),
        C=SymMatrix(entries=curvature_matrix_at(point)),
        D1=SymMatrix(entries=point.D1),
        D2=SymMatrix(entries=point.D2),
    )
