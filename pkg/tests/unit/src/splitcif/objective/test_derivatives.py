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

import numpy as np
import pytest

from splitcif.objective import (
    SplitPair,
    convexity_lower_bound,
    d1_logdet,
    d2_logdet_decomposed,
    d2_logdet_direct,
    det_derivatives,
    evaluate,
    intermediate_bound,
    logdet_objective,
)
from splitcif.symmat import random_pd

W_GRID = [0.01, 0.2, 0.37, 0.5, 0.61, 0.85, 0.99]


def _central_difference(pair: SplitPair, w: float, h: float) -> float:
    return (logdet_objective(pair, w + h) - logdet_objective(pair, w - h)) / (2.0 * h)


def _second_difference(pair: SplitPair, w: float, h: float) -> float:
    return (
        logdet_objective(pair, w + h) - 2.0 * logdet_objective(pair, w) + logdet_objective(pair, w - h)
    ) / h**2


def test_d1_vanishes_for_symmetric_pair() -> None:
    A = random_pd(3, seed=1)
    B = random_pd(3, seed=2)
    pair = SplitPair(P1d=A, P1i=B, P2d=A, P2i=B)
    assert d1_logdet(pair, 0.5) == pytest.approx(0.0, abs=1e-12)


def test_d1_vanishes_for_flat_pure_ci(flat_pure_ci_pair: SplitPair) -> None:
    assert d1_logdet(flat_pure_ci_pair, 0.3) == pytest.approx(0.0, abs=1e-12)


def test_d1_symmetric_scalar_is_negative_left_of_minimum(symmetric_scalar_pair: SplitPair) -> None:
    d1 = d1_logdet(symmetric_scalar_pair, 0.25)
    assert d1 < 0.0
    assert d1 == pytest.approx(_central_difference(symmetric_scalar_pair, 0.25, 1e-7), rel=1e-5)


@pytest.mark.parametrize("w", W_GRID)
@pytest.mark.parametrize("pair_name", ["random_pair", "rank_deficient_pair", "mixed_scalar_pair"])
def test_d1_matches_finite_difference(pair_name: str, w: float, request: pytest.FixtureRequest) -> None:
    pair = request.getfixturevalue(pair_name)
    h = 1e-6 * min(w, 1.0 - w)
    d1 = d1_logdet(pair, w)
    assert d1 == pytest.approx(_central_difference(pair, w, h), rel=1e-5, abs=1e-5)


def test_d2_symmetric_scalar_value(symmetric_scalar_pair: SplitPair) -> None:
    d2 = d2_logdet_direct(symmetric_scalar_pair, 0.5)
    assert d2 == pytest.approx(16.0 / 9.0, rel=1e-12)
    assert d2 == pytest.approx(_second_difference(symmetric_scalar_pair, 0.5, 1e-5), rel=1e-4)


@pytest.mark.parametrize("w", [0.1, 0.5, 0.8])
def test_d2_vanishes_in_degenerate_cases(
    flat_pure_ci_pair: SplitPair, independent_only_pair: SplitPair, w: float
) -> None:
    assert d2_logdet_direct(flat_pure_ci_pair, w) == pytest.approx(0.0, abs=1e-9)
    assert d2_logdet_direct(independent_only_pair, w) == 0.0


@pytest.mark.parametrize("w", W_GRID)
@pytest.mark.parametrize("pair_name", ["random_pair", "rank_deficient_pair", "mixed_scalar_pair"])
def test_d2_matches_difference_of_d1(pair_name: str, w: float, request: pytest.FixtureRequest) -> None:
    pair = request.getfixturevalue(pair_name)
    h = 1e-5 * min(w, 1.0 - w)
    difference = (d1_logdet(pair, w + h) - d1_logdet(pair, w - h)) / (2.0 * h)
    d2 = d2_logdet_direct(pair, w)
    assert d2 >= -1e-9
    assert d2 == pytest.approx(difference, rel=1e-4, abs=1e-4)


@pytest.mark.parametrize("w", [0.2, 0.5, 0.8])
def test_d2_matches_second_difference(random_pair: SplitPair, w: float) -> None:
    h = 1e-4 * min(w, 1.0 - w)
    d2 = d2_logdet_direct(random_pair, w)
    assert d2 == pytest.approx(_second_difference(random_pair, w, h), rel=1e-4, abs=1e-4)


def test_decomposed_terms_by_hand(flat_pure_ci_pair: SplitPair) -> None:
    decomposed = d2_logdet_decomposed(flat_pure_ci_pair, 0.5)
    assert decomposed.T1 == pytest.approx(0.25, rel=1e-14)
    assert decomposed.T2 == pytest.approx(0.25, rel=1e-14)
    assert decomposed.T3 == pytest.approx(0.25, rel=1e-14)
    assert decomposed.d2 == pytest.approx(0.0, abs=1e-13)


@pytest.mark.parametrize("w", [0.05, 0.5, 0.9])
def test_decomposed_without_first_dependent_part(
    no_first_dependent_pair: SplitPair, w: float
) -> None:
    decomposed = d2_logdet_decomposed(no_first_dependent_pair, w)
    assert decomposed.T1 == 0.0
    assert decomposed.T3 == 0.0
    assert decomposed.d2 == pytest.approx(decomposed.T2 / (1.0 - w) ** 2, rel=1e-15)


@pytest.mark.parametrize("w", W_GRID)
@pytest.mark.parametrize("pair_name", ["random_pair", "rank_deficient_pair", "mixed_scalar_pair"])
def test_decomposed_matches_direct(pair_name: str, w: float, request: pytest.FixtureRequest) -> None:
    pair = request.getfixturevalue(pair_name)
    direct = d2_logdet_direct(pair, w)
    decomposed = d2_logdet_decomposed(pair, w).d2
    assert decomposed == pytest.approx(direct, rel=1e-8, abs=1e-8)


@pytest.mark.parametrize("w", [0.1, 0.5, 0.8])
def test_lower_bound_vanishes_in_degenerate_cases(
    flat_pure_ci_pair: SplitPair, independent_only_pair: SplitPair, w: float
) -> None:
    assert convexity_lower_bound(flat_pure_ci_pair, w) == pytest.approx(0.0, abs=1e-12)
    assert convexity_lower_bound(independent_only_pair, w) == 0.0


@pytest.mark.parametrize("w", W_GRID)
@pytest.mark.parametrize("pair_name", ["random_pair", "rank_deficient_pair", "mixed_scalar_pair"])
def test_lower_bound_chain(pair_name: str, w: float, request: pytest.FixtureRequest) -> None:
    pair = request.getfixturevalue(pair_name)
    scale = 1.0 + evaluate(pair, w).term_scale
    d2 = d2_logdet_direct(pair, w)
    bound = convexity_lower_bound(pair, w)
    assert bound >= 0.0
    assert d2 >= bound - 1e-7 * scale
    assert abs(intermediate_bound(pair, w) - bound) <= 1e-8 * scale


@pytest.mark.parametrize("w", [0.2, 0.5, 0.7])
def test_det_derivatives(random_pair: SplitPair, w: float) -> None:
    h = 1e-4 * min(w, 1.0 - w)
    def det(v: float) -> float:
        return float(np.exp(logdet_objective(random_pair, v)))

    derivatives = det_derivatives(random_pair, w)
    assert derivatives.det == pytest.approx(det(w), rel=1e-14)
    assert derivatives.d_det == pytest.approx(
        (det(w + h) - det(w - h)) / (2.0 * h), rel=1e-5, abs=1e-8 * derivatives.det
    )
    assert derivatives.d2_det >= 0.0
    assert derivatives.d2_det == pytest.approx(
        (det(w + h) - 2.0 * det(w) + det(w - h)) / h**2, rel=1e-3, abs=1e-4 * derivatives.det
    )
