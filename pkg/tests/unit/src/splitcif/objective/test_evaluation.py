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
    WEvaluation,
    convexity_lower_bound,
    d1_logdet,
    d2_logdet_direct,
    evaluate,
)


def test_evaluate_symmetric_scalar(symmetric_scalar_pair: SplitPair) -> None:
    evaluation = evaluate(symmetric_scalar_pair, 0.5)
    assert evaluation.det_P == pytest.approx(1.5, rel=1e-14)
    assert evaluation.logdet_P == pytest.approx(np.log(1.5), rel=1e-14)
    assert evaluation.d1 == pytest.approx(0.0, abs=1e-14)
    assert evaluation.P3.array[0, 0] == pytest.approx(6.0)
    assert evaluation.B3.array[0, 0] == pytest.approx(2.0 / 3.0)
    assert evaluation.D1.array[0, 0] == pytest.approx(2.0)
    assert evaluation.D2.array[0, 0] == pytest.approx(2.0)


def test_evaluate_flat_pure_ci(flat_pure_ci_pair: SplitPair) -> None:
    evaluation = evaluate(flat_pure_ci_pair, 0.8)
    assert evaluation.det_P == pytest.approx(1.0, rel=1e-14)
    assert evaluation.d1 == pytest.approx(0.0, abs=1e-12)
    assert evaluation.d2_direct == pytest.approx(0.0, abs=1e-9)
    assert evaluation.d2_decomposed == pytest.approx(0.0, abs=1e-9)
    assert evaluation.lower_bound == pytest.approx(0.0, abs=1e-12)
    np.testing.assert_allclose(evaluation.C.array, [[0.0]], atol=1e-12)


@pytest.mark.parametrize("w", [0.01, 0.37, 0.5, 0.99])
def test_evaluate_random_pair_invariants(random_pair: SplitPair, w: float) -> None:
    evaluation = evaluate(random_pair, w)
    assert isinstance(evaluation, WEvaluation)
    for matrix in (evaluation.P, evaluation.P1, evaluation.P2, evaluation.P3, evaluation.B3):
        assert np.min(np.linalg.eigvalsh(matrix.array)) > 0.0
    d2 = evaluation.d2_direct
    assert abs(d2 - evaluation.d2_decomposed) <= 1e-8 * (1.0 + abs(d2))
    assert d2 >= evaluation.lower_bound - 1e-7 * (1.0 + abs(d2))
    assert evaluation.lower_bound >= 0.0
    assert evaluation.term_scale >= abs(d2)
    assert evaluation.det_P == pytest.approx(np.exp(evaluation.logdet_P), rel=1e-15)
    np.testing.assert_allclose(
        evaluation.P.array @ evaluation.B3.array, np.eye(random_pair.n), atol=1e-9
    )


def test_evaluate_agrees_with_single_quantities(rank_deficient_pair: SplitPair) -> None:
    evaluation = evaluate(rank_deficient_pair, 0.44)
    assert evaluation.d1 == d1_logdet(rank_deficient_pair, 0.44)
    assert evaluation.d2_direct == d2_logdet_direct(rank_deficient_pair, 0.44)
    assert evaluation.lower_bound == convexity_lower_bound(rank_deficient_pair, 0.44)
    assert evaluation.d_det == pytest.approx(evaluation.det_P * evaluation.d1)
    assert evaluation.d2_det == pytest.approx(
        evaluation.det_P * (evaluation.d2_direct + evaluation.d1**2)
    )
