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

from splitcif.objective import SplitPair
from splitcif.proofcheck import (
    CallableMatrixFamily,
    SplitCovarianceFamily,
    jacobi_convergence,
    jacobi_residual,
)


@pytest.fixture
def log_family() -> CallableMatrixFamily:
    """M(w) = diag(w, 1): ln det M = ln w."""
    return CallableMatrixFamily(lambda w: np.diag([w, 1.0]), lambda w: np.diag([1.0, 0.0]))


@pytest.fixture
def exponential_family() -> CallableMatrixFamily:
    """M(w) = e^w I: ln det M = 2 w."""
    return CallableMatrixFamily(lambda w: np.exp(w) * np.eye(2), lambda w: np.exp(w) * np.eye(2))


def test_jacobi_residual_log_family(log_family: CallableMatrixFamily) -> None:
    assert jacobi_residual(log_family, 0.5, 1e-6) <= 1e-8


def test_jacobi_residual_exponential_family(exponential_family: CallableMatrixFamily) -> None:
    value, derivative = exponential_family.value(0.0), exponential_family.derivative(0.0)
    assert np.trace(np.linalg.solve(value, derivative)) == pytest.approx(2.0)
    assert jacobi_residual(exponential_family, 0.0, 1e-6) <= 1e-8


@pytest.mark.parametrize("side", [1, 2])
def test_jacobi_residual_split_covariance_family(random_pair: SplitPair, side: int) -> None:
    family = SplitCovarianceFamily(random_pair, side)
    analytic = float(np.trace(np.linalg.solve(family.value(0.4), family.derivative(0.4))))
    assert jacobi_residual(family, 0.4, 1e-6) <= 1e-6 * (1.0 + abs(analytic))


def test_split_covariance_family_values(mixed_scalar_pair: SplitPair) -> None:
    first = SplitCovarianceFamily(mixed_scalar_pair, 1)
    second = SplitCovarianceFamily(mixed_scalar_pair, 2)
    assert first.value(0.5)[0, 0] == pytest.approx(2.0 / 0.5 + 1.0)
    assert first.derivative(0.5)[0, 0] == pytest.approx(-2.0 / 0.25)
    assert second.value(0.5)[0, 0] == pytest.approx(1.0 / 0.5 + 0.5)
    assert second.derivative(0.5)[0, 0] == pytest.approx(1.0 / 0.25)


def test_split_covariance_family_errors(mixed_scalar_pair: SplitPair) -> None:
    with pytest.raises(ValueError, match="side must be 1 or 2"):
        SplitCovarianceFamily(mixed_scalar_pair, 0)
    with pytest.raises(ValueError, match="open interval"):
        SplitCovarianceFamily(mixed_scalar_pair, 1).value(1.0)


def test_jacobi_residual_rejects_non_positive_step(log_family: CallableMatrixFamily) -> None:
    with pytest.raises(ValueError, match="Step must be positive"):
        jacobi_residual(log_family, 0.5, 0.0)


def test_jacobi_convergence_is_second_order(log_family: CallableMatrixFamily) -> None:
    orders = jacobi_convergence(log_family, 0.5)
    assert len(orders) == 2
    for order in orders:
        assert order == pytest.approx(2.0, abs=0.1)


def test_jacobi_convergence_explicit_steps(random_pair: SplitPair) -> None:
    orders = jacobi_convergence(SplitCovarianceFamily(random_pair, 1), 0.4, steps=[1e-2, 1e-3])
    assert orders[0] == pytest.approx(2.0, abs=0.2)
    with pytest.raises(ValueError, match="At least two steps"):
        jacobi_convergence(SplitCovarianceFamily(random_pair, 1), 0.4, steps=[1e-3])


def test_jacobi_convergence_of_constant_family() -> None:
    constant = CallableMatrixFamily(lambda w: np.eye(2), lambda w: np.zeros((2, 2)))
    orders = jacobi_convergence(constant, 0.3)
    assert all(np.isnan(order) for order in orders)
