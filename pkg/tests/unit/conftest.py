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
from splitcif.proofcheck import random_split_pair


@pytest.fixture
def flat_pure_ci_pair() -> SplitPair:
    """Scalar pair (1, 0, 1, 0): P(w) = 1 for every w."""
    return SplitPair(P1d=1.0, P1i=0.0, P2d=1.0, P2i=0.0)


@pytest.fixture
def symmetric_scalar_pair() -> SplitPair:
    """Scalar pair (1, 1, 1, 1): minimum at w = 0.5 where P = 1.5."""
    return SplitPair(P1d=1.0, P1i=1.0, P2d=1.0, P2i=1.0)


@pytest.fixture
def no_first_dependent_pair() -> SplitPair:
    """Scalar pair (0, 1, 1, 1): the objective increases with w."""
    return SplitPair(P1d=0.0, P1i=1.0, P2d=1.0, P2i=1.0)


@pytest.fixture
def unequal_pure_ci_pair() -> SplitPair:
    """Scalar pair (1, 0, 4, 0): classic CI, det P(w) = 1 / (w + (1 - w) / 4)."""
    return SplitPair(P1d=1.0, P1i=0.0, P2d=4.0, P2i=0.0)


@pytest.fixture
def mixed_scalar_pair() -> SplitPair:
    """Scalar pair (2, 1, 1, 0.5)."""
    return SplitPair(P1d=2.0, P1i=1.0, P2d=1.0, P2i=0.5)


@pytest.fixture
def independent_only_pair() -> SplitPair:
    """2 x 2 pair with both dependent parts zero: P(w) does not depend on w."""
    return SplitPair(
        P1d=np.zeros((2, 2)),
        P1i=np.array([[2.0, 0.5], [0.5, 1.0]]),
        P2d=np.zeros((2, 2)),
        P2i=np.array([[1.0, -0.3], [-0.3, 3.0]]),
    )


@pytest.fixture
def random_pair() -> SplitPair:
    """Seeded 3 x 3 pair with full-rank dependent parts."""
    return random_split_pair(3, seed=42, dependent_ranks=(3, 3))


@pytest.fixture
def rank_deficient_pair() -> SplitPair:
    """Seeded 4 x 4 pair with rank-one and rank-two dependent parts."""
    return random_split_pair(4, seed=2024, dependent_ranks=(1, 2))
