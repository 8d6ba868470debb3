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

"""Seeded inputs for the randomized checks."""
from __future__ import annotations

from typing import NamedTuple

import numpy as np
from scipy import linalg

from splitcif.objective import SplitPair
from splitcif.symmat import SplitMix64, SymMatrix, psd_sqrt, random_pd, random_psd


class AdmissibleTriple(NamedTuple):
    """Matrices with 0 < X <= Y and 0 <= Z <= X."""

    X: SymMatrix
    Y: SymMatrix
    Z: SymMatrix


def admissible_triple(n: int, seed: int) -> AdmissibleTriple:
    """
    Build an admissible triple by construction rather than rejection sampling.

    X = random_psd(rank=n) + 0.1 I, Y = X + random_psd of random rank, and
    Z = X^1/2 W X^1/2 where W is a random PSD matrix of random rank rescaled so that its
    eigenvalues lie in [0, 1]. Then X - Z = X^1/2 (I - W) X^1/2 >= 0 holds exactly.
    """
    rng = SplitMix64(seed)
    x = random_pd(n, seed=rng.spawn_seed())
    y = x + random_psd(n, rng.integers(0, n + 1), seed=rng.spawn_seed())

    eigenvalues, eigenvectors = linalg.eigh(
        random_psd(n, rng.integers(0, n + 1), seed=rng.spawn_seed()).array
    )
    largest = float(eigenvalues[-1])
    if largest > 0.0:
        eigenvalues = np.clip(eigenvalues / largest, 0.0, 1.0)
    else:
        eigenvalues = np.zeros_like(eigenvalues)
    contraction = (eigenvectors * eigenvalues) @ eigenvectors.T
    root = psd_sqrt(x).array
    return AdmissibleTriple(X=x, Y=y, Z=SymMatrix(entries=root @ contraction @ root))


def random_split_pair(
    n: int,
    seed: int,
    dependent_ranks: tuple[int, int] | None = None,
    scale: float = 1.0,
) -> SplitPair:
    """
    Return a seeded SplitPair with PSD dependent parts and PD independent parts.

    Args:
        n: Dimension.
        seed: Seed of the SplitMix64 stream all four members are derived from.
        dependent_ranks: Ranks of P1d and P2d; drawn uniformly from {0, ..., n} when omitted.
        scale: Entry scale of all four members.
    """
    rng = SplitMix64(seed)
    if dependent_ranks is None:
        dependent_ranks = (rng.integers(0, n + 1), rng.integers(0, n + 1))
    rank1, rank2 = dependent_ranks
    return SplitPair(
        P1d=random_psd(n, rank1, scale=scale, seed=rng.spawn_seed()),
        P1i=random_pd(n, scale=scale, seed=rng.spawn_seed()),
        P2d=random_psd(n, rank2, scale=scale, seed=rng.spawn_seed()),
        P2i=random_pd(n, scale=scale, seed=rng.spawn_seed()),
    )
