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
Seeded generation of random PSD test matrices.

The generator is specified exactly so that fixtures can be reproduced by other implementations:

  * SplitMix64 stream: state <- (state + 0x9E3779B97F4A7C15) mod 2^64, then
    z = state; z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9; z = (z ^ (z >> 27)) * 0x94D049BB133111EB;
    output z ^ (z >> 31), all arithmetic mod 2^64. The initial state is seed mod 2^64.
  * Uniform draws use the top 53 bits: u = (z >> 11) * 2^-53 in [0, 1).
  * Normals use Box-Muller on consecutive draws u1 = ((z1 >> 11) + 1) * 2^-53 in (0, 1] and
    u2 = (z2 >> 11) * 2^-53: r = sqrt(-2 ln u1), the pair is (r cos 2 pi u2, r sin 2 pi u2).
    Values are consumed in pair order; an odd request discards the trailing sine value.
  * random_psd fills G (n x rank) row-major with scale * normal draws and returns G G^T.
"""
from __future__ import annotations

import math

import numpy as np
from numpy.typing import NDArray

from splitcif.exceptions import InvalidRank
from splitcif.symmat.sym_matrix import SymMatrix

_MASK_64 = (1 << 64) - 1
_GOLDEN_GAMMA = 0x9E3779B97F4A7C15
_MIX_1 = 0xBF58476D1CE4E5B9
_MIX_2 = 0x94D049BB133111EB
_TWO_POW_MINUS_53 = 2.0**-53


class SplitMix64:
    """Deterministic 64-bit SplitMix stream with uniform, normal and integer draws."""

    def __init__(self, seed: int):
        self._state = seed & _MASK_64

    def next_u64(self) -> int:
        """Advance the stream and return the next 64-bit output."""
        self._state = (self._state + _GOLDEN_GAMMA) & _MASK_64
        z = self._state
        z = ((z ^ (z >> 30)) * _MIX_1) & _MASK_64
        z = ((z ^ (z >> 27)) * _MIX_2) & _MASK_64
        return z ^ (z >> 31)

    def uniform(self) -> float:
        """Return a uniform draw in [0, 1)."""
        return (self.next_u64() >> 11) * _TWO_POW_MINUS_53

    def integers(self, low: int, high: int) -> int:
        """Return an integer in [low, high) (modulo reduction; the bias is below 2^-40)."""
        if high <= low:
            raise ValueError(f"Empty integer range [{low}, {high}).")
        return low + self.next_u64() % (high - low)

    def standard_normal(self, size: int) -> NDArray[np.floating]:
        """Return `size` standard normal draws via the Box-Muller transform."""
        values = np.empty(size, dtype=np.float64)
        for index in range(0, size, 2):
            u1 = ((self.next_u64() >> 11) + 1) * _TWO_POW_MINUS_53
            u2 = (self.next_u64() >> 11) * _TWO_POW_MINUS_53
            radius = math.sqrt(-2.0 * math.log(u1))
            angle = 2.0 * math.pi * u2
            values[index] = radius * math.cos(angle)
            if index + 1 < size:
                values[index + 1] = radius * math.sin(angle)
        return values

    def spawn_seed(self) -> int:
        """Return a child seed, used to give each trial its own independent stream."""
        return self.next_u64()


def random_psd(n: int, rank: int, scale: float = 1.0, seed: int = 0) -> SymMatrix:
    """
    Return G G^T for an n x rank matrix G of seeded normal draws times `scale`.

    The result is PSD with rank at most `rank`; identical arguments give identical output bit for
    bit. rank=0 gives the zero matrix.

    Raises:
        InvalidRank: If rank is outside [0, n].
        ValueError: If n < 1 or scale <= 0.
    """
    if n < 1:
        raise ValueError(f"Dimension must be positive, got {n}.")
    if not 0 <= rank <= n:
        raise InvalidRank(f"Rank must lie in [0, {n}], got {rank}.")
    if scale <= 0.0:
        raise ValueError(f"Scale must be positive, got {scale}.")
    factor = scale * SplitMix64(seed).standard_normal(n * rank).reshape(n, rank)
    return SymMatrix(entries=factor @ factor.T)


def random_pd(n: int, scale: float = 1.0, seed: int = 0, jitter: float = 0.1) -> SymMatrix:
    """Return a full-rank random_psd shifted by jitter * scale^2 * I (a conditioned PD matrix)."""
    base = random_psd(n, n, scale=scale, seed=seed)
    return SymMatrix(entries=base.array + jitter * scale**2 * np.eye(n))
