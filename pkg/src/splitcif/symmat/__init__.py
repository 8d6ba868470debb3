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

from splitcif.symmat.kernels import (
    CholeskyFactor,
    chol_logdet,
    cholesky_factor,
    clip_psd,
    is_psd,
    logdet_from_factor,
    loewner_leq,
    psd_sqrt,
    spd_inverse,
    spd_solve,
    trace_product,
)
from splitcif.symmat.random_matrices import SplitMix64, random_pd, random_psd
from splitcif.symmat.sym_matrix import MatrixLike, SymMatrix, as_array

__all__ = [
    "CholeskyFactor",
    "MatrixLike",
    "SplitMix64",
    "SymMatrix",
    "as_array",
    "chol_logdet",
    "cholesky_factor",
    "clip_psd",
    "is_psd",
    "logdet_from_factor",
    "loewner_leq",
    "psd_sqrt",
    "random_pd",
    "random_psd",
    "spd_inverse",
    "spd_solve",
    "trace_product",
]
