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

from splitcif.proofcheck.families import (
    CallableMatrixFamily,
    MatrixFamily,
    SplitCovarianceFamily,
    jacobi_convergence,
    jacobi_residual,
)
from splitcif.proofcheck.fixtures import AdmissibleTriple, admissible_triple, random_split_pair
from splitcif.proofcheck.lemmas import (
    Lemma5Gap,
    P3IdentityResiduals,
    TBoundGaps,
    chain_residual,
    cyclic_trace_residual,
    lemma4_trace,
    lemma5_gap,
    p3_identity_residuals,
    t_bound_gaps,
)
from splitcif.proofcheck.suite import CheckSummary, VerifyConfig, VerifyReport, run_verification

__all__ = [
    "AdmissibleTriple",
    "CallableMatrixFamily",
    "CheckSummary",
    "Lemma5Gap",
    "MatrixFamily",
    "P3IdentityResiduals",
    "SplitCovarianceFamily",
    "TBoundGaps",
    "VerifyConfig",
    "VerifyReport",
    "admissible_triple",
    "chain_residual",
    "cyclic_trace_residual",
    "jacobi_convergence",
    "jacobi_residual",
    "lemma4_trace",
    "lemma5_gap",
    "p3_identity_residuals",
    "random_split_pair",
    "run_verification",
    "t_bound_gaps",
]
