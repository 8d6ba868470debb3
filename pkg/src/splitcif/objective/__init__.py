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

from splitcif.objective.derivatives import (
    DecomposedSecondDerivative,
    DetDerivatives,
    convexity_lower_bound,
    d1_logdet,
    d2_logdet_decomposed,
    d2_logdet_direct,
    det_derivatives,
    intermediate_bound,
)
from splitcif.objective.evaluation import WEvaluation, evaluate
from splitcif.objective.family import (
    FamilyValue,
    SplitFamilyPoint,
    boundary_limit,
    check_open_unit,
    eval_family,
    logdet_objective,
)
from splitcif.objective.split_pair import PSD_TOLERANCE, ZERO_THRESHOLD, SplitPair

__all__ = [
    "PSD_TOLERANCE",
    "ZERO_THRESHOLD",
    "DecomposedSecondDerivative",
    "DetDerivatives",
    "FamilyValue",
    "SplitFamilyPoint",
    "SplitPair",
    "WEvaluation",
    "boundary_limit",
    "check_open_unit",
    "convexity_lower_bound",
    "d1_logdet",
    "d2_logdet_decomposed",
    "d2_logdet_direct",
    "det_derivatives",
    "eval_family",
    "evaluate",
    "intermediate_bound",
    "logdet_objective",
]
