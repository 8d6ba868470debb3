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

from splitcif.fusion.split_ci import (
    FusedMoments,
    SplitFusionResult,
    covariance_intersection,
    information_fusion,
    split_ci_fuse,
)
from splitcif.fusion.split_estimate import SplitEstimate

__all__ = [
    "FusedMoments",
    "SplitEstimate",
    "SplitFusionResult",
    "covariance_intersection",
    "information_fusion",
    "split_ci_fuse",
]
