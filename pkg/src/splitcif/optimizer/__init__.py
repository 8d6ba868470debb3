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

from splitcif.optimizer.minimize import GridScanResult, grid_scan, logdet_grid, minimize_w
from splitcif.optimizer.options import OptimizeOptions, OptimizeResult, Status
from splitcif.optimizer.search_factory import WSearchFactory
from splitcif.optimizer.search_strategies import (
    BisectionSearch,
    BoundedSearch,
    SearchOutcome,
    WSearch,
)

# Register the search strategies
search_constructors = WSearchFactory()
search_constructors.register_strategy("bisection", BisectionSearch)
search_constructors.register_strategy("bounded", BoundedSearch)

__all__ = [
    "BisectionSearch",
    "BoundedSearch",
    "GridScanResult",
    "OptimizeOptions",
    "OptimizeResult",
    "SearchOutcome",
    "Status",
    "WSearch",
    "WSearchFactory",
    "grid_scan",
    "logdet_grid",
    "minimize_w",
]
