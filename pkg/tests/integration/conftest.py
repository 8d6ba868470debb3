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

import json
from pathlib import Path
from typing import Callable, Optional

import pytest

from splitcif.objective import SplitPair
from tests.utils import scenario_payload

ScenarioWriter = Callable[..., Path]


@pytest.fixture
def write_scenario(tmp_path: Path) -> ScenarioWriter:
    """Return a function writing a scenario file in the test directory."""

    def _write(
        pair: SplitPair,
        x1: Optional[list[float]] = None,
        x2: Optional[list[float]] = None,
        name: str = "scenario.json",
    ) -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(scenario_payload(pair, x1, x2)))
        return path

    return _write
