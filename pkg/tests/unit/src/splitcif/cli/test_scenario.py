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

import numpy as np
import pytest
from pydantic import ValidationError

from splitcif.cli import ScenarioFile, load_scenario

SCALAR_SCENARIO = {"n": 1, "P1d": [1.0], "P1i": [1.0], "P2d": [1.0], "P2i": [1.0]}


def test_scenario_to_split_pair() -> None:
    scenario = ScenarioFile(
        n=2,
        P1d=[2.0, 0.5, 0.5, 1.0],
        P1i=[1.0, 0.0, 0.0, 1.0],
        P2d=[0.0, 0.0, 0.0, 0.0],
        P2i=[1.0, 0.2, 0.2, 3.0],
    )
    pair = scenario.to_split_pair()
    np.testing.assert_array_equal(pair.P1d.array, [[2.0, 0.5], [0.5, 1.0]])
    assert pair.dependent_is_zero(2)


def test_scenario_to_estimates() -> None:
    first, second = ScenarioFile(**SCALAR_SCENARIO, x1=[0.0], x2=[2.0]).to_estimates()
    assert first.x[0] == 0.0
    assert second.x[0] == 2.0
    assert second.cov_i.array[0, 0] == 1.0
    with pytest.raises(ValueError, match="both x1 and x2"):
        ScenarioFile(**SCALAR_SCENARIO, x1=[0.0]).to_estimates()


@pytest.mark.parametrize(
    "changes, message",
    [
        ({"n": 0}, "n must be positive"),
        ({"P1i": [1.0, 0.0]}, r"P1i must hold n \* n = 1 row-major values, got 2"),
        ({"x2": [1.0, 2.0]}, "x2 must hold n = 1 values"),
        ({"P2d": [-1.0]}, "do not form a valid split pair"),
        ({"P1d": [0.0], "P1i": [0.0]}, "do not form a valid split pair"),
        ({"P1d": ["a"]}, "P1d"),
        ({"extra": 1}, "extra"),
    ],
)
def test_scenario_validation_names_offending_field(changes: dict, message: str) -> None:
    with pytest.raises(ValidationError, match=message):
        ScenarioFile(**{**SCALAR_SCENARIO, **changes})


def test_load_scenario(tmp_path: Path) -> None:
    path = tmp_path / "scenario.json"
    path.write_text(json.dumps({**SCALAR_SCENARIO, "x1": [0.0], "x2": [1.0]}))
    scenario = load_scenario(path)
    assert scenario.n == 1
    assert scenario.x2 == [1.0]


def test_load_scenario_errors(tmp_path: Path) -> None:
    with pytest.raises(OSError):
        load_scenario(tmp_path / "missing.json")
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    with pytest.raises(ValidationError):
        load_scenario(path)
