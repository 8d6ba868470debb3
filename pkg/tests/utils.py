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

from pathlib import Path
from typing import Any, Optional

import numpy as np

from loguru import logger
from numpy.typing import NDArray

from splitcif.objective import SplitPair

CompareValue = NDArray[np.floating] | float | int | bool | str | None


def compare_dicts_with_tolerance(
    dict1: dict[str, CompareValue],
    dict2: dict[str, CompareValue],
    rtol: float = 1e-5,
    atol: float = 1e-8,
) -> bool:
    """
    Compare two dictionaries with values of types (NDArray, float, int, bool, str, None).

    Numerical values (arrays, floats, ints) are compared up to tolerance, strings, booleans and
    None exactly.

    Args:
        dict1: The first dictionary.
        dict2: The second dictionary.
        rtol: Relative tolerance for numerical comparison.
        atol: Absolute tolerance for numerical comparison.

    Returns:
        bool: True if the dictionaries are equivalent (up to tolerance), False otherwise.
    """
    # Check if keys are the same
    if dict1.keys() != dict2.keys():
        return False

    allowed_types = (np.ndarray, float, int, bool, str)
    for key in dict1:
        value1 = dict1[key]
        value2 = dict2[key]

        if (not (isinstance(value1, allowed_types) or value1 is None)
                or not (isinstance(value2, allowed_types) or value2 is None)):
            raise ValueError(
                'Dict values must be of type (np.ndarray, float, int, bool, str, None). '
                f'Invalid types ({type(value1)}, {type(value2)}) for key = \'{key}\'.'
            )

        # Catch if types are not the same
        if type(value1) != type(value2):
            logger.info(
                f"Dict value types not equal for key = '{key}': ({type(value1)}, {type(value2)})."
            )
            return False

        # Types are same. Handle None, str and bool exactly:
        if value1 is None:
            continue
        if isinstance(value1, (str, bool)):
            if value1 != value2:
                logger.info(f"Dict values not equal for key = '{key}': ({value1}, {value2}).")
                return False
            continue

        # Types are same and are one of (array, float, int). Compare up to tolerance:
        if np.shape(value1) != np.shape(value2) or not np.allclose(
            value1, value2, atol=atol, rtol=rtol
        ):
            logger.info(
                f"Dict values not equal for key = '{key}': ({value1}, {value2})."
            )
            return False

    return True


def json_to_compare_dict(payload: dict) -> dict[str, CompareValue]:
    """Convert the lists of a loaded JSON object to numpy arrays, leaving other values as is."""
    return {
        key: np.asarray(value, dtype=np.float64) if isinstance(value, list) else value
        for key, value in payload.items()
    }


def scenario_payload(
    pair: SplitPair, x1: Optional[list[float]] = None, x2: Optional[list[float]] = None
) -> dict[str, Any]:
    """Return the JSON scenario describing `pair`, with the matrices row-major."""
    payload: dict[str, Any] = {
        "n": pair.n,
        "P1d": pair.P1d.array.reshape(-1).tolist(),
        "P1i": pair.P1i.array.reshape(-1).tolist(),
        "P2d": pair.P2d.array.reshape(-1).tolist(),
        "P2i": pair.P2i.array.reshape(-1).tolist(),
    }
    if x1 is not None:
        payload["x1"] = list(x1)
    if x2 is not None:
        payload["x2"] = list(x2)
    return payload


def read_csv(path: Path) -> tuple[list[str], NDArray[np.floating]]:
    """Return the header and the numeric rows of a CSV written by the command-line interface."""
    header = Path(path).read_text().splitlines()[0].split(",")
    return header, np.atleast_2d(np.loadtxt(path, delimiter=",", skiprows=1))
