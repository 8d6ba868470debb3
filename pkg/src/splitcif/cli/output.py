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
File output of the command-line interface.

Reals are written with 17 significant digits, which round-trips every binary64 value exactly.
"""
from __future__ import annotations

import json
import math
import re
from collections.abc import Mapping, Sequence
from enum import Enum
from pathlib import Path
from typing import Any

import numpy as np
from numpy.typing import ArrayLike

REAL_FORMAT = ".17g"

# json.dumps escapes the tag, so a tagged real is the only string starting with \u001f.
_REAL_TAG = "\x1f"
_TAGGED_REAL = re.compile(r'"\\u001f(?P<real>[^"]*)"')


def format_real(value: float) -> str:
    """Return the 17-significant-digit representation of a finite real."""
    if not math.isfinite(value):
        raise ValueError(f"Cannot serialize the non-finite value {value}.")
    return format(float(value), REAL_FORMAT)


def _tag_reals(value: Any) -> Any:
    """Convert a payload to JSON-native types, replacing every real by a tagged string."""
    if isinstance(value, (np.ndarray, np.generic)):
        value = value.tolist()
    if isinstance(value, Enum):
        value = value.value
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, float):
        return _REAL_TAG + format_real(value)
    if isinstance(value, Mapping):
        return {str(key): _tag_reals(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_tag_reals(item) for item in value]
    raise TypeError(f"Cannot serialize a value of type {type(value).__name__}.")


def encode_json(value: Any, indent: int = 2) -> str:
    """
    Encode nested mappings, sequences, numpy arrays and scalars as JSON text.

    Floats go through `format_real`; numpy arrays are written as (nested) lists.
    """
    text = json.dumps(_tag_reals(value), indent=indent)
    return _TAGGED_REAL.sub(lambda match: match.group("real"), text)


def write_json(path: Path, payload: Mapping[str, Any]) -> None:
    """Write a JSON object with 17-significant-digit reals."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(encode_json(payload) + "\n")


def write_csv(path: Path, header: Sequence[str], rows: ArrayLike) -> None:
    """Write a numeric table with a single header line and 17-significant-digit reals."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    np.savetxt(
        path,
        np.atleast_2d(np.asarray(rows, dtype=np.float64)),
        fmt="%.17g",
        delimiter=",",
        header=",".join(header),
        comments="",
    )
