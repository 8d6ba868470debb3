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

"""This module contains the base classes for all pydantic data models of the package."""

from pydantic import BaseModel, ConfigDict  # pylint: disable=E0401


class PydanticBaseModel(BaseModel):  # pylint: disable=too-few-public-methods
    """A base class for configs and records which forbids extra fields and allows numpy arrays."""

    model_config = ConfigDict(extra="forbid", arbitrary_types_allowed=True)


class FrozenPydanticBaseModel(PydanticBaseModel):  # pylint: disable=too-few-public-methods
    """
    Immutable variant of PydanticBaseModel.

    Used for the numerical value types (matrices, split pairs, evaluation records) which are shared
    between evaluations and must not be modified after validation.
    """

    model_config = ConfigDict(extra="forbid", arbitrary_types_allowed=True, frozen=True)
