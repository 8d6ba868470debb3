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

"""Exceptions raised by the splitcif library."""
from numpy.linalg import LinAlgError


class SplitCIError(Exception):
    """Base class for all errors raised by splitcif."""


class NotPositiveDefinite(SplitCIError, LinAlgError):
    """A Cholesky factorization met a non-positive pivot."""


class DimensionMismatch(SplitCIError, ValueError):
    """Operands have incompatible shapes."""


class InvalidRank(SplitCIError, ValueError):
    """Requested rank is outside [0, n]."""


class NotPsd(SplitCIError, ValueError):
    """A matrix expected to be positive semi-definite is not."""


class PreconditionViolated(SplitCIError, ValueError):
    """A Loewner-order precondition of a lemma check failed."""


class MaxIterExceeded(SplitCIError, RuntimeError):
    """The w-search did not reach the requested interval width."""
