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

"""A registry for w-search strategies."""
from splitcif.optimizer.search_strategies import WSearch


class WSearchFactory:
    """
    Factory class for w-search strategies.
    Allows dynamic registration of strategies under a method name.
    """

    _strategies: dict[str, type[WSearch]] = {}

    @classmethod
    def register_strategy(cls, method: str, strategy: type[WSearch]) -> None:
        """
        Register a new search strategy.

        Args:
            method (str): Name the strategy is selected by in OptimizeOptions.method.
            strategy (type[WSearch]): The strategy class.
        """
        cls._strategies[method] = strategy

    @classmethod
    def get_strategy(cls, method: str) -> type[WSearch]:
        """
        Retrieve the search strategy registered under the given method name.

        Args:
            method (str): The method name.

        Returns:
            type[WSearch]: The corresponding strategy class.
        """
        if method not in cls._strategies:
            raise NotImplementedError(
                f"The configured search method '{method}' is not registered. "
                f"Either register your own strategy with WSearchFactory or use one of the "
                f"following: {sorted(cls._strategies.keys())}"
            )
        return cls._strategies[method]

    @classmethod
    def methods(cls) -> list[str]:
        """Return the registered method names."""
        return sorted(cls._strategies.keys())
