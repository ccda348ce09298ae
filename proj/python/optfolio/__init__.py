# Copyright 2026 The optfolio Authors
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Option portfolios with a prescribed piecewise-linear payoff.

Money values are returned as ``decimal.Decimal`` and accepted as int, str,
Decimal or float.
"""

from ._core import (
    OptfolioError,
    OptionChain,
    PortfolioSolution,
    SeriesSelection,
    StrategySpec,
    combination_count,
    load_strategy,
    optimize,
    parse_chain,
    payoff,
    payoff_curve,
    select_series,
    sweep_cost,
    sweep_liquidity,
    validate_chain,
)

__all__ = [
    "OptfolioError",
    "OptionChain",
    "PortfolioSolution",
    "SeriesSelection",
    "StrategySpec",
    "combination_count",
    "load_strategy",
    "optimize",
    "parse_chain",
    "payoff",
    "payoff_curve",
    "select_series",
    "sweep_cost",
    "sweep_liquidity",
    "validate_chain",
]
