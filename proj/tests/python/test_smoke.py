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

import json
import os
import pathlib
from decimal import Decimal

import pytest

import optfolio

FIXTURES = pathlib.Path(
    os.environ.get("OPTFOLIO_FIXTURES", pathlib.Path(__file__).resolve().parents[2] / "fixtures")
)


@pytest.fixture(scope="module")
def chain():
    return optfolio.parse_chain((FIXTURES / "chain.csv").read_text(), "csv")


@pytest.fixture(scope="module")
def strategy():
    return optfolio.load_strategy((FIXTURES / "spec.json").read_text())


@pytest.fixture(scope="module")
def series(chain, strategy):
    return optfolio.select_series(
        chain, strategy["n"], strategy["call_anchor"], strategy["put_anchor"]
    )


def test_chain_round_trip(chain):
    assert chain.underlying_price == Decimal("8067.6")
    assert chain.expiry_date == "2016-05-25"
    assert len(chain.quotes) == 20
    assert optfolio.validate_chain(chain) == []
    again = optfolio.parse_chain(chain.serialize("json"), "json")
    assert again.quotes == chain.quotes


def test_series(series):
    assert series.n == 6
    assert series.call_strikes == [8050, 8150, 8250, 8350, 8400, 8500]
    assert series.put_strikes == [7850, 7950, 8050, 8150, 8250, 8350]
    assert len(series.unique_strikes()) == 8
    assert all(b < a for a, b in zip(series.call_asks, series.call_bids))


def test_payoff(series):
    calls = [1, 0, 0, 0, 0, 0]
    puts = [0] * 6
    assert optfolio.payoff(series, calls, puts, 8400) == Decimal(350)
    assert optfolio.payoff(series, calls, puts, "8000.5") == Decimal(0)
    curve = optfolio.payoff_curve(series, calls, puts)
    assert curve["right_tail_slope"] == 1
    assert curve["left_tail_slope"] == 0


def test_optimize(series, strategy):
    solution = optfolio.optimize(strategy["spec"], series, threads=2)
    assert solution is not None
    assert solution.combos_solved + solution.combos_infeasible == optfolio.combination_count(6)
    assert sum(solution.calls) == 0 and sum(solution.puts) == 0
    assert solution.total_contracts == sum(abs(x) for x in solution.calls + solution.puts)
    assert solution.payoff_curve["left_tail_slope"] == 0
    doc = json.loads(solution.to_json())
    assert doc["combo"] == solution.combo
    assert solution.objective > 0


def test_sweep(series, strategy):
    rows = optfolio.sweep_liquidity(strategy["spec"], series, [10, 1])
    assert [r["value"] for r in rows] == [1, 10]
    assert rows[0]["solution"] is None
    assert rows[1]["label"] == "|L|=U=10"
    costs = optfolio.sweep_cost(strategy["spec"], series, [Decimal("-100")])
    assert costs[0]["solution"].initial_cost == Decimal(-100)


def test_spec_and_errors(series):
    spec = optfolio.StrategySpec(
        expected_price=8400, inflection=8250, max_loss=-100, cost_target=0, cost_cmp="<="
    )
    assert spec.cost_target == ("<=", Decimal(0))
    with pytest.raises(optfolio.OptfolioError) as info:
        optfolio.StrategySpec(expected_price=8400, inflection=8250, max_loss=-100, lower=1)
    assert info.value.category == "spec"
    bad = optfolio.StrategySpec(expected_price=8400, inflection=8100, max_loss=-100)
    with pytest.raises(optfolio.OptfolioError, match="inflection-not-in-K"):
        optfolio.optimize(bad, series)
    with pytest.raises(optfolio.OptfolioError) as info:
        optfolio.parse_chain("underlying=1\n", "csv")
    assert info.value.category == "schema"
