// Copyright 2026 The optfolio Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "optfolio/model_builder.hpp"

#include <algorithm>

#include "optfolio/error.hpp"

namespace optfolio {

void StrategySpec::Validate() const {
  auto fail = [](const std::string& why) { throw Error(ErrorCategory::kSpec, why); };
  if (expected_price <= Money()) fail("expected-price-not-positive");
  if (!(lower < 0)) fail("lower-bound-not-negative");
  if (!(upper > 0)) fail("upper-bound-not-positive");
  if (epsilon <= Money()) fail("epsilon-not-positive");
  if (inflection <= 0) fail("inflection-not-positive");
}

PriceCombination PriceCombination::FromIndex(std::size_t n, std::uint64_t index) {
  if (index >= CombinationCount(n)) {
    throw Error(ErrorCategory::kCapacity, "combination index " + std::to_string(index) +
                                              " out of range for n=" + std::to_string(n));
  }
  PriceCombination c;
  c.index = index;
  c.call_sides.resize(n);
  c.put_sides.resize(n);
  const std::size_t slots = 2 * n;
  for (std::size_t s = 0; s < slots; ++s) {
    Side side = ((index >> (slots - 1 - s)) & 1U) ? Side::kAsk : Side::kBid;
    (s < n ? c.call_sides[s] : c.put_sides[s - n]) = side;
  }
  return c;
}

std::string PriceCombination::BitString() const {
  std::string out;
  for (Side s : call_sides) out += s == Side::kAsk ? '1' : '0';
  for (Side s : put_sides) out += s == Side::kAsk ? '1' : '0';
  return out;
}

std::uint64_t CombinationCount(std::size_t n) {
  if (2 * n >= 64) {
    throw Error(ErrorCategory::kCapacity,
                "2^" + std::to_string(2 * n) + " combinations exceed the index type");
  }
  return std::uint64_t{1} << (2 * n);
}

CombinationRange EnumerateCombinations(std::size_t n) {
  return CombinationRange(n, 0, CombinationCount(n));
}

ComboPrices PricesFor(const SeriesSelection& series, const PriceCombination& combo) {
  if (combo.size() != series.size()) {
    throw Error(ErrorCategory::kBuilder, "combination has " + std::to_string(combo.size()) +
                                             " slots per right, series has " +
                                             std::to_string(series.size()));
  }
  ComboPrices out;
  for (std::size_t i = 0; i < series.size(); ++i) {
    Side cs = combo.call_sides[i];
    Side ps = combo.put_sides[i];
    out.calls.push_back({cs, cs == Side::kAsk ? series.call_asks[i] : series.call_bids[i]});
    out.puts.push_back({ps, ps == Side::kAsk ? series.put_asks[i] : series.put_bids[i]});
  }
  return out;
}

IlpProblem BuildSubproblem(const StrategySpec& spec, const SeriesSelection& series,
                           const PriceCombination& combo) {
  spec.Validate();
  const std::vector<Strike> strikes = UniqueStrikes(series);
  if (!std::binary_search(strikes.begin(), strikes.end(), spec.inflection)) {
    throw Error(ErrorCategory::kSpec, "inflection-not-in-K");
  }
  const ComboPrices prices = PricesFor(series, combo);
  const std::size_t n = series.size();
  const std::size_t slots = 2 * n;
  auto units = [](Strike k) { return Money::FromUnits(k); };
  // Per-slot price, strike and payoff kind in model slot order.
  auto slot_price = [&](std::size_t s) {
    return s < n ? prices.calls[s].price : prices.puts[s - n].price;
  };
  auto slot_payoff = [&](std::size_t s, Money at) {
    return s < n ? PositivePart(at - units(series.call_strikes[s]))
                 : PositivePart(units(series.put_strikes[s - n]) - at);
  };

  IlpProblem p;
  p.objective.resize(slots);
  for (std::size_t s = 0; s < slots; ++s) {
    p.objective[s] = slot_payoff(s, spec.expected_price) - slot_price(s);
    Side side = s < n ? combo.call_sides[s] : combo.put_sides[s - n];
    p.bounds.push_back(side == Side::kAsk ? VariableBounds{0, spec.upper}
                                          : VariableBounds{spec.lower, 0});
  }

  const Money one = Money::FromUnits(1);
  auto zero_row = [&](std::string id, Relation rel, Money rhs) {
    return LinearRow{std::move(id), std::vector<Money>(slots), rel, rhs};
  };

  LinearRow call_sum = zero_row("tail-sum:call", Relation::kEq, Money());
  LinearRow put_sum = zero_row("tail-sum:put", Relation::kEq, Money());
  for (std::size_t i = 0; i < n; ++i) {
    call_sum.coeffs[i] = one;
    put_sum.coeffs[n + i] = one;
  }
  p.rows.push_back(std::move(call_sum));
  p.rows.push_back(std::move(put_sum));

  for (std::size_t q = 0; q + 1 < strikes.size(); ++q) {
    const Strike lo = strikes[q];
    const Strike hi = strikes[q + 1];
    LinearRow row = zero_row("slope:" + std::to_string(lo) + "-" + std::to_string(hi),
                             lo <= spec.inflection ? Relation::kGe : Relation::kLe, Money());
    for (std::size_t i = 0; i < n; ++i) {
      if (series.call_strikes[i] <= lo) row.coeffs[i] = one;
      if (series.put_strikes[i] >= hi) row.coeffs[n + i] = -one;
    }
    p.rows.push_back(std::move(row));
  }

  // Value rows: payoff at a price, optionally net of the entry cost.
  const bool net_of_cost = spec.tail_loss_mode == TailLossMode::kPnl;
  auto value_row = [&](std::string id, Money at, Relation rel, Money rhs) {
    LinearRow row = zero_row(std::move(id), rel, rhs);
    for (std::size_t s = 0; s < slots; ++s) {
      row.coeffs[s] = slot_payoff(s, at) - (net_of_cost ? slot_price(s) : Money());
    }
    return row;
  };
  const Money tail_level = net_of_cost ? spec.max_loss : -spec.max_loss;
  if (spec.balance_left_tail) {
    p.rows.push_back(value_row("tail-loss:left", units(strikes.front()), Relation::kEq, tail_level));
  }
  if (spec.balance_right_tail) {
    p.rows.push_back(value_row("tail-loss:right", units(strikes.back()), Relation::kEq, tail_level));
  }
  p.rows.push_back(value_row("positivity", spec.expected_price, Relation::kGe, spec.epsilon));

  if (spec.cost_target) {
    LinearRow row = zero_row("cost", spec.cost_target->relation, spec.cost_target->value);
    for (std::size_t s = 0; s < slots; ++s) row.coeffs[s] = slot_price(s);
    p.rows.push_back(std::move(row));
  }
  return p;
}

std::vector<RowViolation> CheckFeasible(const Portfolio& portfolio, const IlpProblem& problem) {
  const std::vector<std::int64_t> x = portfolio.Slots();
  return CheckFeasible(std::span<const std::int64_t>(x), problem);
}

}  // namespace optfolio
