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

// Terminal payoff, entry cost and profit of a static call/put portfolio, and
// its piecewise-linear shape over the strike grid.

#ifndef OPTFOLIO_PAYOFF_HPP_
#define OPTFOLIO_PAYOFF_HPP_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "optfolio/market_data.hpp"
#include "optfolio/money.hpp"

namespace optfolio {

// Signed contract counts per series slot: positive is long, negative short,
// zero means the contract is not held.
class Portfolio {
 public:
  // Throws Error(kBuilder) if the quantity vectors do not match series size.
  Portfolio(std::shared_ptr<const SeriesSelection> series,
            std::vector<std::int64_t> calls, std::vector<std::int64_t> puts);
  // The empty portfolio on `series`.
  explicit Portfolio(std::shared_ptr<const SeriesSelection> series);

  const SeriesSelection& series() const { return *series_; }
  const std::shared_ptr<const SeriesSelection>& series_ptr() const { return series_; }
  const std::vector<std::int64_t>& calls() const { return calls_; }
  const std::vector<std::int64_t>& puts() const { return puts_; }

  // Calls then puts, the slot order used by the optimization model.
  std::vector<std::int64_t> Slots() const;
  std::int64_t TotalContracts() const;

  // Quantity-wise sum; both operands must share the same series object.
  Portfolio operator+(const Portfolio& other) const;

  friend bool operator==(const Portfolio& a, const Portfolio& b) {
    return *a.series_ == *b.series_ && a.calls_ == b.calls_ && a.puts_ == b.puts_;
  }

 private:
  std::shared_ptr<const SeriesSelection> series_;
  std::vector<std::int64_t> calls_;
  std::vector<std::int64_t> puts_;
};

enum class Side { kBid, kAsk };

struct SlotPrice {
  Side side = Side::kBid;
  Money price;
};

// The premium paid or received per contract for every slot.
struct ComboPrices {
  std::vector<SlotPrice> calls;
  std::vector<SlotPrice> puts;
};

// Ask for long slots, bid otherwise.
ComboPrices MarketPrices(const Portfolio& portfolio);

// Sum of x * (price - k)^+ over calls and x * (k - price)^+ over puts.
Money Payoff(const Portfolio& portfolio, Money price);

// Net premium to open the position; positive is a debit. A long slot priced
// at the bid or a short slot priced at the ask throws Error(kConsistency).
// Zero slots contribute nothing and may carry either side.
Money InitialCost(const Portfolio& portfolio, const ComboPrices& prices);

Money Pnl(const Portfolio& portfolio, const ComboPrices& prices, Money price);

// Sorted union of call and put strikes.
std::vector<Strike> UniqueStrikes(const SeriesSelection& series);

// Slope of the payoff, in money per index point, on one piece of the strike
// grid. Interval 0 is the left tail, m the right tail (m = number of unique
// strikes) and q in [1, m-1] is [k_q, k_{q+1}] with 1-based k.
std::int64_t IntervalSlope(const Portfolio& portfolio, std::size_t interval);

struct PayoffCurve {
  std::vector<Strike> breakpoints;
  std::vector<Money> values;
  std::int64_t left_tail_slope = 0;
  std::int64_t right_tail_slope = 0;
  std::vector<std::int64_t> interval_slopes;

  // Evaluates the piecewise-linear curve at any price.
  Money ValueAt(Money price) const;
  // `price,value` rows at every breakpoint plus one sample a strike spacing
  // beyond each end.
  std::string ToCsv() const;
};

PayoffCurve ComputePayoffCurve(const Portfolio& portfolio);

}  // namespace optfolio

#endif  // OPTFOLIO_PAYOFF_HPP_
