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

#include "optfolio/payoff.hpp"

#include <algorithm>
#include <sstream>

#include "optfolio/error.hpp"

namespace optfolio {

Portfolio::Portfolio(std::shared_ptr<const SeriesSelection> series,
                     std::vector<std::int64_t> calls, std::vector<std::int64_t> puts)
    : series_(std::move(series)), calls_(std::move(calls)), puts_(std::move(puts)) {
  if (!series_) throw Error(ErrorCategory::kBuilder, "portfolio without series");
  if (calls_.size() != series_->size() || puts_.size() != series_->size()) {
    throw Error(ErrorCategory::kBuilder,
                "portfolio has " + std::to_string(calls_.size()) + " calls and " +
                    std::to_string(puts_.size()) + " puts for a series of " +
                    std::to_string(series_->size()));
  }
}

Portfolio::Portfolio(std::shared_ptr<const SeriesSelection> series)
    : Portfolio(series, std::vector<std::int64_t>(series ? series->size() : 0),
                std::vector<std::int64_t>(series ? series->size() : 0)) {}

std::vector<std::int64_t> Portfolio::Slots() const {
  std::vector<std::int64_t> out(calls_);
  out.insert(out.end(), puts_.begin(), puts_.end());
  return out;
}

std::int64_t Portfolio::TotalContracts() const {
  std::int64_t total = 0;
  for (std::int64_t x : calls_) total += x < 0 ? -x : x;
  for (std::int64_t x : puts_) total += x < 0 ? -x : x;
  return total;
}

Portfolio Portfolio::operator+(const Portfolio& other) const {
  if (series_ != other.series_ && !(*series_ == *other.series_)) {
    throw Error(ErrorCategory::kBuilder, "cannot add portfolios on different series");
  }
  Portfolio sum(*this);
  for (std::size_t i = 0; i < calls_.size(); ++i) {
    sum.calls_[i] += other.calls_[i];
    sum.puts_[i] += other.puts_[i];
  }
  return sum;
}

ComboPrices MarketPrices(const Portfolio& portfolio) {
  const SeriesSelection& s = portfolio.series();
  ComboPrices out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    out.calls.push_back(portfolio.calls()[i] > 0 ? SlotPrice{Side::kAsk, s.call_asks[i]}
                                                 : SlotPrice{Side::kBid, s.call_bids[i]});
    out.puts.push_back(portfolio.puts()[i] > 0 ? SlotPrice{Side::kAsk, s.put_asks[i]}
                                               : SlotPrice{Side::kBid, s.put_bids[i]});
  }
  return out;
}

Money Payoff(const Portfolio& portfolio, Money price) {
  const SeriesSelection& s = portfolio.series();
  Money total;
  for (std::size_t i = 0; i < s.size(); ++i) {
    total += portfolio.calls()[i] * PositivePart(price - Money::FromUnits(s.call_strikes[i]));
    total += portfolio.puts()[i] * PositivePart(Money::FromUnits(s.put_strikes[i]) - price);
  }
  return total;
}

Money InitialCost(const Portfolio& portfolio, const ComboPrices& prices) {
  const std::size_t n = portfolio.series().size();
  if (prices.calls.size() != n || prices.puts.size() != n) {
    throw Error(ErrorCategory::kConsistency, "price vector length does not match series");
  }
  Money total;
  auto add = [&](std::int64_t x, const SlotPrice& p, Right right, std::size_t i) {
    if ((x > 0 && p.side != Side::kAsk) || (x < 0 && p.side != Side::kBid)) {
      throw Error(ErrorCategory::kConsistency,
                  std::string(x > 0 ? "long " : "short ") + std::string(RightName(right)) +
                      " slot " + std::to_string(i) + " priced at the " +
                      (p.side == Side::kAsk ? "ask" : "bid"));
    }
    total += x * p.price;
  };
  for (std::size_t i = 0; i < n; ++i) {
    add(portfolio.calls()[i], prices.calls[i], Right::kCall, i);
    add(portfolio.puts()[i], prices.puts[i], Right::kPut, i);
  }
  return total;
}

Money Pnl(const Portfolio& portfolio, const ComboPrices& prices, Money price) {
  return Payoff(portfolio, price) - InitialCost(portfolio, prices);
}

std::vector<Strike> UniqueStrikes(const SeriesSelection& series) {
  std::vector<Strike> k(series.call_strikes);
  k.insert(k.end(), series.put_strikes.begin(), series.put_strikes.end());
  std::sort(k.begin(), k.end());
  k.erase(std::unique(k.begin(), k.end()), k.end());
  return k;
}

std::int64_t IntervalSlope(const Portfolio& portfolio, std::size_t interval) {
  const SeriesSelection& s = portfolio.series();
  const std::vector<Strike> k = UniqueStrikes(s);
  const std::size_t m = k.size();
  if (interval > m) {
    throw Error(ErrorCategory::kBuilder, "interval " + std::to_string(interval) +
                                             " out of range [0, " + std::to_string(m) + "]");
  }
  std::int64_t slope = 0;
  if (interval == 0) {
    for (std::int64_t x : portfolio.puts()) slope -= x;
    return slope;
  }
  if (interval == m) {
    for (std::int64_t x : portfolio.calls()) slope += x;
    return slope;
  }
  const Strike lo = k[interval - 1];
  const Strike hi = k[interval];
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.call_strikes[i] <= lo) slope += portfolio.calls()[i];
    if (s.put_strikes[i] >= hi) slope -= portfolio.puts()[i];
  }
  return slope;
}

PayoffCurve ComputePayoffCurve(const Portfolio& portfolio) {
  PayoffCurve curve;
  curve.breakpoints = UniqueStrikes(portfolio.series());
  const std::size_t m = curve.breakpoints.size();
  for (Strike k : curve.breakpoints) curve.values.push_back(Payoff(portfolio, Money::FromUnits(k)));
  curve.left_tail_slope = IntervalSlope(portfolio, 0);
  curve.right_tail_slope = IntervalSlope(portfolio, m);
  for (std::size_t q = 1; q < m; ++q) curve.interval_slopes.push_back(IntervalSlope(portfolio, q));
  return curve;
}

Money PayoffCurve::ValueAt(Money price) const {
  if (breakpoints.empty()) return Money();
  auto at = [](Strike k) { return Money::FromUnits(k); };
  if (price <= at(breakpoints.front())) {
    return values.front() - left_tail_slope * (at(breakpoints.front()) - price);
  }
  if (price >= at(breakpoints.back())) {
    return values.back() + right_tail_slope * (price - at(breakpoints.back()));
  }
  auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), price,
                             [&](Money p, Strike k) { return p < at(k); });
  std::size_t q = static_cast<std::size_t>(it - breakpoints.begin()) - 1;
  return values[q] + interval_slopes[q] * (price - at(breakpoints[q]));
}

std::string PayoffCurve::ToCsv() const {
  std::ostringstream out;
  out << "price,value\n";
  if (breakpoints.empty()) return out.str();
  const std::size_t m = breakpoints.size();
  Strike left_step = m > 1 ? breakpoints[1] - breakpoints[0] : std::max<Strike>(1, breakpoints[0] / 100);
  Strike right_step = m > 1 ? breakpoints[m - 1] - breakpoints[m - 2] : left_step;
  auto row = [&](Money price) { out << price << "," << ValueAt(price) << "\n"; };
  row(Money::FromUnits(breakpoints.front() - left_step));
  for (std::size_t q = 0; q < m; ++q) out << breakpoints[q] << "," << values[q] << "\n";
  row(Money::FromUnits(breakpoints.back() + right_step));
  return out.str();
}

}  // namespace optfolio
