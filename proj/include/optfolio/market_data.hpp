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

// Option chain snapshots: ingestion, validation and strike-series selection.

#ifndef OPTFOLIO_MARKET_DATA_HPP_
#define OPTFOLIO_MARKET_DATA_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "optfolio/money.hpp"

namespace optfolio {

// Strikes are whole index points.
using Strike = std::int64_t;

enum class Right { kCall, kPut };

std::string_view RightName(Right right);
std::optional<Right> ParseRight(std::string_view text);

// One listed contract. A side that is not quoted is absent; the strict
// bid < ask ordering is checked by ValidateChain, not on construction.
struct OptionQuote {
  Strike strike = 0;
  Right right = Right::kCall;
  std::optional<Money> bid;
  std::optional<Money> ask;
  std::int64_t volume = 0;

  friend bool operator==(const OptionQuote&, const OptionQuote&) = default;
};

// Immutable snapshot of one expiry. Quotes are unique per (strike, right)
// and iterate in (right, strike) order.
class OptionChain {
 public:
  using Key = std::pair<Right, Strike>;

  // Throws Error(kSchema) on bad header values or an empty quote list,
  // Error(kDuplicateQuote) on a repeated (strike, right) and Error(kParse)
  // on an out-of-domain quote field.
  OptionChain(Money underlying_price, Date valuation_date, Date expiry_date,
              std::vector<OptionQuote> quotes);

  Money underlying_price() const { return underlying_price_; }
  Date valuation_date() const { return valuation_date_; }
  Date expiry_date() const { return expiry_date_; }
  const std::map<Key, OptionQuote>& quotes() const { return quotes_; }

  const OptionQuote* Find(Strike strike, Right right) const;
  // Listed strikes for one right, ascending.
  std::vector<Strike> Strikes(Right right) const;

  friend bool operator==(const OptionChain&, const OptionChain&) = default;

 private:
  Money underlying_price_;
  Date valuation_date_;
  Date expiry_date_;
  std::map<Key, OptionQuote> quotes_;
};

enum class ChainFormat { kCsv, kJson };

// CSV: `underlying=`, `valuation=`, `expiry=` header lines followed by
// `strike,right,bid,ask,volume` records (an optional column header line
// starting with "strike" is skipped; blank lines and `#` comments are
// ignored). JSON: {"underlying", "valuation", "expiry", "quotes": [...]}.
OptionChain ParseChain(std::string_view source, ChainFormat format);
std::string SerializeChain(const OptionChain& chain, ChainFormat format);

enum class ViolationKind {
  kBidNotBelowAsk,
  kCallAskNotDecreasing,
  kCallBidNotDecreasing,
  kPutAskNotIncreasing,
  kPutBidNotIncreasing,
};

struct ChainViolation {
  ViolationKind kind;
  Right right;
  Strike strike;  // the offending strike (the higher one for ordering checks)
  std::string message;
};

using ValidationReport = std::vector<ChainViolation>;

// Reports quote-level and across-strike price ordering problems. Sides that
// are not quoted are skipped. An empty report means the chain is valid.
ValidationReport ValidateChain(const OptionChain& chain);

// Aligned call and put strike ladders of equal length n, with the prices
// the model consumes. Strikes ascend strictly and bid < ask everywhere.
struct SeriesSelection {
  std::vector<Strike> call_strikes;
  std::vector<Money> call_asks;
  std::vector<Money> call_bids;
  std::vector<Strike> put_strikes;
  std::vector<Money> put_asks;
  std::vector<Money> put_bids;

  std::size_t size() const { return call_strikes.size(); }

  // Throws Error(kSelection) when lengths differ, strikes do not ascend,
  // a strike is not positive or bid >= ask.
  void Validate() const;

  friend bool operator==(const SeriesSelection&, const SeriesSelection&) =
      default;
};

// Takes n consecutive listed call strikes starting at call_anchor and n
// consecutive listed put strikes starting at put_anchor.
SeriesSelection SelectSeries(const OptionChain& chain, std::size_t n,
                             Strike call_anchor, Strike put_anchor);

}  // namespace optfolio

#endif  // OPTFOLIO_MARKET_DATA_HPP_
