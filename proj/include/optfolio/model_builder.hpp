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

// Compiles investor parameters and one ask/bid assignment per contract into
// a bounded integer program.
//
// Variables are the 2n contract counts, calls first. Fixing the price side
// of every slot turns the piecewise entry cost into a linear one: an ask slot
// may only be long ([0, U]) and a bid slot only short ([L, 0]). Rows, in
// emission order:
//   tail-sum:call, tail-sum:put     flat payoff beyond the outer strikes
//   slope:<k_q>-<k_{q+1}>           rising up to the inflection, falling after
//   tail-loss:left, tail-loss:right tail level pinned to the max-loss level
//   positivity                      value at the forecast price >= epsilon
//   cost                            optional entry cost target

#ifndef OPTFOLIO_MODEL_BUILDER_HPP_
#define OPTFOLIO_MODEL_BUILDER_HPP_

#include <cstdint>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include "optfolio/ilp_problem.hpp"
#include "optfolio/market_data.hpp"
#include "optfolio/money.hpp"
#include "optfolio/payoff.hpp"

namespace optfolio {

enum class TailLossMode {
  kPnl,         // tail payoff minus entry cost equals max_loss
  kPayoffOnly,  // tail payoff equals -max_loss
};

struct CostTarget {
  Relation relation = Relation::kEq;
  Money value;  // entry cost, positive = debit
};

struct StrategySpec {
  Money expected_price;
  Strike inflection = 0;
  Money max_loss;
  std::optional<CostTarget> cost_target;
  std::int64_t lower = -10;
  std::int64_t upper = 10;
  Money epsilon = Money::FromCents(1);
  TailLossMode tail_loss_mode = TailLossMode::kPnl;
  bool balance_left_tail = true;
  bool balance_right_tail = true;

  // Series-independent checks; throws Error(kSpec).
  void Validate() const;
};

// One ask/bid choice per slot. The index is the big-endian bit string
// call_sides[0..n) then put_sides[0..n), ask = 1.
struct PriceCombination {
  std::vector<Side> call_sides;
  std::vector<Side> put_sides;
  std::uint64_t index = 0;

  static PriceCombination FromIndex(std::size_t n, std::uint64_t index);
  std::size_t size() const { return call_sides.size(); }
  // "1010..", most significant slot first.
  std::string BitString() const;

  friend bool operator==(const PriceCombination&, const PriceCombination&) = default;
};

// Number of combinations for n slots per right; throws Error(kCapacity)
// when 2^(2n) does not fit the index type.
std::uint64_t CombinationCount(std::size_t n);

// Restartable, index-ordered view over a contiguous range of combinations.
class CombinationRange {
 public:
  class Iterator {
   public:
    using value_type = PriceCombination;
    using difference_type = std::ptrdiff_t;
    using iterator_category = std::input_iterator_tag;

    Iterator() = default;
    Iterator(std::size_t n, std::uint64_t index) : n_(n), index_(index) {}
    PriceCombination operator*() const { return PriceCombination::FromIndex(n_, index_); }
    Iterator& operator++() {
      ++index_;
      return *this;
    }
    Iterator operator++(int) {
      Iterator copy = *this;
      ++index_;
      return copy;
    }
    friend bool operator==(const Iterator& a, const Iterator& b) {
      return a.index_ == b.index_;
    }

   private:
    std::size_t n_ = 0;
    std::uint64_t index_ = 0;
  };

  CombinationRange(std::size_t n, std::uint64_t first, std::uint64_t last)
      : n_(n), first_(first), last_(last) {}

  Iterator begin() const { return {n_, first_}; }
  Iterator end() const { return {n_, last_}; }
  std::uint64_t size() const { return last_ - first_; }

 private:
  std::size_t n_;
  std::uint64_t first_;
  std::uint64_t last_;
};

// All 2^(2n) combinations in increasing index order.
CombinationRange EnumerateCombinations(std::size_t n);

// The prices a combination assigns to every slot of `series`.
ComboPrices PricesFor(const SeriesSelection& series, const PriceCombination& combo);

// Throws Error(kSpec, "inflection-not-in-K") when the inflection strike is
// not one of the series strikes, Error(kBuilder) on a length mismatch.
IlpProblem BuildSubproblem(const StrategySpec& spec, const SeriesSelection& series,
                           const PriceCombination& combo);

// Feasibility of a portfolio against a compiled subproblem.
std::vector<RowViolation> CheckFeasible(const Portfolio& portfolio,
                                        const IlpProblem& problem);

}  // namespace optfolio

#endif  // OPTFOLIO_MODEL_BUILDER_HPP_
