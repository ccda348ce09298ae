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

// Solves every ask/bid subproblem and keeps the most profitable portfolio;
// parameter sweeps over the entry cost target and the liquidity bound.

#ifndef OPTFOLIO_OPTIMIZER_HPP_
#define OPTFOLIO_OPTIMIZER_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "optfolio/market_data.hpp"
#include "optfolio/model_builder.hpp"
#include "optfolio/money.hpp"
#include "optfolio/payoff.hpp"

namespace optfolio {

struct PortfolioSolution {
  Portfolio portfolio;
  PriceCombination combo;
  Money objective;  // profit at the expected price
  Money initial_cost;
  std::int64_t total_contracts = 0;
  PayoffCurve payoff_curve;
  std::uint64_t combos_solved = 0;
  std::uint64_t combos_infeasible = 0;
};

struct OptimizeOptions {
  // Worker threads; 0 uses the hardware concurrency.
  unsigned threads = 1;
  std::uint64_t node_limit = 10'000'000;
};

struct OptimizeResult {
  std::optional<PortfolioSolution> solution;
  std::uint64_t combos_solved = 0;      // subproblems with a feasible optimum
  std::uint64_t combos_infeasible = 0;  // subproblems with no integer point
};

// Ties on profit go to the lowest combination index; within a combination
// the solver already returns the lexicographically smallest optimum. The
// result does not depend on the thread count. A node-limit failure in any
// subproblem is rethrown as Error(kResource) naming the lowest failing
// combination index.
OptimizeResult Optimize(const StrategySpec& spec,
                        std::shared_ptr<const SeriesSelection> series,
                        const OptimizeOptions& options = {});

enum class SweepAxis { kCostTarget, kLiquidityBound };

struct SweepPoint {
  Money cost;              // set on cost sweeps
  std::int64_t bound = 0;  // set on liquidity sweeps, applied as U = bound, L = -bound
  std::optional<PortfolioSolution> solution;
  std::uint64_t combos_solved = 0;
  std::uint64_t combos_infeasible = 0;
  std::string error;  // non-empty if this point failed with a solver error

  std::string Label(SweepAxis axis) const;
};

struct SweepReport {
  SweepAxis axis = SweepAxis::kCostTarget;
  std::vector<SweepPoint> points;  // ascending parameter, duplicates kept
};

// One optimization per value with every other parameter fixed. The cost
// comparator is the strategy's own when set, equality otherwise.
SweepReport SweepCost(const StrategySpec& spec, std::shared_ptr<const SeriesSelection> series,
                      const std::vector<Money>& cost_values,
                      const OptimizeOptions& options = {});
SweepReport SweepLiquidity(const StrategySpec& spec,
                           std::shared_ptr<const SeriesSelection> series,
                           const std::vector<std::int64_t>& bound_values,
                           const OptimizeOptions& options = {});

}  // namespace optfolio

#endif  // OPTFOLIO_OPTIMIZER_HPP_
