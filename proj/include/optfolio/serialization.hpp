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

// Strategy files, solution JSON and the strike-by-strike report tables.

#ifndef OPTFOLIO_SERIALIZATION_HPP_
#define OPTFOLIO_SERIALIZATION_HPP_

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "optfolio/market_data.hpp"
#include "optfolio/model_builder.hpp"
#include "optfolio/optimizer.hpp"

namespace optfolio {

// Investor inputs plus the series to draw from the chain.
struct StrategyFile {
  StrategySpec spec;
  std::size_t n = 0;
  Strike call_anchor = 0;
  Strike put_anchor = 0;
};

// Flat JSON object:
//   expected_price, inflection, max_loss, lower, upper, call_anchor,
//   put_anchor, n                                         (required)
//   cost_target {cmp: "="|"<="|">=", value | credit}      (optional)
//   epsilon (0.01), tail_loss_mode ("pnl"|"payoff_only"),
//   balance_left_tail, balance_right_tail (true)          (optional)
// `credit` is the premium received and is stored negated as the cost.
// Throws Error(kSchema) on missing or ill-typed keys, Error(kSpec) on
// out-of-range values.
StrategyFile ParseStrategyFile(std::string_view json_text);
std::string SerializeStrategyFile(const StrategyFile& file);

std::string SolutionToJson(const PortfolioSolution& solution);

struct LoadedSolution {
  Portfolio portfolio;
  PriceCombination combo;
};

// Reads back the quantities and the combination bit string written by
// SolutionToJson. Throws Error(kSchema) if a strike is not in `series`.
LoadedSolution SolutionFromJson(std::string_view json_text,
                                std::shared_ptr<const SeriesSelection> series);

struct TableColumn {
  std::string label;
  std::optional<PortfolioSolution> solution;  // nullopt prints "infeasible"
};

// One row per unique strike with Call/Put sub-columns per parameter point,
// followed by `max F` and `Total number of contracts` footers.
std::string FormatTable(const SeriesSelection& series, const std::vector<TableColumn>& columns);

std::string SweepToJson(const SweepReport& report);
std::string SweepToTable(const SeriesSelection& series, const SweepReport& report);
// `parameter,status,objective,initial_cost,total_contracts` rows.
std::string SweepToCsv(const SweepReport& report);

}  // namespace optfolio

#endif  // OPTFOLIO_SERIALIZATION_HPP_
