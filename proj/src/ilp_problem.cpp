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

#include "optfolio/ilp_problem.hpp"

#include <sstream>

#include "optfolio/error.hpp"

namespace optfolio {
namespace {

// Row activity in hundredths; 128-bit so that wide boxes cannot overflow.
__int128 Activity(const std::vector<Money>& coeffs, std::span<const std::int64_t> x) {
  __int128 sum = 0;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    sum += static_cast<__int128>(coeffs[j].cents()) * x[j];
  }
  return sum;
}

}  // namespace

std::string_view RelationSymbol(Relation rel) {
  switch (rel) {
    case Relation::kEq:
      return "=";
    case Relation::kLe:
      return "<=";
    case Relation::kGe:
      return ">=";
  }
  return "?";
}

Money IlpProblem::Evaluate(std::span<const std::int64_t> x) const {
  return Money::FromCents(static_cast<std::int64_t>(Activity(objective, x))) +
         objective_constant;
}

void IlpProblem::CheckShape() const {
  const std::size_t n = num_variables();
  if (bounds.size() != n) {
    throw Error(ErrorCategory::kBuilder, "bounds vector has " + std::to_string(bounds.size()) +
                                             " entries for " + std::to_string(n) + " variables");
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (bounds[j].lower > bounds[j].upper) {
      throw Error(ErrorCategory::kBuilder, "empty bounds on slot " + std::to_string(j));
    }
  }
  for (const LinearRow& row : rows) {
    if (row.coeffs.size() != n) {
      throw Error(ErrorCategory::kBuilder, "row " + row.id + " has " +
                                               std::to_string(row.coeffs.size()) +
                                               " coefficients, expected " + std::to_string(n));
    }
  }
}

std::vector<RowViolation> CheckFeasible(std::span<const std::int64_t> x,
                                        const IlpProblem& problem) {
  problem.CheckShape();
  if (x.size() != problem.num_variables()) {
    throw Error(ErrorCategory::kBuilder, "point has " + std::to_string(x.size()) +
                                             " coordinates, problem has " +
                                             std::to_string(problem.num_variables()));
  }
  std::vector<RowViolation> out;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const VariableBounds& b = problem.bounds[j];
    if (x[j] < b.lower) {
      out.push_back({"bounds:" + std::to_string(j), Money::FromUnits(b.lower - x[j])});
    } else if (x[j] > b.upper) {
      out.push_back({"bounds:" + std::to_string(j), Money::FromUnits(x[j] - b.upper)});
    }
  }
  for (const LinearRow& row : problem.rows) {
    const __int128 diff = Activity(row.coeffs, x) - row.rhs.cents();
    bool ok = row.relation == Relation::kEq   ? diff == 0
              : row.relation == Relation::kLe ? diff <= 0
                                              : diff >= 0;
    if (!ok) {
      auto residual = static_cast<std::int64_t>(row.relation == Relation::kGe ? -diff : diff);
      out.push_back({row.id, Money::FromCents(residual)});
    }
  }
  return out;
}

std::string ToDebugString(const IlpProblem& problem) {
  std::ostringstream out;
  out << "max";
  for (Money c : problem.objective) out << " " << c;
  out << " + " << problem.objective_constant << "\n";
  for (std::size_t j = 0; j < problem.bounds.size(); ++j) {
    out << "bounds " << j << " " << problem.bounds[j].lower << " " << problem.bounds[j].upper
        << "\n";
  }
  for (const LinearRow& row : problem.rows) {
    out << row.id << ":";
    for (Money c : row.coeffs) out << " " << c;
    out << " " << RelationSymbol(row.relation) << " " << row.rhs << "\n";
  }
  return out.str();
}

}  // namespace optfolio
