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

#ifndef OPTFOLIO_ILP_PROBLEM_HPP_
#define OPTFOLIO_ILP_PROBLEM_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "optfolio/money.hpp"

namespace optfolio {

enum class Relation { kEq, kLe, kGe };

std::string_view RelationSymbol(Relation rel);

// A linear row over the integer variables. Coefficients and right-hand side
// share the Money scale (hundredths), so every row is an exact rational.
struct LinearRow {
  std::string id;
  std::vector<Money> coeffs;
  Relation relation = Relation::kLe;
  Money rhs;
};

struct VariableBounds {
  std::int64_t lower = 0;
  std::int64_t upper = 0;

  friend bool operator==(const VariableBounds&, const VariableBounds&) = default;
};

// maximize objective . x + objective_constant
// subject to rows, bounds, x integer.
struct IlpProblem {
  std::vector<Money> objective;
  Money objective_constant;
  std::vector<LinearRow> rows;
  std::vector<VariableBounds> bounds;

  std::size_t num_variables() const { return objective.size(); }

  // Exact objective at an integer point.
  Money Evaluate(std::span<const std::int64_t> x) const;
  // Throws Error(kBuilder) if any row or the bounds vector has the wrong
  // length, or a bound interval is empty.
  void CheckShape() const;
};

struct RowViolation {
  std::string row_id;
  // Signed amount by which the row misses: lhs - rhs for = and <= rows,
  // rhs - lhs for >= rows. Bound violations use the distance to the bound.
  Money residual;
};

// Evaluates every bound and row exactly. Empty result means feasible.
std::vector<RowViolation> CheckFeasible(std::span<const std::int64_t> x,
                                        const IlpProblem& problem);

// Plain-text form used in golden tests:
//   max c_0 c_1 ... + const
//   bounds <slot> <lo> <hi>        (one per variable)
//   <id>: a_0 a_1 ... <rel> rhs    (one per row)
std::string ToDebugString(const IlpProblem& problem);

}  // namespace optfolio

#endif  // OPTFOLIO_ILP_PROBLEM_HPP_
