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

// Exact solver for small boxed integer programs.
//
// The continuous relaxation is solved by a dense bounded-variable primal
// simplex in double precision. Branch-and-bound explores nodes best bound
// first (deeper node on ties) and branches on the most fractional variable.
// Integer candidates are accepted only after an exact check of every row, so
// floating point never decides feasibility of a returned point.
//
// Among all optimal points the lexicographically smallest one is returned:
// after the optimal value is known, each slot in turn is minimized over the
// optimal face and fixed.

#ifndef OPTFOLIO_ILP_SOLVER_HPP_
#define OPTFOLIO_ILP_SOLVER_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "optfolio/ilp_problem.hpp"
#include "optfolio/money.hpp"

namespace optfolio {

struct LpSolution {
  enum class Status { kOptimal, kInfeasible, kUnbounded };

  Status status = Status::kInfeasible;
  std::vector<double> x;
  double objective = 0.0;  // in money units, including the constant
};

// Solves the relaxation over the problem's own bounds, or over `bounds` when
// given. Throws Error(kSolver) if the pivot limit is exceeded and when the
// relaxation is unbounded, which finite bounds rule out.
LpSolution SolveLpRelaxation(const IlpProblem& problem);
LpSolution SolveLpRelaxation(const IlpProblem& problem,
                             std::span<const VariableBounds> bounds);

struct IntSolution {
  std::vector<std::int64_t> x;
  Money objective;

  friend bool operator==(const IntSolution&, const IntSolution&) = default;
};

struct SolveOptions {
  // Total branch-and-bound nodes across the optimality and tie-break phases.
  std::uint64_t node_limit = 10'000'000;
};

struct SolveStats {
  std::uint64_t nodes = 0;
  std::uint64_t lp_solves = 0;
};

// Optimal integer point, or nullopt if the problem is infeasible. Throws
// Error(kResource) when the node limit is reached.
std::optional<IntSolution> SolveIlp(const IlpProblem& problem,
                                    const SolveOptions& options = {},
                                    SolveStats* stats = nullptr);

// Exhaustive enumeration of the integer box in lexicographic order; the
// first point with the maximal objective wins. Throws Error(kCapacity) when
// the box holds more than `guard` points.
std::optional<IntSolution> BruteForce(const IlpProblem& problem,
                                      std::uint64_t guard = 100'000'000);

}  // namespace optfolio

#endif  // OPTFOLIO_ILP_SOLVER_HPP_
