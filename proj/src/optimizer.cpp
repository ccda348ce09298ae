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

#include "optfolio/optimizer.hpp"

#include <algorithm>
#include <thread>

#include "optfolio/error.hpp"
#include "optfolio/ilp_solver.hpp"

namespace optfolio {
namespace {

struct Candidate {
  std::uint64_t index = 0;
  IntSolution solution;
};

// Strict "a beats b" under (objective desc, index asc, x lex asc).
bool Beats(const Candidate& a, const Candidate& b) {
  if (a.solution.objective != b.solution.objective) {
    return a.solution.objective > b.solution.objective;
  }
  if (a.index != b.index) return a.index < b.index;
  return a.solution.x < b.solution.x;
}

struct WorkerResult {
  std::optional<Candidate> best;
  std::uint64_t solved = 0;
  std::uint64_t infeasible = 0;
  std::optional<std::uint64_t> failed_index;
  std::optional<Error> failure;
};

WorkerResult SolveRange(const StrategySpec& spec, const SeriesSelection& series,
                        CombinationRange range, const SolveOptions& solve_options) {
  WorkerResult out;
  for (const PriceCombination& combo : range) {
    try {
      IlpProblem problem = BuildSubproblem(spec, series, combo);
      std::optional<IntSolution> solution = SolveIlp(problem, solve_options);
      if (!solution) {
        ++out.infeasible;
        continue;
      }
      ++out.solved;
      Candidate candidate{combo.index, std::move(*solution)};
      if (!out.best || Beats(candidate, *out.best)) out.best = std::move(candidate);
    } catch (const Error& e) {
      if (e.category() != ErrorCategory::kResource && e.category() != ErrorCategory::kSolver) {
        throw;
      }
      out.failed_index = combo.index;
      out.failure = e;
      return out;
    }
  }
  return out;
}

}  // namespace

OptimizeResult Optimize(const StrategySpec& spec, std::shared_ptr<const SeriesSelection> series,
                        const OptimizeOptions& options) {
  if (!series) throw Error(ErrorCategory::kBuilder, "no series");
  series->Validate();
  const std::size_t n = series->size();
  const std::uint64_t total = CombinationCount(n);
  // Surfaces spec errors once, before any fan-out.
  BuildSubproblem(spec, *series, PriceCombination::FromIndex(n, 0));

  unsigned threads = options.threads == 0 ? std::max(1U, std::thread::hardware_concurrency())
                                          : options.threads;
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, total));
  const SolveOptions solve_options{options.node_limit};

  std::vector<WorkerResult> results(threads);
  if (threads == 1) {
    results[0] = SolveRange(spec, *series, CombinationRange(n, 0, total), solve_options);
  } else {
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(threads);
    const std::uint64_t chunk = (total + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
      const std::uint64_t first = std::min(total, w * chunk);
      const std::uint64_t last = std::min(total, first + chunk);
      workers.emplace_back([&, w, first, last] {
        try {
          results[w] = SolveRange(spec, *series, CombinationRange(n, first, last), solve_options);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (std::thread& t : workers) t.join();
    for (const std::exception_ptr& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  OptimizeResult out;
  std::optional<Candidate> best;
  for (WorkerResult& r : results) {
    if (r.failure) {
      throw Error(r.failure->category(),
                  "combination " + std::to_string(*r.failed_index) + ": " + r.failure->detail());
    }
    out.combos_solved += r.solved;
    out.combos_infeasible += r.infeasible;
    if (r.best && (!best || Beats(*r.best, *best))) best = std::move(r.best);
  }
  if (!best) return out;

  const std::vector<std::int64_t>& x = best->solution.x;
  Portfolio portfolio(series, std::vector<std::int64_t>(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n)),
                      std::vector<std::int64_t>(x.begin() + static_cast<std::ptrdiff_t>(n), x.end()));
  PriceCombination combo = PriceCombination::FromIndex(n, best->index);
  PortfolioSolution solution{portfolio,
                             combo,
                             best->solution.objective,
                             InitialCost(portfolio, PricesFor(*series, combo)),
                             portfolio.TotalContracts(),
                             ComputePayoffCurve(portfolio),
                             out.combos_solved,
                             out.combos_infeasible};
  out.solution = std::move(solution);
  return out;
}

std::string SweepPoint::Label(SweepAxis axis) const {
  return axis == SweepAxis::kCostTarget ? "C=" + cost.ToString()
                                        : "|L|=U=" + std::to_string(bound);
}

namespace {

SweepPoint RunPoint(const StrategySpec& spec, const std::shared_ptr<const SeriesSelection>& series,
                    const OptimizeOptions& options) {
  SweepPoint point;
  try {
    OptimizeResult r = Optimize(spec, series, options);
    point.solution = std::move(r.solution);
    point.combos_solved = r.combos_solved;
    point.combos_infeasible = r.combos_infeasible;
  } catch (const Error& e) {
    if (e.category() != ErrorCategory::kResource && e.category() != ErrorCategory::kSolver) throw;
    point.error = e.what();
  }
  return point;
}

}  // namespace

SweepReport SweepCost(const StrategySpec& spec, std::shared_ptr<const SeriesSelection> series,
                      const std::vector<Money>& cost_values, const OptimizeOptions& options) {
  if (cost_values.empty()) throw Error(ErrorCategory::kSpec, "empty-sweep");
  std::vector<Money> values(cost_values);
  std::stable_sort(values.begin(), values.end());
  SweepReport report{SweepAxis::kCostTarget, {}};
  for (Money value : values) {
    StrategySpec s = spec;
    s.cost_target = CostTarget{spec.cost_target ? spec.cost_target->relation : Relation::kEq, value};
    SweepPoint point = RunPoint(s, series, options);
    point.cost = value;
    report.points.push_back(std::move(point));
  }
  return report;
}

SweepReport SweepLiquidity(const StrategySpec& spec, std::shared_ptr<const SeriesSelection> series,
                           const std::vector<std::int64_t>& bound_values,
                           const OptimizeOptions& options) {
  if (bound_values.empty()) throw Error(ErrorCategory::kSpec, "empty-sweep");
  std::vector<std::int64_t> values(bound_values);
  std::stable_sort(values.begin(), values.end());
  SweepReport report{SweepAxis::kLiquidityBound, {}};
  for (std::int64_t value : values) {
    if (value <= 0) throw Error(ErrorCategory::kSpec, "liquidity-bound-not-positive");
    StrategySpec s = spec;
    s.lower = -value;
    s.upper = value;
    SweepPoint point = RunPoint(s, series, options);
    point.bound = value;
    report.points.push_back(std::move(point));
  }
  return report;
}

}  // namespace optfolio
