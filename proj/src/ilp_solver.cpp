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

#include "optfolio/ilp_solver.hpp"

#include <cmath>
#include <numeric>
#include <queue>

#include "optfolio/error.hpp"

namespace optfolio {
namespace {

constexpr double kIntegralityTol = 1e-6;

struct Node {
  double bound = 0.0;  // LP objective in hundredths, without the constant
  std::size_t depth = 0;
  std::uint64_t seq = 0;
  std::vector<VariableBounds> bounds;
  std::vector<double> x;
};

struct NodeOrder {
  // Best bound first, then deeper, then older.
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound < b.bound;
    if (a.depth != b.depth) return a.depth < b.depth;
    return a.seq > b.seq;
  }
};

struct Incumbent {
  std::vector<std::int64_t> x;
  std::int64_t value = 0;  // objective in hundredths, without the constant
};

class BranchAndBound {
 public:
  BranchAndBound(const IlpProblem& problem, std::uint64_t node_limit, SolveStats& stats)
      : problem_(problem), node_limit_(node_limit), stats_(stats) {
    std::int64_t g = 0;
    for (Money c : problem.objective) g = std::gcd(g, c.cents());
    granularity_ = g == 0 ? 1 : g;
  }

  // Maximizes problem.objective; `start` is a known feasible point that any
  // returned point must strictly improve on.
  std::optional<Incumbent> Run(std::optional<Incumbent> start) {
    incumbent_ = std::move(start);
    bool improved = false;
    std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
    if (auto root = Solve(problem_.bounds, 0)) open.push(std::move(*root));
    while (!open.empty()) {
      Node node = open.top();
      open.pop();
      if (++stats_.nodes > node_limit_) {
        throw Error(ErrorCategory::kResource,
                    "node limit " + std::to_string(node_limit_) + " reached");
      }
      if (Prunable(node.bound)) continue;

      std::size_t branch = node.x.size();
      double best_frac = kIntegralityTol;
      for (std::size_t j = 0; j < node.x.size(); ++j) {
        double frac = std::fabs(node.x[j] - std::round(node.x[j]));
        if (frac > best_frac + 1e-12) {
          best_frac = frac;
          branch = j;
        }
      }
      std::int64_t split;
      if (branch == node.x.size()) {
        std::vector<std::int64_t> point(node.x.size());
        for (std::size_t j = 0; j < point.size(); ++j) {
          point[j] = static_cast<std::int64_t>(std::llround(node.x[j]));
        }
        if (CheckFeasible(std::span<const std::int64_t>(point), problem_).empty()) {
          const std::int64_t value = problem_.Evaluate(point).cents() -
                                     problem_.objective_constant.cents();
          if (!incumbent_ || value > incumbent_->value) {
            incumbent_ = Incumbent{std::move(point), value};
            improved = true;
          }
          continue;
        }
        // Rounded point fails the exact check: split the first free slot.
        branch = node.bounds.size();
        for (std::size_t j = 0; j < node.bounds.size(); ++j) {
          if (node.bounds[j].lower < node.bounds[j].upper) {
            branch = j;
            break;
          }
        }
        if (branch == node.bounds.size()) continue;
        const VariableBounds& b = node.bounds[branch];
        split = b.lower + (b.upper - b.lower) / 2;
      } else {
        split = static_cast<std::int64_t>(std::floor(node.x[branch]));
      }

      std::vector<VariableBounds> down = node.bounds;
      down[branch].upper = split;
      std::vector<VariableBounds> up = std::move(node.bounds);
      up[branch].lower = split + 1;
      for (auto* child : {&down, &up}) {
        if ((*child)[branch].lower > (*child)[branch].upper) continue;
        if (auto solved = Solve(*child, node.depth + 1); solved && !Prunable(solved->bound)) {
          open.push(std::move(*solved));
        }
      }
    }
    if (!improved) return std::nullopt;
    return incumbent_;
  }

 private:
  std::optional<Node> Solve(const std::vector<VariableBounds>& bounds, std::size_t depth) {
    ++stats_.lp_solves;
    LpSolution lp = SolveLpRelaxation(problem_, bounds);
    if (lp.status != LpSolution::Status::kOptimal) return std::nullopt;
    double bound = 0.0;
    for (std::size_t j = 0; j < lp.x.size(); ++j) {
      bound += static_cast<double>(problem_.objective[j].cents()) * lp.x[j];
    }
    return Node{bound, depth, next_seq_++, bounds, std::move(lp.x)};
  }

  // Integer points have objective values on a lattice of `granularity_`;
  // a node helps only if its bound rounds down above the incumbent.
  bool Prunable(double bound) const {
    if (!incumbent_) return false;
    const double g = static_cast<double>(granularity_);
    const double reachable = std::floor(bound / g + 1e-6) * g;
    return reachable <= static_cast<double>(incumbent_->value);
  }

  const IlpProblem& problem_;
  std::uint64_t node_limit_;
  SolveStats& stats_;
  std::int64_t granularity_ = 1;
  std::optional<Incumbent> incumbent_;
  std::uint64_t next_seq_ = 0;
};

}  // namespace

std::optional<IntSolution> SolveIlp(const IlpProblem& problem, const SolveOptions& options,
                                    SolveStats* stats) {
  problem.CheckShape();
  SolveStats local;
  SolveStats& st = stats ? *stats : local;

  auto best = BranchAndBound(problem, options.node_limit, st).Run(std::nullopt);
  if (!best) return std::nullopt;

  // Tie-break phase: walk the slots, minimizing each over the optimal face
  // with earlier slots fixed. `best` stays feasible and optimal throughout.
  const std::size_t nv = problem.num_variables();
  IlpProblem face = problem;
  LinearRow floor_row{"objective-floor", problem.objective, Relation::kGe,
                      Money::FromCents(best->value)};
  face.rows.push_back(std::move(floor_row));
  face.objective_constant = Money();
  for (std::size_t s = 0; s < nv; ++s) {
    if (best->x[s] > face.bounds[s].lower) {
      face.objective.assign(nv, Money());
      face.objective[s] = -Money::FromUnits(1);
      Incumbent start{best->x, -Money::FromUnits(best->x[s]).cents()};
      if (auto lower = BranchAndBound(face, options.node_limit, st).Run(start)) {
        best->x = std::move(lower->x);
      }
    }
    face.bounds[s] = {best->x[s], best->x[s]};
  }
  return IntSolution{best->x, problem.Evaluate(best->x)};
}

std::optional<IntSolution> BruteForce(const IlpProblem& problem, std::uint64_t guard) {
  problem.CheckShape();
  const std::size_t nv = problem.num_variables();
  std::uint64_t points = 1;
  for (const VariableBounds& b : problem.bounds) {
    const auto width = static_cast<std::uint64_t>(b.upper - b.lower + 1);
    if (points > guard / width) {
      throw Error(ErrorCategory::kCapacity, "integer box exceeds " + std::to_string(guard) + " points");
    }
    points *= width;
  }

  std::optional<IntSolution> best;
  std::vector<std::int64_t> x(nv);
  for (std::size_t j = 0; j < nv; ++j) x[j] = problem.bounds[j].lower;
  for (std::uint64_t p = 0; p < points; ++p) {
    if (CheckFeasible(std::span<const std::int64_t>(x), problem).empty()) {
      Money value = problem.Evaluate(x);
      if (!best || value > best->objective) best = IntSolution{x, value};
    }
    // Odometer with the last slot fastest keeps the order lexicographic.
    for (std::size_t j = nv; j-- > 0;) {
      if (x[j] < problem.bounds[j].upper) {
        ++x[j];
        break;
      }
      x[j] = problem.bounds[j].lower;
    }
  }
  return best;
}

}  // namespace optfolio
