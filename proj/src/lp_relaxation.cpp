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

#include <algorithm>
#include <cmath>
#include <limits>

#include "optfolio/error.hpp"
#include "optfolio/ilp_solver.hpp"

namespace optfolio {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTol = 1e-11;
constexpr double kCostTol = 1e-9;
constexpr double kFeasTol = 1e-7;
constexpr double kStepTol = 1e-12;

// Dense tableau for: maximize c.x subject to A x + s = b, bounds on x and s.
// Columns are structural [0, nv), slack [nv, nv + m), artificial
// [nv + m, nv + 2m). Every nonbasic column sits at one of its finite bounds.
class BoundedSimplex {
 public:
  BoundedSimplex(std::size_t num_structural, std::size_t num_rows)
      : nv_(num_structural),
        m_(num_rows),
        cols_(num_structural + 2 * num_rows),
        tableau_(m_ * cols_, 0.0),
        beta_(m_, 0.0),
        basis_(m_),
        lower_(cols_, 0.0),
        upper_(cols_, 0.0),
        value_(cols_, 0.0),
        basic_(cols_, false) {}

  // rows[i] holds nv coefficients; rhs and relation per row.
  bool Init(const std::vector<std::vector<double>>& rows, const std::vector<Relation>& rel,
            const std::vector<double>& rhs, std::span<const double> lo,
            std::span<const double> hi) {
    for (std::size_t j = 0; j < nv_; ++j) {
      lower_[j] = lo[j];
      upper_[j] = hi[j];
      value_[j] = lo[j];
    }
    for (std::size_t i = 0; i < m_; ++i) {
      const std::size_t slack = nv_ + i;
      lower_[slack] = rel[i] == Relation::kGe ? -kInf : 0.0;
      upper_[slack] = rel[i] == Relation::kLe ? kInf : 0.0;
      value_[slack] = 0.0;

      double residual = rhs[i];
      for (std::size_t j = 0; j < nv_; ++j) residual -= rows[i][j] * value_[j];
      const double sigma = residual >= 0.0 ? 1.0 : -1.0;
      double* row = &tableau_[i * cols_];
      for (std::size_t j = 0; j < nv_; ++j) row[j] = sigma * rows[i][j];
      row[slack] = sigma;
      const std::size_t art = nv_ + m_ + i;
      row[art] = 1.0;
      lower_[art] = 0.0;
      upper_[art] = kInf;
      basis_[i] = art;
      basic_[art] = true;
      beta_[i] = std::fabs(residual);
    }
    std::vector<double> phase1(cols_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) phase1[nv_ + m_ + i] = -1.0;
    if (!Run(phase1)) return false;
    double infeasibility = 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      infeasibility += basis_[i] >= nv_ + m_ ? beta_[i] : 0.0;
    }
    if (infeasibility > kFeasTol) return false;
    for (std::size_t i = 0; i < m_; ++i) upper_[nv_ + m_ + i] = 0.0;
    return true;
  }

  // Returns false only if unbounded.
  bool Run(const std::vector<double>& cost) {
    std::vector<double> d(cost);
    for (std::size_t i = 0; i < m_; ++i) {
      const double cb = cost[basis_[i]];
      if (cb == 0.0) continue;
      const double* row = &tableau_[i * cols_];
      for (std::size_t j = 0; j < cols_; ++j) d[j] -= cb * row[j];
    }
    for (std::size_t i = 0; i < m_; ++i) d[basis_[i]] = 0.0;

    const std::size_t stall_limit = 2 * (m_ + cols_);
    const std::size_t iteration_limit = 100 * (m_ + cols_) + 1000;
    std::size_t stall = 0;
    bool bland = false;
    for (std::size_t iter = 0;; ++iter) {
      if (iter > iteration_limit) {
        throw Error(ErrorCategory::kSolver, "simplex iteration limit exceeded");
      }
      std::size_t entering = cols_;
      double dir = 0.0;
      double best = 0.0;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (basic_[j] || upper_[j] - lower_[j] <= 0.0) continue;
        const bool at_upper = value_[j] == upper_[j];
        double gain = 0.0;
        double step = 0.0;
        if (!at_upper && d[j] > kCostTol) {
          gain = d[j];
          step = 1.0;
        } else if (at_upper && d[j] < -kCostTol) {
          gain = -d[j];
          step = -1.0;
        } else {
          continue;
        }
        if (bland) {
          entering = j;
          dir = step;
          break;
        }
        if (gain > best) {
          best = gain;
          entering = j;
          dir = step;
        }
      }
      if (entering == cols_) return true;

      double t_max = upper_[entering] - lower_[entering];
      std::size_t leave = m_;
      bool leave_at_upper = false;
      double leave_alpha = 0.0;
      for (std::size_t i = 0; i < m_; ++i) {
        const double alpha = tableau_[i * cols_ + entering];
        if (std::fabs(alpha) < kPivotTol) continue;
        const double delta = -dir * alpha;
        const std::size_t b = basis_[i];
        double t;
        bool hits_upper;
        if (delta < 0.0) {
          if (lower_[b] == -kInf) continue;
          t = (beta_[i] - lower_[b]) / -delta;
          hits_upper = false;
        } else {
          if (upper_[b] == kInf) continue;
          t = (upper_[b] - beta_[i]) / delta;
          hits_upper = true;
        }
        t = std::max(t, 0.0);
        bool take = t < t_max - kStepTol;
        if (!take && leave != m_ && std::fabs(t - t_max) <= kStepTol) {
          take = bland ? b < basis_[leave] : std::fabs(alpha) > std::fabs(leave_alpha);
        }
        if (take) {
          t_max = t;
          leave = i;
          leave_at_upper = hits_upper;
          leave_alpha = alpha;
        }
      }
      if (t_max == kInf) return false;

      for (std::size_t i = 0; i < m_; ++i) {
        beta_[i] -= dir * tableau_[i * cols_ + entering] * t_max;
      }
      stall = t_max <= kStepTol ? stall + 1 : 0;
      if (stall > stall_limit) bland = true;

      if (leave == m_) {
        value_[entering] = dir > 0 ? upper_[entering] : lower_[entering];
        continue;
      }
      const double entering_value = value_[entering] + dir * t_max;
      const std::size_t leaving = basis_[leave];
      value_[leaving] = leave_at_upper ? upper_[leaving] : lower_[leaving];
      basic_[leaving] = false;
      basic_[entering] = true;
      basis_[leave] = entering;
      beta_[leave] = entering_value;
      Pivot(leave, entering, d);
    }
  }

  std::vector<double> Structural() const {
    std::vector<double> x(value_.begin(), value_.begin() + static_cast<std::ptrdiff_t>(nv_));
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < nv_) x[basis_[i]] = beta_[i];
    }
    for (std::size_t j = 0; j < nv_; ++j) x[j] = std::clamp(x[j], lower_[j], upper_[j]);
    return x;
  }

 private:
  void Pivot(std::size_t r, std::size_t e, std::vector<double>& d) {
    double* prow = &tableau_[r * cols_];
    const double inv = 1.0 / prow[e];
    for (std::size_t j = 0; j < cols_; ++j) prow[j] *= inv;
    prow[e] = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      double* row = &tableau_[i * cols_];
      const double f = row[e];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < cols_; ++j) row[j] -= f * prow[j];
      row[e] = 0.0;
    }
    const double f = d[e];
    if (f != 0.0) {
      for (std::size_t j = 0; j < cols_; ++j) d[j] -= f * prow[j];
      d[e] = 0.0;
    }
  }

  std::size_t nv_;
  std::size_t m_;
  std::size_t cols_;
  std::vector<double> tableau_;
  std::vector<double> beta_;
  std::vector<std::size_t> basis_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<double> value_;
  std::vector<bool> basic_;
};

}  // namespace

LpSolution SolveLpRelaxation(const IlpProblem& problem) {
  return SolveLpRelaxation(problem, problem.bounds);
}

LpSolution SolveLpRelaxation(const IlpProblem& problem,
                             std::span<const VariableBounds> bounds) {
  problem.CheckShape();
  const std::size_t nv = problem.num_variables();
  if (bounds.size() != nv) throw Error(ErrorCategory::kBuilder, "bounds override has wrong length");

  LpSolution out;
  std::vector<double> lo(nv), hi(nv);
  for (std::size_t j = 0; j < nv; ++j) {
    if (bounds[j].lower > bounds[j].upper) return out;
    lo[j] = static_cast<double>(bounds[j].lower);
    hi[j] = static_cast<double>(bounds[j].upper);
  }

  // Each row is divided by its largest coefficient; empty rows are decided
  // exactly here.
  std::vector<std::vector<double>> rows;
  std::vector<Relation> rel;
  std::vector<double> rhs;
  for (const LinearRow& row : problem.rows) {
    double scale = 0.0;
    for (Money c : row.coeffs) scale = std::max(scale, std::fabs(static_cast<double>(c.cents())));
    if (scale == 0.0) {
      const Money zero;
      bool ok = row.relation == Relation::kEq   ? row.rhs == zero
                : row.relation == Relation::kLe ? zero <= row.rhs
                                                : zero >= row.rhs;
      if (!ok) return out;
      continue;
    }
    std::vector<double> a(nv);
    for (std::size_t j = 0; j < nv; ++j) a[j] = static_cast<double>(row.coeffs[j].cents()) / scale;
    rows.push_back(std::move(a));
    rel.push_back(row.relation);
    rhs.push_back(static_cast<double>(row.rhs.cents()) / scale);
  }

  BoundedSimplex simplex(nv, rows.size());
  if (!simplex.Init(rows, rel, rhs, lo, hi)) return out;

  double obj_scale = 0.0;
  for (Money c : problem.objective) obj_scale = std::max(obj_scale, std::fabs(static_cast<double>(c.cents())));
  std::vector<double> cost(nv + 2 * rows.size(), 0.0);
  if (obj_scale > 0.0) {
    for (std::size_t j = 0; j < nv; ++j) cost[j] = static_cast<double>(problem.objective[j].cents()) / obj_scale;
  }
  if (!simplex.Run(cost)) {
    throw Error(ErrorCategory::kSolver, "relaxation unbounded despite finite bounds");
  }
  out.status = LpSolution::Status::kOptimal;
  out.x = simplex.Structural();
  double obj = 0.0;
  for (std::size_t j = 0; j < nv; ++j) obj += static_cast<double>(problem.objective[j].cents()) * out.x[j];
  out.objective = (obj + static_cast<double>(problem.objective_constant.cents())) / Money::kScale;
  return out;
}

}  // namespace optfolio
