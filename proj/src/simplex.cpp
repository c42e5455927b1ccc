#include "corrclust/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>

namespace corrclust::lp {

namespace {

constexpr double kCostTol = 1e-9;     // entering threshold on reduced costs
constexpr double kPivotFloor = 1e-7;  // preferred minimum pivot magnitude
constexpr double kPivotMin = 1e-9;    // absolute minimum pivot magnitude
constexpr double kPhase1Tol = 1e-7;   // residual artificial mass => infeasible

// Full-tableau simplex state. Column layout: structural vars, then one
// slack/surplus per inequality row, then artificials; the rhs is kept in a
// separate vector, as are the two objective rows. Rows are equilibrated to
// unit max coefficient so pivot magnitudes are comparable across rows.
class Tableau {
 public:
  Tableau(const Program& p, long max_iterations, bool bland_always)
      : prog_(p), max_iters_(max_iterations), bland_always_(bland_always) {
    build();
  }

  Result run() {
    Result res;
    if (num_art_ > 0) {
      Status s = iterate(/*phase1=*/true);
      if (s == Status::kIterationLimit) {
        res.status = s;
        res.feasible = false;
        res.point.assign(prog_.num_vars, 0.0);
        res.iterations = iters_;
        return res;
      }
      if (-obj1_ > kPhase1Tol) {
        res.status = Status::kInfeasible;
        res.feasible = false;
        res.point.assign(prog_.num_vars, 0.0);
        res.iterations = iters_;
        return res;
      }
      purge_artificials();
    }
    width_ = num_struct_ + num_slack_;  // artificials never re-enter
    Status s = iterate(/*phase1=*/false);
    res.status = s;
    res.feasible = true;
    res.point = extract_point();
    res.objective = 0.0;
    for (int j = 0; j < prog_.num_vars; ++j) res.objective += prog_.cost[j] * res.point[j];
    res.iterations = iters_;
    return res;
  }

 private:
  void build() {
    const std::size_t m = prog_.rows.size();
    num_struct_ = prog_.num_vars;
    num_slack_ = 0;
    num_art_ = 0;
    for (const auto& r : prog_.rows) {
      Sense sense = r.sense;
      if (r.rhs < 0)
        sense = sense == Sense::kLe ? Sense::kGe : (sense == Sense::kGe ? Sense::kLe : Sense::kEq);
      if (sense != Sense::kEq) ++num_slack_;
      if (sense != Sense::kLe) ++num_art_;
    }
    stride_ = num_struct_ + num_slack_ + num_art_;
    width_ = stride_;
    rows_ = static_cast<int>(m);
    a_.assign(static_cast<std::size_t>(rows_) * stride_, 0.0);
    b_.assign(rows_, 0.0);
    basis_.assign(rows_, -1);

    int slack_at = num_struct_;
    int art_at = num_struct_ + num_slack_;
    for (int i = 0; i < rows_; ++i) {
      const Row& r = prog_.rows[static_cast<std::size_t>(i)];
      double sign = r.rhs < 0 ? -1.0 : 1.0;
      Sense sense = r.sense;
      if (sign < 0)
        sense = sense == Sense::kLe ? Sense::kGe : (sense == Sense::kGe ? Sense::kLe : Sense::kEq);
      double scale = 0.0;
      for (const auto& [j, c] : r.coeffs) scale = std::max(scale, std::abs(c));
      scale = scale > 0 ? 1.0 / scale : 1.0;
      double* row = row_ptr(i);
      for (const auto& [j, c] : r.coeffs) row[j] += sign * scale * c;
      b_[i] = sign * scale * r.rhs;
      if (sense == Sense::kLe) {
        row[slack_at] = 1.0;
        basis_[i] = slack_at++;
      } else if (sense == Sense::kGe) {
        row[slack_at] = -1.0;
        ++slack_at;
        row[art_at] = 1.0;
        basis_[i] = art_at++;
      } else {
        row[art_at] = 1.0;
        basis_[i] = art_at++;
      }
    }

    // objective rows as reduced costs relative to the starting basis
    cost2_.assign(stride_, 0.0);
    for (int j = 0; j < num_struct_; ++j) cost2_[j] = prog_.cost[j];
    obj2_ = 0.0;
    cost1_.assign(stride_, 0.0);
    obj1_ = 0.0;
    if (num_art_ > 0) {
      for (int j = num_struct_ + num_slack_; j < stride_; ++j) cost1_[j] = 1.0;
      for (int i = 0; i < rows_; ++i) {
        if (basis_[i] >= num_struct_ + num_slack_) {
          const double* row = row_ptr(i);
          for (int j = 0; j < stride_; ++j) cost1_[j] -= row[j];
          obj1_ -= b_[i];
        }
      }
    }
  }

  double* row_ptr(int i) { return a_.data() + static_cast<std::size_t>(i) * stride_; }
  const double* row_ptr(int i) const { return a_.data() + static_cast<std::size_t>(i) * stride_; }

  void pivot(int prow, int pcol) {
    double* pr = row_ptr(prow);
    const double inv = 1.0 / pr[pcol];
    for (int j = 0; j < width_; ++j) pr[j] *= inv;
    pr[pcol] = 1.0;  // cancel rounding
    b_[prow] *= inv;
    for (int i = 0; i < rows_; ++i) {
      if (i == prow) continue;
      double* ri = row_ptr(i);
      const double f = ri[pcol];
      if (f == 0.0) continue;
      for (int j = 0; j < width_; ++j) ri[j] -= f * pr[j];
      ri[pcol] = 0.0;
      b_[i] -= f * b_[prow];
      if (b_[i] < 0 && b_[i] > -1e-11) b_[i] = 0.0;
    }
    auto update_cost = [&](std::vector<double>& cost, double& obj) {
      const double f = cost[pcol];
      if (f == 0.0) return;
      for (int j = 0; j < width_; ++j) cost[j] -= f * pr[j];
      cost[pcol] = 0.0;
      obj -= f * b_[prow];
    };
    update_cost(cost2_, obj2_);
    if (num_art_ > 0) update_cost(cost1_, obj1_);
    basis_[prow] = pcol;
    ++iters_;
  }

  // Leaving row for an entering column, or -1 when no pivot clears the
  // floor. Near-tie ratios prefer the larger pivot element.
  int ratio_test(int pcol, bool bland, double floor) const {
    int best_row = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    double best_pivot = 0.0;
    for (int i = 0; i < rows_; ++i) {
      const double aij = row_ptr(i)[pcol];
      if (aij <= floor) continue;
      const double ratio = std::max(b_[i], 0.0) / aij;
      if (ratio < best_ratio - 1e-12) {
        best_ratio = ratio;
        best_row = i;
        best_pivot = aij;
      } else if (ratio <= best_ratio + 1e-12 && best_row >= 0) {
        if (bland) {
          if (basis_[i] < basis_[best_row]) {
            best_row = i;
            best_pivot = aij;
          }
        } else if (aij > best_pivot) {
          best_row = i;
          best_pivot = aij;
        }
      }
    }
    return best_row;
  }

  Status iterate(bool phase1) {
    std::vector<double>& cost = phase1 ? cost1_ : cost2_;
    double& obj = phase1 ? obj1_ : obj2_;
    long stall = 0;
    bool bland = bland_always_;
    const long stall_limit = 2L * rows_ + 200;
    double last_obj = obj;
    while (true) {
      if (iters_ >= max_iters_) return Status::kIterationLimit;
      int pcol = -1;
      if (bland) {
        for (int j = 0; j < width_; ++j)
          if (cost[j] < -kCostTol) {
            pcol = j;
            break;
          }
      } else {
        double best = -kCostTol;
        for (int j = 0; j < width_; ++j)
          if (cost[j] < best) {
            best = cost[j];
            pcol = j;
          }
      }
      if (pcol < 0) return Status::kOptimal;
      int prow = ratio_test(pcol, bland, kPivotFloor);
      if (prow < 0) prow = ratio_test(pcol, bland, kPivotMin);
      if (prow < 0) return Status::kUnbounded;  // cannot happen in phase 1
      pivot(prow, pcol);
      if (std::abs(obj - last_obj) <= 1e-12 * (1.0 + std::abs(last_obj))) {
        if (++stall > stall_limit) bland = true;
      } else {
        stall = 0;
        last_obj = obj;
      }
    }
  }

  // After phase 1: pivot artificials out of the basis on safely sized
  // elements; rows without one are linearly dependent and get dropped.
  void purge_artificials() {
    const int art_begin = num_struct_ + num_slack_;
    for (int i = 0; i < rows_; ++i) {
      if (basis_[i] < art_begin) continue;
      const double* row = row_ptr(i);
      int pcol = -1;
      double best = kPivotFloor;
      for (int j = 0; j < art_begin; ++j) {
        if (std::abs(row[j]) > best) {
          best = std::abs(row[j]);
          pcol = j;
        }
      }
      if (pcol >= 0) {
        pivot(i, pcol);
      } else {
        drop_row(i);
        --i;
      }
    }
  }

  void drop_row(int i) {
    const int last = rows_ - 1;
    if (i != last) {
      double* ri = row_ptr(i);
      const double* rl = row_ptr(last);
      std::copy(rl, rl + stride_, ri);
      b_[i] = b_[last];
      basis_[i] = basis_[last];
    }
    --rows_;
    b_.resize(rows_);
    basis_.resize(rows_);
    a_.resize(static_cast<std::size_t>(rows_) * stride_);
  }

  std::vector<double> extract_point() const {
    std::vector<double> v(prog_.num_vars, 0.0);
    for (int i = 0; i < rows_; ++i)
      if (basis_[i] < prog_.num_vars) v[basis_[i]] = std::max(b_[i], 0.0);
    return v;
  }

  const Program& prog_;
  long max_iters_;
  bool bland_always_;
  int num_struct_ = 0, num_slack_ = 0, num_art_ = 0;
  int width_ = 0, stride_ = 0, rows_ = 0;
  std::vector<double> a_, b_;
  std::vector<double> cost1_, cost2_;
  double obj1_ = 0.0, obj2_ = 0.0;
  std::vector<int> basis_;
  long iters_ = 0;
};

// Relative row violation of a candidate point.
double max_residual(const Program& p, const std::vector<double>& point) {
  double worst = 0.0;
  for (const auto& row : p.rows) {
    double lhs = 0.0;
    double scale = 1.0;
    for (const auto& [j, c] : row.coeffs) {
      lhs += c * point[j];
      scale = std::max(scale, std::abs(c));
    }
    double viol = row.sense == Sense::kLe   ? lhs - row.rhs
                  : row.sense == Sense::kGe ? row.rhs - lhs
                                            : std::abs(lhs - row.rhs);
    worst = std::max(worst, viol / scale);
  }
  for (double v : point) worst = std::max(worst, -v);
  return worst;
}

}  // namespace

Result solve(const Program& p, long max_iterations) {
  if (p.num_vars == 0) {
    Result r;
    r.feasible = true;
    for (const auto& row : p.rows) {
      bool ok = row.sense == Sense::kLe   ? row.rhs >= -kPhase1Tol
                : row.sense == Sense::kGe ? row.rhs <= kPhase1Tol
                                          : std::abs(row.rhs) <= kPhase1Tol;
      if (!ok) {
        r.status = Status::kInfeasible;
        r.feasible = false;
      }
    }
    return r;
  }
  Tableau t(p, max_iterations, /*bland_always=*/false);
  Result res = t.run();
  if (res.status == Status::kOptimal && max_residual(p, res.point) > 1e-9) {
    // Bland's rule walks a different pivot path; keep the cleaner result.
    Tableau retry(p, max_iterations, /*bland_always=*/true);
    Result res2 = retry.run();
    if (res2.status == Status::kOptimal &&
        max_residual(p, res2.point) < max_residual(p, res.point))
      res = res2;
  }
  return res;
}

}  // namespace corrclust::lp
