#include "corrclust/relaxation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace corrclust {

namespace {

constexpr double kFeasTol = 1e-7;   // feasibility reporting tolerance
constexpr double kSepTol = 1e-10;   // triangle separation threshold
constexpr int kSepCap = 4000;       // new triangle rows per round

double power(double y, double q) { return q == 1.0 ? y : std::pow(y, q); }

}  // namespace

std::string FeasibilityReport::summary(std::size_t max_items) const {
  std::ostringstream os;
  os << violations.size() << " violation(s)";
  for (std::size_t i = 0; i < violations.size() && i < max_items; ++i) {
    const auto& v = violations[i];
    os << "; " << v.constraint << "(" << v.u;
    if (v.v >= 0) os << "," << v.v;
    if (v.w >= 0) os << "," << v.w;
    os << ") by " << v.magnitude;
  }
  return os.str();
}

std::vector<TangentCut> power_tangents(double q, double w_total, int breakpoints) {
  std::vector<TangentCut> cuts;
  if (w_total <= 0) return cuts;
  if (q == 1.0) {
    cuts.push_back({1.0, 0.0});
    return cuts;
  }
  double point = w_total;
  for (int i = 0; i < breakpoints; ++i) {
    double slope = q * std::pow(point, q - 1.0);
    double intercept = (1.0 - q) * std::pow(point, q);
    cuts.push_back({slope, intercept});
    point *= 0.5;
  }
  return cuts;
}

ConvexProgram::ConvexProgram(const SignedGraph& g, NormSpec q, SolverConfig cfg)
    : g_(g), q_(q), cfg_(cfg), n_(g.n()) {
  if (cfg_.breakpoints < 2) throw ContractViolation("breakpoints must be >= 2");
  if (cfg_.tol <= 0) throw ContractViolation("tolerance must be positive");
  if (cfg_.use_z && q_.is_infinite())
    throw UnsupportedConfiguration("z variables are only defined for finite q");
  if (g_.has_infinite_edges())
    throw UnsupportedInstance("relaxation does not support uncuttable edges");

  num_pairs_ = n_ * (n_ - 1) / 2;
  scope_.assign(n_, 1);
  if (g_.bipartition()) scope_ = g_.left_mask();

  // y_u as an affine form of x
  w_total_.assign(n_, 0.0);
  y_const_.assign(n_, 0.0);
  y_lin_.assign(n_, {});
  const double q_pow = q_.is_infinite() ? 1.0 : q_.q();
  for (const auto& e : g_.pos_edges()) {
    int p = pair_index(e.u, e.v);
    y_lin_[e.u].emplace_back(p, e.weight);
    y_lin_[e.v].emplace_back(p, e.weight);
    w_total_[e.u] += e.weight;
    w_total_[e.v] += e.weight;
    if (cfg_.use_z) {
      double wq = power(e.weight, q_pow);
      if (scope_[e.u]) z_lin_.emplace_back(p, wq);
      if (scope_[e.v]) z_lin_.emplace_back(p, wq);
    }
  }
  for (const auto& e : g_.neg_edges()) {
    int p = pair_index(e.u, e.v);
    y_const_[e.u] += e.weight;
    y_const_[e.v] += e.weight;
    y_lin_[e.u].emplace_back(p, -e.weight);
    y_lin_[e.v].emplace_back(p, -e.weight);
    w_total_[e.u] += e.weight;
    w_total_[e.v] += e.weight;
    if (cfg_.use_z) {
      double wq = power(e.weight, q_pow);
      if (scope_[e.u]) {
        z_const_ += wq;
        z_lin_.emplace_back(p, -wq);
      }
      if (scope_[e.v]) {
        z_const_ += wq;
        z_lin_.emplace_back(p, -wq);
      }
    }
  }

  // variables: x pairs, then t_u (finite q), then the aggregate T
  for (int p = 0; p < num_pairs_; ++p) lp_.add_var(0.0);
  if (!q_.is_infinite()) {
    t_begin_ = lp_.num_vars;
    const bool simple = !cfg_.use_z;
    for (int u = 0; u < n_; ++u) lp_.add_var(simple && scope_[u] ? 1.0 : 0.0);
    if (cfg_.use_z) {
      big_t_ = lp_.add_var(1.0);
      lp::Row t_sum;
      for (int u = 0; u < n_; ++u)
        if (scope_[u]) t_sum.coeffs.emplace_back(t_begin_ + u, 1.0);
      t_sum.coeffs.emplace_back(big_t_, -1.0);
      t_sum.sense = lp::Sense::kLe;
      t_sum.rhs = 0.0;
      lp_.add_row(t_sum);
      lp::Row z_sum;
      z_sum.coeffs = z_lin_;
      z_sum.coeffs.emplace_back(big_t_, -1.0);
      z_sum.sense = lp::Sense::kLe;
      z_sum.rhs = -z_const_;
      lp_.add_row(z_sum);
    }
  } else {
    big_t_ = lp_.add_var(1.0);
    for (int u = 0; u < n_; ++u) {
      if (!scope_[u]) continue;
      lp::Row row;
      row.coeffs = y_lin_[u];
      row.coeffs.emplace_back(big_t_, -1.0);
      row.sense = lp::Sense::kLe;
      row.rhs = -y_const_[u];
      lp_.add_row(row);
    }
  }

  // x in [0,1]; the lower bound is the solver's variable bound
  for (int p = 0; p < num_pairs_; ++p) lp_.add_row({{{p, 1.0}}, lp::Sense::kLe, 1.0});

  if (!q_.is_infinite()) {
    for (int u = 0; u < n_; ++u) {
      if (!scope_[u]) continue;
      for (const auto& cut : power_tangents(q_.q(), w_total_[u], cfg_.breakpoints))
        add_tangent_row(u, cut);
    }
  }

  if (g_.terminals()) {
    int p = pair_index(g_.terminals()->s, g_.terminals()->t);
    lp_.add_row({{{p, 1.0}}, lp::Sense::kGe, 1.0});
  }

  if (!cfg_.lazy_triangles) {
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j)
        for (int k = j + 1; k < n_; ++k) {
          add_triangle_row(i, j, k);
          add_triangle_row(i, k, j);
          add_triangle_row(j, k, i);
        }
  }
}

int ConvexProgram::pair_index(int u, int v) const {
  if (u > v) std::swap(u, v);
  return u * n_ - u * (u + 1) / 2 + (v - u - 1);
}

void ConvexProgram::add_triangle_row(int a, int b, int c) {
  // x_ab <= x_ac + x_cb
  lp::Row row;
  row.coeffs.emplace_back(pair_index(a, b), 1.0);
  row.coeffs.emplace_back(pair_index(a, c), -1.0);
  row.coeffs.emplace_back(pair_index(c, b), -1.0);
  row.sense = lp::Sense::kLe;
  row.rhs = 0.0;
  lp_.add_row(row);
  ++num_triangle_rows_;
}

void ConvexProgram::add_tangent_row(int u, const TangentCut& cut) {
  // t_u >= cut.slope * y_u(x) + cut.intercept
  lp::Row row;
  for (const auto& [p, c] : y_lin_[u]) row.coeffs.emplace_back(p, cut.slope * c);
  row.coeffs.emplace_back(t_begin_ + u, -1.0);
  row.sense = lp::Sense::kLe;
  row.rhs = -cut.intercept - cut.slope * y_const_[u];
  lp_.add_row(row);
}

int ConvexProgram::separate_triangles(const std::vector<double>& xm) {
  struct Cand {
    double viol;
    int a, b, c;
  };
  std::vector<Cand> cands;
  auto at = [&](int u, int v) { return xm[static_cast<std::size_t>(u) * n_ + v]; };
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      for (int k = j + 1; k < n_; ++k) {
        double dij = at(i, j), dik = at(i, k), djk = at(j, k);
        if (dij - dik - djk > kSepTol) cands.push_back({dij - dik - djk, i, j, k});
        if (dik - dij - djk > kSepTol) cands.push_back({dik - djk - dij, i, k, j});
        if (djk - dij - dik > kSepTol) cands.push_back({djk - dij - dik, j, k, i});
      }
  if (cands.size() > static_cast<std::size_t>(kSepCap)) {
    std::nth_element(cands.begin(), cands.begin() + kSepCap, cands.end(),
                     [](const Cand& a, const Cand& b) { return a.viol > b.viol; });
    cands.resize(kSepCap);
  }
  int added = 0;
  for (const auto& c : cands) {
    if (!triangle_seen_.insert({c.a, c.b, c.c}).second) continue;
    add_triangle_row(c.a, c.b, c.c);
    ++added;
  }
  return added;
}

std::vector<double> ConvexProgram::extract_matrix(const std::vector<double>& point) const {
  std::vector<double> xm(static_cast<std::size_t>(n_) * n_, 0.0);
  for (int u = 0; u < n_; ++u)
    for (int v = u + 1; v < n_; ++v) {
      double val = std::clamp(point[pair_index(u, v)], 0.0, 1.0);
      xm[static_cast<std::size_t>(u) * n_ + v] = val;
      xm[static_cast<std::size_t>(v) * n_ + u] = val;
    }
  return xm;
}

FractionalSolution ConvexProgram::solve() {
  bool refine_budget = cfg_.refine_tangents && !q_.is_infinite();
  int refine_rounds_left = cfg_.max_rounds / 2;
  for (int round = 0; round < cfg_.max_rounds; ++round) {
    lp::Result res = lp::solve(lp_, cfg_.max_pivots);
    if (res.status == lp::Status::kIterationLimit) {
      FractionalSolution best =
          solution_from_matrix(g_, q_, extract_matrix(res.point), cfg_.use_z);
      best.lower_bound = 0.0;
      throw SolverFailure("simplex hit the pivot cap after " + std::to_string(res.iterations) +
                              " iterations",
                          best);
    }
    if (res.status != lp::Status::kOptimal)
      throw SolverFailure("linear program unexpectedly " +
                              std::string(res.status == lp::Status::kInfeasible ? "infeasible"
                                                                                : "unbounded"),
                          FractionalSolution{});

    std::vector<double> xm = extract_matrix(res.point);
    int added = 0;
    if (cfg_.lazy_triangles) added += separate_triangles(xm);

    FractionalSolution sol = solution_from_matrix(g_, q_, std::move(xm), cfg_.use_z);
    const double lin_pow = std::max(res.objective, 0.0);
    sol.lower_bound = q_.is_infinite() ? lin_pow : std::pow(lin_pow, 1.0 / q_.q());

    // gap measured on the norm scale; the powered scale would hide an
    // O(sqrt(tol)) error near zero-cost optima
    bool gap_ok = sol.value - sol.lower_bound <= cfg_.tol * std::max(1.0, sol.lower_bound);
    if (!gap_ok && refine_budget && refine_rounds_left > 0) {
      // Kelley step: cut the epigraph at the incumbent y values
      const double q = q_.q();
      for (int u = 0; u < n_; ++u) {
        if (!scope_[u]) continue;
        double yv = sol.y[u];
        if (yv <= 1e-12) continue;
        double t_hat = res.point[t_begin_ + u];
        double need = power(yv, q);
        if (need - t_hat <= 1e-11 * std::max(1.0, need)) continue;
        TangentCut cut{q * std::pow(yv, q - 1.0), (1.0 - q) * power(yv, q)};
        add_tangent_row(u, cut);
        ++added;
      }
      --refine_rounds_left;
    }

    if (added == 0) return sol;
  }
  throw SolverFailure("separation did not converge within the round limit", FractionalSolution{});
}

FractionalSolution solution_from_matrix(const SignedGraph& g, NormSpec q,
                                        std::vector<double> x_matrix, bool with_z) {
  const int n = g.n();
  FractionalSolution sol;
  sol.n = n;
  sol.x = std::move(x_matrix);
  sol.y.assign(n, 0.0);
  auto at = [&sol, n](int u, int v) { return sol.x[static_cast<std::size_t>(u) * n + v]; };
  std::vector<double> z(n, 0.0);
  const double q_pow = q.is_infinite() ? 1.0 : q.q();
  for (const auto& e : g.pos_edges()) {
    double xv = at(e.u, e.v);
    sol.y[e.u] += e.weight * xv;
    sol.y[e.v] += e.weight * xv;
    if (with_z) {
      double wq = power(e.weight, q_pow);
      z[e.u] += wq * xv;
      z[e.v] += wq * xv;
    }
  }
  for (const auto& e : g.neg_edges()) {
    double xv = at(e.u, e.v);
    sol.y[e.u] += e.weight * (1.0 - xv);
    sol.y[e.v] += e.weight * (1.0 - xv);
    if (with_z) {
      double wq = power(e.weight, q_pow);
      z[e.u] += wq * (1.0 - xv);
      z[e.v] += wq * (1.0 - xv);
    }
  }

  std::vector<char> scope(n, 1);
  if (g.bipartition()) scope = g.left_mask();
  std::vector<double> scoped_y;
  scoped_y.reserve(n);
  double z_sum = 0.0;
  for (int u = 0; u < n; ++u) {
    if (!scope[u]) continue;
    scoped_y.push_back(sol.y[u]);
    z_sum += z[u];
  }
  sol.value_y_branch = lq_norm(scoped_y, q);
  if (with_z) {
    sol.z = std::move(z);
    sol.value_z_branch = std::pow(z_sum, 1.0 / q_pow);
    sol.value = std::max(sol.value_y_branch, sol.value_z_branch);
  } else {
    sol.value_z_branch = 0.0;
    sol.value = sol.value_y_branch;
  }
  sol.lower_bound = 0.0;
  return sol;
}

ConvexProgram build_program(const SignedGraph& g, NormSpec q, SolverConfig cfg) {
  return ConvexProgram(g, q, cfg);
}

FractionalSolution solve(ConvexProgram& program) { return program.solve(); }

FeasibilityReport check_feasible(const FractionalSolution& sol, const SignedGraph& g,
                                 const NormSpec& q) {
  FeasibilityReport report;
  const int n = g.n();
  auto add = [&report](const std::string& c, int u, int v, int w, double mag) {
    if (report.violations.size() < 20000) report.violations.push_back({c, u, v, w, mag});
  };
  if (sol.n != n || sol.x.size() != static_cast<std::size_t>(n) * n ||
      sol.y.size() != static_cast<std::size_t>(n)) {
    add("shape", -1, -1, -1, 0.0);
    return report;
  }
  auto at = [&sol, n](int u, int v) { return sol.x[static_cast<std::size_t>(u) * n + v]; };

  for (int u = 0; u < n; ++u) {
    if (std::abs(at(u, u)) > kFeasTol) add("diagonal", u, -1, -1, std::abs(at(u, u)));
    for (int v = u + 1; v < n; ++v) {
      if (std::abs(at(u, v) - at(v, u)) > kFeasTol)
        add("P4", u, v, -1, std::abs(at(u, v) - at(v, u)));
      if (at(u, v) < -kFeasTol) add("P5", u, v, -1, -at(u, v));
      if (at(u, v) > 1.0 + kFeasTol) add("P5", u, v, -1, at(u, v) - 1.0);
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      for (int k = j + 1; k < n; ++k) {
        if (k == i) continue;
        // x_jk <= x_ji + x_ik
        double excess = at(j, k) - at(j, i) - at(i, k);
        if (excess > kFeasTol) add("P3", j, i, k, excess);
      }
    }

  const double q_pow = q.is_infinite() ? 1.0 : q.q();
  for (int u = 0; u < n; ++u) {
    double y_expr = 0.0, z_expr = 0.0;
    for (const auto& e : g.pos_edges()) {
      if (e.u != u && e.v != u) continue;
      double xv = at(e.u, e.v);
      y_expr += e.weight * xv;
      z_expr += power(e.weight, q_pow) * xv;
    }
    for (const auto& e : g.neg_edges()) {
      if (e.u != u && e.v != u) continue;
      double xv = at(e.u, e.v);
      y_expr += e.weight * (1.0 - xv);
      z_expr += power(e.weight, q_pow) * (1.0 - xv);
    }
    if (std::abs(sol.y[u] - y_expr) > kFeasTol) add("P1", u, -1, -1, std::abs(sol.y[u] - y_expr));
    if (sol.z && std::abs((*sol.z)[u] - z_expr) > kFeasTol)
      add("P2", u, -1, -1, std::abs((*sol.z)[u] - z_expr));
  }
  return report;
}

FractionalSolution embed_integral(const Clustering& c, const SignedGraph& g, const NormSpec& q) {
  if (c.n() != g.n()) throw ContractViolation("clustering does not cover the graph");
  const int n = g.n();
  std::vector<double> xm(static_cast<std::size_t>(n) * n, 0.0);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v && !c.same_cluster(u, v)) xm[static_cast<std::size_t>(u) * n + v] = 1.0;
  FractionalSolution sol = solution_from_matrix(g, q, std::move(xm), !q.is_infinite());
  return sol;
}

}  // namespace corrclust
