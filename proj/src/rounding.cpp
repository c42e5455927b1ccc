#include "corrclust/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace corrclust {

namespace {

constexpr double kAuditTol = 1e-9;

void require_feasible(const SignedGraph& g, const FractionalSolution& sol, const NormSpec& q) {
  FeasibilityReport rep = check_feasible(sol, g, q);
  if (!rep.feasible())
    throw ContractViolation("solution is not feasible for the instance: " + rep.summary());
}

// max over in-scope vertices of alg(u) / y(u), with 0/0 counting as 1
double per_vertex_ratio(const DisagreeVector& alg, const std::vector<double>& y,
                        const std::vector<char>* scope) {
  double ratio = 0.0;
  for (std::size_t u = 0; u < y.size(); ++u) {
    if (scope && !(*scope)[u]) continue;
    double a = alg.values[u];
    if (y[u] > 1e-15)
      ratio = std::max(ratio, a / y[u]);
    else
      ratio = std::max(ratio, a <= 1e-12 ? 1.0 : std::numeric_limits<double>::infinity());
  }
  return ratio;
}

struct BallGrowState {
  std::vector<char> active;
  std::vector<int> assignment;
  RoundTrace trace;
};

// Shared loop of Algorithms 2 and 3. `centers` restricts the argmax to the
// left side, `ball_scope` restricts which vertices count toward L_t.
void grow_clusters(const SignedGraph& g, const FractionalSolution& sol,
                   const std::vector<char>* center_mask, const std::vector<char>* ball_mask,
                   BallGrowState& st) {
  const int n = g.n();
  const double r = kBallRadius;
  st.active.assign(n, 1);
  st.assignment.assign(n, -1);
  int remaining_centers = 0;
  for (int u = 0; u < n; ++u)
    if (!center_mask || (*center_mask)[u]) ++remaining_centers;
  int cluster_id = 0;
  while (remaining_centers > 0) {
    int best_w = -1;
    double best_l = -1.0;
    for (int w = 0; w < n; ++w) {
      if (!st.active[w] || (center_mask && !(*center_mask)[w])) continue;
      double l = 0.0;
      for (int u = 0; u < n; ++u) {
        if (!st.active[u] || (ball_mask && !(*ball_mask)[u])) continue;
        double d = sol.at(u, w);
        if (d <= r) l += r - d;
      }
      if (l > best_l + 1e-15) {  // ties: smallest vertex id
        best_l = l;
        best_w = w;
      }
    }
    RoundStep step;
    step.center = best_w;
    for (int u = 0; u < n; ++u) {
      if (!st.active[u]) continue;
      if (sol.at(u, best_w) <= 2 * r) {
        st.active[u] = 0;
        st.assignment[u] = cluster_id;
        step.members.push_back(u);
        if (!center_mask || (*center_mask)[u]) --remaining_centers;
      }
    }
    st.trace.steps.push_back(std::move(step));
    ++cluster_id;
  }
  // leftover vertices (bipartite right side) form one final cluster
  for (int u = 0; u < n; ++u)
    if (st.active[u]) {
      st.assignment[u] = cluster_id;
      st.trace.leftover.push_back(u);
      st.active[u] = 0;
    }
}

RoundingReport build_report(const SignedGraph& g, const FractionalSolution& sol,
                            const NormSpec& q, Clustering clustering, Scope scope) {
  RoundingReport report;
  report.per_vertex_alg = disagreement_vector(g, clustering);
  report.per_vertex_y = sol.y;
  const std::vector<char>* mask = scope == Scope::kLeftSide ? &g.left_mask() : nullptr;
  report.ratio_per_vertex = per_vertex_ratio(report.per_vertex_alg, sol.y, mask);
  report.objective = objective(g, clustering, q, scope);
  report.clustering = std::move(clustering);
  return report;
}

}  // namespace

RoundingReport round_general(const SignedGraph& g, const FractionalSolution& sol,
                             const NormSpec& q, std::uint64_t seed, DecompositionTrace* trace) {
  if (g.has_infinite_edges())
    throw UnsupportedInstance("general rounding does not support uncuttable edges");
  require_feasible(g, sol, q);
  MetricSpace metric(g.n(), sol.x);
  Clustering c = decompose(metric, 0.5, seed, trace);
  return build_report(g, sol, q, std::move(c), Scope::kAll);
}

std::pair<RoundingReport, ProfitAudit> round_complete(const SignedGraph& g,
                                                      const FractionalSolution& sol,
                                                      const NormSpec& q, RoundTrace* trace_out) {
  if (!g.is_complete_unit())
    throw UnsupportedInstance("ball-growing requires a complete unit-weight instance");
  require_feasible(g, sol, q);
  BallGrowState st;
  grow_clusters(g, sol, nullptr, nullptr, st);
  ProfitAudit audit = audit_profit(g, sol, st.trace);
  RoundingReport report = build_report(g, sol, q, Clustering(st.assignment), Scope::kAll);
  if (trace_out) *trace_out = std::move(st.trace);
  return {std::move(report), std::move(audit)};
}

std::pair<RoundingReport, ProfitAudit> round_bipartite(const SignedGraph& g,
                                                       const FractionalSolution& sol,
                                                       const NormSpec& q, RoundTrace* trace_out) {
  if (!g.bipartition()) throw ContractViolation("bipartite rounding requires a bipartition");
  if (!g.is_complete_bipartite_unit())
    throw UnsupportedInstance("one-sided rounding requires a complete bipartite unit-weight instance");
  require_feasible(g, sol, q);
  const std::vector<char>& left = g.left_mask();
  std::vector<char> right(g.n());
  for (int u = 0; u < g.n(); ++u) right[u] = !left[u];
  BallGrowState st;
  st.trace.bipartite = true;
  grow_clusters(g, sol, &left, &right, st);
  ProfitAudit audit = audit_profit(g, sol, st.trace);
  RoundingReport report = build_report(g, sol, q, Clustering(st.assignment), Scope::kLeftSide);
  if (trace_out) *trace_out = std::move(st.trace);
  return {std::move(report), std::move(audit)};
}

ProfitAudit audit_profit(const SignedGraph& g, const FractionalSolution& sol,
                         const RoundTrace& trace) {
  const int n = g.n();
  if (sol.n != n) throw ContractViolation("solution and instance sizes differ");
  const int num_steps = static_cast<int>(trace.steps.size());
  const int total_slots = num_steps + (trace.leftover.empty() ? 0 : 1);

  std::vector<int> step_of(n, -1);
  std::vector<int> cluster_of(n, -1);
  for (int t = 0; t < num_steps; ++t) {
    const RoundStep& step = trace.steps[t];
    bool center_in = false;
    for (int u : step.members) {
      if (u < 0 || u >= n || step_of[u] != -1)
        throw ContractViolation("trace does not partition the vertex set");
      step_of[u] = t;
      cluster_of[u] = t;
      center_in |= (u == step.center);
    }
    if (!center_in) throw ContractViolation("trace step does not contain its center");
    if (trace.bipartite && !g.left_mask()[step.center])
      throw ContractViolation("bipartite trace center is not on the left side");
  }
  for (int u : trace.leftover) {
    if (u < 0 || u >= n || step_of[u] != -1)
      throw ContractViolation("trace does not partition the vertex set");
    step_of[u] = num_steps;
    cluster_of[u] = num_steps;
  }
  for (int u = 0; u < n; ++u)
    if (step_of[u] == -1) throw ContractViolation("trace misses vertex " + std::to_string(u));

  ProfitAudit audit;
  audit.per_vertex_profit.assign(n, 0.0);
  audit.per_step.assign(total_slots, std::vector<double>(n, 0.0));
  audit.min_negative_step_profit = 0.0;

  const double r = kBallRadius;
  auto account = [&](const SignedEdge& e, bool positive) {
    int t = std::min(step_of[e.u], step_of[e.v]);
    bool same = cluster_of[e.u] == cluster_of[e.v];
    double lp = positive ? sol.at(e.u, e.v) : 1.0 - sol.at(e.u, e.v);
    int alg = positive ? (same ? 0 : 1) : (same ? 1 : 0);
    double prft = lp - r * alg;
    audit.per_step[t][e.u] += prft;
    audit.per_step[t][e.v] += prft;
    audit.per_vertex_profit[e.u] += prft;
    audit.per_vertex_profit[e.v] += prft;
    if (!positive) audit.min_negative_step_profit = std::min(audit.min_negative_step_profit, prft);
  };
  for (const auto& e : g.pos_edges()) account(e, true);
  for (const auto& e : g.neg_edges()) account(e, false);

  audit.min_profit = 0.0;
  bool first = true;
  for (int u = 0; u < n; ++u) {
    if (trace.bipartite && !g.left_mask()[u]) continue;
    if (first || audit.per_vertex_profit[u] < audit.min_profit) audit.min_profit = audit.per_vertex_profit[u];
    first = false;
  }
  return audit;
}

std::vector<std::string> rounding_violations(const SignedGraph& g, const FractionalSolution& sol,
                                             const RoundingReport& report,
                                             const ProfitAudit* audit, RoundMode mode) {
  std::vector<std::string> out;
  auto fail = [&out](const std::string& s) { out.push_back(s); };
  const int n = g.n();
  const std::vector<char>* scope =
      mode == RoundMode::kBipartite ? &g.left_mask() : nullptr;

  if (mode == RoundMode::kGeneral) {
    // diameter <= 1/2 in the x metric
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (report.clustering.same_cluster(u, v) && sol.at(u, v) > 0.5 + kAuditTol) {
          std::ostringstream os;
          os << "cluster diameter exceeded on (" << u << "," << v << "): " << sol.at(u, v);
          fail(os.str());
        }
    // negative-edge disagreements at most 2 y_u
    std::vector<double> neg_dis(n, 0.0);
    for (const auto& e : g.neg_edges())
      if (report.clustering.same_cluster(e.u, e.v)) {
        neg_dis[e.u] += e.weight;
        neg_dis[e.v] += e.weight;
      }
    for (int u = 0; u < n; ++u)
      if (neg_dis[u] > 2 * sol.y[u] + kAuditTol) {
        std::ostringstream os;
        os << "negative disagreement bound broken at " << u << ": " << neg_dis[u] << " > 2*"
           << sol.y[u];
        fail(os.str());
      }
  } else {
    for (int u = 0; u < n; ++u) {
      if (scope && !(*scope)[u]) continue;
      if (report.per_vertex_alg.values[u] > 5 * sol.y[u] + kAuditTol) {
        std::ostringstream os;
        os << "per-vertex bound broken at " << u << ": ALG=" << report.per_vertex_alg.values[u]
           << " y=" << sol.y[u];
        fail(os.str());
      }
    }
    if (audit) {
      if (audit->min_profit < -kAuditTol)
        fail("negative vertex profit " + std::to_string(audit->min_profit));
      if (audit->min_negative_step_profit < -kAuditTol)
        fail("negative per-step profit on a negative edge " +
             std::to_string(audit->min_negative_step_profit));
    }
  }
  return out;
}

}  // namespace corrclust
