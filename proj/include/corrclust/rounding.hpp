#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "corrclust/decomposition.hpp"
#include "corrclust/relaxation.hpp"
#include "corrclust/signed_graph.hpp"

namespace corrclust {

inline constexpr double kBallRadius = 0.2;  // r = 1/5 of Algorithms 2 and 3

struct RoundingReport {
  Clustering clustering{std::vector<int>{}};
  DisagreeVector per_vertex_alg;
  std::vector<double> per_vertex_y;
  double ratio_per_vertex = 0.0;  // max in-scope alg(u)/y(u); 0/0 counts as 1
  double objective = 0.0;
};

// pft(u) = sum LP(u,v) - r * sum ALG(u,v), recomputed per removal step.
struct ProfitAudit {
  std::vector<double> per_vertex_profit;
  std::vector<std::vector<double>> per_step;  // per_step[t][u] = prft(u,t)
  double min_profit = 0.0;                    // over the audited vertex set
  double min_negative_step_profit = 0.0;      // min per-step profit of a negative edge
};

struct RoundStep {
  int center = -1;
  std::vector<int> members;
};

// Removal history of the ball-growing rounders; leftover holds the final
// cluster of unclustered right-side vertices (bipartite only).
struct RoundTrace {
  std::vector<RoundStep> steps;
  std::vector<int> leftover;
  bool bipartite = false;
};

enum class RoundMode { kGeneral, kComplete, kBipartite };

// Metric-decomposition rounding for arbitrary graphs: partition the metric
// d(u,v) = x_uv with diameter bound 1/2.
RoundingReport round_general(const SignedGraph& g, const FractionalSolution& sol,
                             const NormSpec& q, std::uint64_t seed,
                             DecompositionTrace* trace = nullptr);

// Ball-growing rounding for complete unit-weight instances; every vertex u
// ends with at most 5 y_u disagreements.
std::pair<RoundingReport, ProfitAudit> round_complete(const SignedGraph& g,
                                                      const FractionalSolution& sol,
                                                      const NormSpec& q,
                                                      RoundTrace* trace_out = nullptr);

// One-sided variant for complete bipartite unit-weight instances; the
// guarantee and the audit cover the left side.
std::pair<RoundingReport, ProfitAudit> round_bipartite(const SignedGraph& g,
                                                       const FractionalSolution& sol,
                                                       const NormSpec& q,
                                                       RoundTrace* trace_out = nullptr);

// Recomputes all per-step profits from the trace and the solution.
ProfitAudit audit_profit(const SignedGraph& g, const FractionalSolution& sol,
                         const RoundTrace& trace);

// Bound checks behind the theorems; empty result means every guarantee
// holds (used by the CLI to decide the exit code and by the tests).
std::vector<std::string> rounding_violations(const SignedGraph& g, const FractionalSolution& sol,
                                             const RoundingReport& report,
                                             const ProfitAudit* audit, RoundMode mode);

}  // namespace corrclust
