#include <doctest.h>

#include <cmath>

#include "corrclust/oracle.hpp"
#include "corrclust/rounding.hpp"
#include "test_support.hpp"

using namespace corrclust;
using namespace corrclust::testsupport;

namespace {

SignedGraph make_g3() { return SignedGraph(3, {{0, 1, 1.0}, {1, 2, 1.0}}, {{0, 2, 1.0}}); }

FractionalSolution zero_solution(const SignedGraph& g, const NormSpec& q) {
  return solution_from_matrix(g, q, std::vector<double>(g.n() * g.n(), 0.0), !q.is_infinite());
}

}  // namespace

TEST_CASE("general rounding recovers a perfect clustering from integral x") {
  SignedGraph g = consistent_instance(6, 2);
  Clustering perfect({std::vector<int>{0, 1, 0, 1, 0, 1}});
  FractionalSolution sol = embed_integral(perfect, g, NormSpec(1));
  RoundingReport report = round_general(g, sol, NormSpec(1), 3);
  CHECK(report.objective == doctest::Approx(0.0));
  for (int u = 0; u < 6; ++u)
    for (int v = u + 1; v < 6; ++v)
      CHECK(report.clustering.same_cluster(u, v) == perfect.same_cluster(u, v));
  CHECK(rounding_violations(g, sol, report, nullptr, RoundMode::kGeneral).empty());
}

TEST_CASE("general rounding of g3 at x = 0") {
  SignedGraph g3 = make_g3();
  FractionalSolution sol = zero_solution(g3, NormSpec(1));
  CHECK(sol.y[0] == doctest::Approx(1.0));  // the negative edge at distance 0
  RoundingReport report = round_general(g3, sol, NormSpec(1), 11);
  CHECK(report.clustering.num_clusters() == 1);
  CHECK(report.per_vertex_alg.values == std::vector<double>{1, 0, 1});
  CHECK(rounding_violations(g3, sol, report, nullptr, RoundMode::kGeneral).empty());
}

TEST_CASE("general rounding on an edgeless graph") {
  SignedGraph g(4, {}, {});
  FractionalSolution sol = zero_solution(g, NormSpec(2));
  RoundingReport report = round_general(g, sol, NormSpec(2), 1);
  CHECK(report.objective == doctest::Approx(0.0));
}

TEST_CASE("general rounding rejects infeasible solutions") {
  SignedGraph g3 = make_g3();
  FractionalSolution bad = solution_from_matrix(g3, NormSpec(1),
                                                {0, 1, 0,
                                                 1, 0, 0,
                                                 0, 0, 0},
                                                false);
  CHECK_THROWS_AS(round_general(g3, bad, NormSpec(1), 1), ContractViolation);
}

TEST_CASE("general rounding determinism by seed") {
  Rng rng(300);
  SignedGraph g = random_weighted(rng, 12, 0.6, 0.5, 0.2, 1.5);
  std::vector<double> x = random_feasible_x(rng, 12);
  FractionalSolution sol = solution_from_matrix(g, NormSpec(2), x, true);
  RoundingReport a = round_general(g, sol, NormSpec(2), 42);
  RoundingReport b = round_general(g, sol, NormSpec(2), 42);
  CHECK(a.clustering == b.clustering);
}

TEST_CASE("ball growing on the zero solution returns one cluster") {
  Rng rng(1);
  SignedGraph k5 = random_unit_complete(rng, 5, 1.0);  // all positive
  FractionalSolution sol = zero_solution(k5, NormSpec(1));
  auto [report, audit] = round_complete(k5, sol, NormSpec(1));
  CHECK(report.clustering.num_clusters() == 1);
  CHECK(lq_norm(report.per_vertex_alg, NormSpec(1)) == doctest::Approx(0.0));
  CHECK(audit.min_profit >= -1e-9);
}

TEST_CASE("ball growing recovers consistent instances from integral x") {
  SignedGraph g = consistent_instance(6, 3);
  Clustering perfect({std::vector<int>{0, 1, 2, 0, 1, 2}});
  FractionalSolution sol = embed_integral(perfect, g, NormSpec(1));
  auto [report, audit] = round_complete(g, sol, NormSpec(1));
  CHECK(report.objective == doctest::Approx(0.0));
  // pft(u) equals the total incident LP cost, which is nonnegative
  CHECK(audit.min_profit >= -1e-9);
  for (double p : audit.per_vertex_profit) CHECK(p >= -1e-9);
}

TEST_CASE("ball growing on g3 with its solved relaxation") {
  SignedGraph g3 = make_g3();
  auto prog = build_program(g3, NormSpec(1), SolverConfig{});
  FractionalSolution sol = solve(prog);
  auto [report, audit] = round_complete(g3, sol, NormSpec(1));
  CHECK(report.objective <= 10.0 + 1e-9);  // 5x the optimum of 2
  CHECK(rounding_violations(g3, sol, report, &audit, RoundMode::kComplete).empty());
  auto ratio = verify_ratio(g3, NormSpec(1), report);
  CHECK(ratio.oracle.value == doctest::Approx(2.0));
  CHECK(ratio.vs_opt <= 5.0 + 1e-9);
}

TEST_CASE("ball growing rejects non-complete and weighted instances") {
  SignedGraph missing(3, {{0, 1, 1.0}}, {});
  CHECK_THROWS_AS(round_complete(missing, zero_solution(missing, NormSpec(1)), NormSpec(1)),
                  UnsupportedInstance);
  SignedGraph weighted(3, {{0, 1, 2.0}, {0, 2, 1.0}, {1, 2, 1.0}}, {});
  CHECK_THROWS_AS(round_complete(weighted, zero_solution(weighted, NormSpec(1)), NormSpec(1)),
                  UnsupportedInstance);
}

TEST_CASE("round_complete is deterministic") {
  Rng rng(301);
  SignedGraph g = random_unit_complete(rng, 7, 0.5);
  FractionalSolution sol = solution_from_matrix(g, NormSpec(2), random_feasible_x(rng, 7), true);
  auto [r1, a1] = round_complete(g, sol, NormSpec(2));
  auto [r2, a2] = round_complete(g, sol, NormSpec(2));
  CHECK(r1.clustering == r2.clustering);
  CHECK(a1.min_profit == a2.min_profit);
}

TEST_CASE("bipartite rounding base cases") {
  // K_{1,1} with one positive edge at x = 0: a single cluster {l, r}
  SignedGraph k11(2, {{0, 1, 1.0}}, {}, Bipartition{{0}, {1}});
  FractionalSolution sol = zero_solution(k11, NormSpec(1));
  RoundTrace trace;
  auto [report, audit] = round_bipartite(k11, sol, NormSpec(1), &trace);
  CHECK(report.clustering.num_clusters() == 1);
  CHECK(report.per_vertex_alg.values[0] == doctest::Approx(0.0));
  CHECK(trace.leftover.empty());

  SignedGraph no_bip(2, {{0, 1, 1.0}}, {});
  CHECK_THROWS_AS(round_bipartite(no_bip, zero_solution(no_bip, NormSpec(1)), NormSpec(1)),
                  ContractViolation);
}

TEST_CASE("bipartite rounding on matching vs anti-matching") {
  // K_{2,2}: positive perfect matching, negative anti-matching
  SignedGraph g(4, {{0, 2, 1.0}, {1, 3, 1.0}}, {{0, 3, 1.0}, {1, 2, 1.0}},
                Bipartition{{0, 1}, {2, 3}});
  auto prog = build_program(g, NormSpec(1), SolverConfig{});
  FractionalSolution sol = solve(prog);
  auto [report, audit] = round_bipartite(g, sol, NormSpec(1));
  CHECK(rounding_violations(g, sol, report, &audit, RoundMode::kBipartite).empty());
  for (int u : {0, 1})
    CHECK(report.per_vertex_alg.values[u] <= 5 * sol.y[u] + 1e-9);
}

TEST_CASE("bipartite leftover right vertices form one cluster") {
  // all-negative K_{1,2} at x = 1: the left ball stays a singleton
  std::vector<double> ones(9, 1.0);
  for (int i = 0; i < 3; ++i) ones[static_cast<std::size_t>(i) * 3 + i] = 0.0;
  SignedGraph g(3, {}, {{0, 1, 1.0}, {0, 2, 1.0}}, Bipartition{{0}, {1, 2}});
  FractionalSolution sol = solution_from_matrix(g, NormSpec(1), ones, true);
  RoundTrace trace;
  auto [report, audit] = round_bipartite(g, sol, NormSpec(1), &trace);
  CHECK(trace.leftover.size() == 2);
  CHECK(report.clustering.num_clusters() == 2);
  CHECK(report.per_vertex_alg.values[0] == doctest::Approx(0.0));
}

TEST_CASE("profit audit recomputes from the trace") {
  Rng rng(302);
  SignedGraph g = random_unit_complete(rng, 6, 0.5);
  FractionalSolution sol = solution_from_matrix(g, NormSpec(1), random_feasible_x(rng, 6), true);
  RoundTrace trace;
  auto [report, audit] = round_complete(g, sol, NormSpec(1), &trace);
  (void)report;
  // per-step profits sum to the per-vertex profit
  for (int u = 0; u < 6; ++u) {
    double total = 0.0;
    for (const auto& step : audit.per_step) total += step[u];
    CHECK(total == doctest::Approx(audit.per_vertex_profit[u]).epsilon(1e-9));
  }
  // tampered trace is rejected
  RoundTrace broken = trace;
  broken.steps[0].members.pop_back();
  CHECK_THROWS_AS(audit_profit(g, sol, broken), ContractViolation);
}

TEST_CASE("per-vertex five-approximation holds for every feasible solution") {
  Rng rng(303);
  for (int t = 0; t < 60; ++t) {
    int n = 4 + static_cast<int>(rng.uniform_int(6));
    SignedGraph g = random_unit_complete(rng, n, rng.uniform(0.2, 0.8));
    FractionalSolution sol =
        solution_from_matrix(g, NormSpec(2), random_feasible_x(rng, n), true);
    auto [report, audit] = round_complete(g, sol, NormSpec(2));
    auto violations = rounding_violations(g, sol, report, &audit, RoundMode::kComplete);
    if (!violations.empty()) FAIL(violations[0]);
    CHECK(audit.min_negative_step_profit >= -1e-9);
  }
}

TEST_CASE("one-sided five-approximation holds for every feasible solution") {
  Rng rng(304);
  for (int t = 0; t < 60; ++t) {
    int left = 1 + static_cast<int>(rng.uniform_int(4));
    int right = 1 + static_cast<int>(rng.uniform_int(4));
    int n = left + right;
    std::vector<SignedEdge> pos, neg;
    for (int u = 0; u < left; ++u)
      for (int v = 0; v < right; ++v) {
        if (rng.uniform() < 0.5)
          pos.push_back({u, left + v, 1.0});
        else
          neg.push_back({u, left + v, 1.0});
      }
    Bipartition bip;
    for (int u = 0; u < left; ++u) bip.left.push_back(u);
    for (int v = 0; v < right; ++v) bip.right.push_back(left + v);
    SignedGraph g(n, pos, neg, bip);
    FractionalSolution sol =
        solution_from_matrix(g, NormSpec(1), random_feasible_x(rng, n), true);
    auto [report, audit] = round_bipartite(g, sol, NormSpec(1));
    auto violations = rounding_violations(g, sol, report, &audit, RoundMode::kBipartite);
    if (!violations.empty()) FAIL(violations[0]);
  }
}

TEST_CASE("general rounding deterministic bounds on random feasible points") {
  Rng rng(305);
  for (int t = 0; t < 25; ++t) {
    int n = 5 + static_cast<int>(rng.uniform_int(10));
    SignedGraph g = random_weighted(rng, n, 0.6, 0.5, 0.2, 2.0);
    FractionalSolution sol =
        solution_from_matrix(g, NormSpec(2), random_feasible_x(rng, n), true);
    RoundingReport report = round_general(g, sol, NormSpec(2), subseed(500, t));
    auto violations = rounding_violations(g, sol, report, nullptr, RoundMode::kGeneral);
    if (!violations.empty()) FAIL(violations[0]);
  }
}
