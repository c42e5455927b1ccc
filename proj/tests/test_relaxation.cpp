#include <doctest.h>

#include <cmath>

#include "corrclust/oracle.hpp"
#include "corrclust/relaxation.hpp"
#include "corrclust/rng.hpp"
#include "test_support.hpp"

using namespace corrclust;
using namespace corrclust::testsupport;

namespace {

SignedGraph make_g3() { return SignedGraph(3, {{0, 1, 1.0}, {1, 2, 1.0}}, {{0, 2, 1.0}}); }

SignedGraph two_cliques(int half) {
  std::vector<SignedEdge> pos, neg;
  int n = 2 * half;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      if ((u < half) == (v < half))
        pos.push_back({u, v, 1.0});
      else
        neg.push_back({u, v, 1.0});
    }
  return SignedGraph(n, pos, neg);
}

}  // namespace

TEST_CASE("program shape matches the construction") {
  SolverConfig cfg;
  auto p3 = build_program(make_g3(), NormSpec(1), cfg);
  CHECK(p3.num_x_vars() == 3);
  CHECK(p3.num_y_vars() == 3);
  CHECK(p3.num_triangle_rows() == 3);

  SignedGraph k4(4, {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}, {1, 2, 1.0}, {1, 3, 1.0}, {2, 3, 1.0}},
                 {});
  auto p4 = build_program(k4, NormSpec(2), cfg);
  CHECK(p4.num_x_vars() == 6);
  CHECK(p4.num_y_vars() == 4);
  CHECK(p4.num_triangle_rows() == 12);
}

TEST_CASE("unsupported configurations are rejected") {
  SolverConfig cfg;
  cfg.use_z = true;
  CHECK_THROWS_AS(build_program(make_g3(), NormSpec::infinity(), cfg), UnsupportedConfiguration);
  SignedGraph with_inf(2, {{0, 1, 1.0, true}}, {});
  CHECK_THROWS_AS(build_program(with_inf, NormSpec(1), SolverConfig{}), UnsupportedInstance);
  SolverConfig bad;
  bad.breakpoints = 1;
  CHECK_THROWS_AS(build_program(make_g3(), NormSpec(1), bad), ContractViolation);
}

TEST_CASE("triangle LP value on g3 is 2") {
  for (bool use_z : {false, true}) {
    SolverConfig cfg;
    cfg.use_z = use_z;
    auto prog = build_program(make_g3(), NormSpec(1), cfg);
    auto sol = solve(prog);
    CHECK(sol.value == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(sol.lower_bound == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(check_feasible(sol, make_g3(), NormSpec(1)).feasible());
  }
}

TEST_CASE("consistent instances solve to zero with integral x") {
  SignedGraph g = two_cliques(3);
  for (double qv : {1.0, 2.0}) {
    auto prog = build_program(g, NormSpec(qv), SolverConfig{});
    auto sol = solve(prog);
    CHECK(sol.value <= 1e-5);
    for (int u = 0; u < g.n(); ++u)
      for (int v = u + 1; v < g.n(); ++v) {
        double x = sol.at(u, v);
        CHECK(std::min(x, 1.0 - x) < 1e-5);
      }
  }
}

TEST_CASE("single positive edge with infinity norm") {
  SignedGraph g(2, {{0, 1, 1.0}}, {});
  auto prog = build_program(g, NormSpec::infinity(), SolverConfig{});
  auto sol = solve(prog);
  CHECK(sol.value == doctest::Approx(0.0));
  CHECK(sol.at(0, 1) == doctest::Approx(0.0));
}

TEST_CASE("check_feasible pinpoints violations") {
  SignedGraph g3 = make_g3();
  FractionalSolution sol = solution_from_matrix(g3, NormSpec(1),
                                                {0, 1, 0,
                                                 1, 0, 0,
                                                 0, 0, 0},
                                                false);
  auto report = check_feasible(sol, g3, NormSpec(1));
  REQUIRE_FALSE(report.feasible());
  bool found_triangle = false;
  for (const auto& v : report.violations)
    if (v.constraint == "P3" && std::abs(v.magnitude - 1.0) < 1e-12) found_triangle = true;
  CHECK(found_triangle);

  FractionalSolution ok = embed_integral(Clustering::single_cluster(3), g3, NormSpec(1));
  CHECK(check_feasible(ok, g3, NormSpec(1)).feasible());
  ok.y[1] += 0.1;
  auto perturbed = check_feasible(ok, g3, NormSpec(1));
  REQUIRE_FALSE(perturbed.feasible());
  CHECK(perturbed.violations[0].constraint == "P1");
}

TEST_CASE("embed_integral examples") {
  SignedGraph g3 = make_g3();
  CHECK(embed_integral(Clustering::single_cluster(3), g3, NormSpec(1)).value ==
        doctest::Approx(2.0));
  SignedGraph edgeless(4, {}, {});
  CHECK(embed_integral(Clustering::singletons(4), edgeless, NormSpec(2)).value ==
        doctest::Approx(0.0));
  CHECK(embed_integral(Clustering({std::vector<int>{0, 0, 1}}), g3, NormSpec::infinity()).value ==
        doctest::Approx(1.0));
  // z carries the (P2) expression with equality
  auto emb = embed_integral(Clustering::singletons(3), g3, NormSpec(2));
  REQUIRE(emb.z.has_value());
  CHECK((*emb.z)[1] == doctest::Approx(2.0));  // two unit cut edges at vertex 1
}

TEST_CASE("relaxation lower-bounds the integral optimum") {
  Rng rng(501);
  for (int t = 0; t < 10; ++t) {
    int n = 3 + static_cast<int>(rng.uniform_int(6));  // up to 8
    SignedGraph g = random_weighted(rng, n, 0.8, 0.5, 0.2, 2.0);
    double qv = (t % 3 == 0) ? 1.0 : (t % 3 == 1 ? 2.0 : 1.5);
    SolverConfig cfg;
    cfg.use_z = (t % 2 == 0);
    auto prog = build_program(g, NormSpec(qv), cfg);
    auto sol = solve(prog);
    CHECK(check_feasible(sol, g, NormSpec(qv)).feasible());
    auto opt = opt_clustering(g, NormSpec(qv));
    CHECK(sol.lower_bound <= opt.value + 1e-7);
    CHECK(sol.value <= opt.value + 1e-6);  // relaxation value never above OPT
    // every clustering embeds above the lower bound
    CHECK(embed_integral(opt.best, g, NormSpec(qv)).value >= sol.lower_bound - 1e-7);
  }
}

TEST_CASE("tangent cuts underestimate the power function") {
  Rng rng(502);
  for (int t = 0; t < 200; ++t) {
    double q = 1.0 + rng.uniform(0, 3);
    double w = rng.uniform(0.1, 20.0);
    int k = 2 + static_cast<int>(rng.uniform_int(20));
    auto cuts = power_tangents(q, w, k);
    REQUIRE(!cuts.empty());
    double y = rng.uniform(0, w);
    double bound = 0.0;  // the t >= 0 variable bound acts as the tangent at 0
    for (const auto& c : cuts) bound = std::max(bound, c.slope * y + c.intercept);
    CHECK(bound <= std::pow(y, q) + 1e-9);
  }
}

TEST_CASE("doubling breakpoints never widens the gap") {
  Rng rng(503);
  for (int t = 0; t < 6; ++t) {
    int n = 4 + static_cast<int>(rng.uniform_int(3));
    SignedGraph g = random_weighted(rng, n, 0.9, 0.5, 0.5, 1.5);
    double qv = (t % 2 == 0) ? 2.0 : 1.5;
    double prev_gap = 0.0;
    bool first = true;
    for (int k : {4, 8, 16, 32}) {
      SolverConfig cfg;
      cfg.breakpoints = k;
      cfg.refine_tangents = false;  // isolate the ladder resolution
      auto prog = build_program(g, NormSpec(qv), cfg);
      auto sol = solve(prog);
      double gap = sol.value - sol.lower_bound;
      CHECK(gap >= -1e-9);
      if (!first) CHECK(gap <= prev_gap + 1e-9);
      prev_gap = gap;
      first = false;
    }
  }
}

TEST_CASE("refinement closes the piecewise-linear gap") {
  Rng rng(504);
  SignedGraph g = random_weighted(rng, 7, 0.9, 0.5, 0.5, 2.0);
  SolverConfig cfg;
  cfg.breakpoints = 4;
  auto prog = build_program(g, NormSpec(2), cfg);
  auto sol = solve(prog);
  CHECK(sol.value - sol.lower_bound <= cfg.tol * std::max(1.0, sol.lower_bound) + 1e-12);
}

TEST_CASE("lazy triangle separation matches eager solving") {
  Rng rng(505);
  for (int t = 0; t < 4; ++t) {
    int n = 5 + static_cast<int>(rng.uniform_int(4));
    SignedGraph g = random_weighted(rng, n, 0.7, 0.5, 0.3, 1.5);
    double qv = t % 2 == 0 ? 1.0 : 2.0;
    SolverConfig eager;
    SolverConfig lazy;
    lazy.lazy_triangles = true;
    auto pe = build_program(g, NormSpec(qv), eager);
    auto pl = build_program(g, NormSpec(qv), lazy);
    auto se = solve(pe);
    auto sl = solve(pl);
    CHECK(check_feasible(sl, g, NormSpec(qv)).feasible());
    CHECK(sl.value == doctest::Approx(se.value).epsilon(1e-5));
  }
}

TEST_CASE("pivot cap raises a solver failure carrying the iterate") {
  SolverConfig cfg;
  cfg.max_pivots = 2;
  auto prog = build_program(two_cliques(3), NormSpec(1), cfg);
  CHECK_THROWS_AS(solve(prog), SolverFailure);
}

TEST_CASE("bipartite instances restrict the objective to the left side") {
  // K_{2,2} where vertex 1 cannot satisfy both of its edges
  SignedGraph g(4, {{0, 2, 1.0}, {0, 3, 1.0}, {1, 2, 1.0}}, {{1, 3, 1.0}},
                Bipartition{{0, 1}, {2, 3}});
  auto prog = build_program(g, NormSpec(1), SolverConfig{});
  auto sol = solve(prog);
  auto opt = opt_clustering(g, NormSpec(1), Scope::kLeftSide);
  CHECK(opt.value == doctest::Approx(1.0));
  CHECK(sol.value == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(sol.lower_bound <= opt.value + 1e-7);
  // the unrestricted objective would also charge the right side
  auto opt_all = opt_clustering(g, NormSpec(1), Scope::kAll);
  CHECK(opt_all.value >= 2.0 - 1e-9);
}

TEST_CASE("terminal pinning forces separation") {
  SignedGraph path(3, {{0, 1, 1.0}, {1, 2, 1.0}}, {}, std::nullopt, Terminals{0, 2});
  auto prog = build_program(path, NormSpec(1), SolverConfig{});
  auto sol = solve(prog);
  CHECK(sol.at(0, 2) == doctest::Approx(1.0).epsilon(1e-6));
  // the fractional s-t cut of a 2-edge path costs 2 at q=1 (each cut edge
  // charges both endpoints)
  CHECK(sol.value == doctest::Approx(2.0).epsilon(1e-5));
}
