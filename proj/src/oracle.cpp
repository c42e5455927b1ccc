#include "corrclust/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace corrclust {

void for_each_partition(int n, const std::function<void(const std::vector<int>&)>& fn) {
  if (n <= 0) return;
  std::vector<int> a(n, 0);  // restricted growth string: a[0]=0, a[i] <= max(a[0..i-1])+1
  std::vector<int> prefix_max(n, 0);
  while (true) {
    fn(a);
    int i = n - 1;
    while (i > 0) {
      if (a[i] <= prefix_max[i - 1]) break;  // can still be incremented
      --i;
    }
    if (i == 0) return;
    ++a[i];
    prefix_max[i] = std::max(prefix_max[i - 1], a[i]);
    for (int j = i + 1; j < n; ++j) {
      a[j] = 0;
      prefix_max[j] = prefix_max[j - 1];
    }
  }
}

OracleResult opt_clustering(const SignedGraph& g, const NormSpec& q, Scope scope) {
  if (g.n() > 12)
    throw SizeGuardError("partition enumeration is guarded at n <= 12, got n=" +
                         std::to_string(g.n()));
  if (g.n() == 0) return {Clustering(std::vector<int>{}), 0.0, 1};
  OracleResult res;
  res.value = std::numeric_limits<double>::infinity();
  for_each_partition(g.n(), [&](const std::vector<int>& a) {
    Clustering c{a};
    double v = objective(g, c, q, scope);
    ++res.enumerated;
    if (v < res.value) {
      res.value = v;
      res.best = std::move(c);
    }
  });
  if (std::isinf(res.value)) throw InfeasibleError("every partition breaks an uncuttable edge");
  return res;
}

OracleResult opt_st_cut(const SignedGraph& g, int s, int t, const NormSpec& q) {
  const int n = g.n();
  if (s < 0 || s >= n || t < 0 || t >= n || s == t)
    throw ContractViolation("invalid terminal pair");
  if (n - 2 > 24)
    throw SizeGuardError("cut enumeration is guarded at n - 2 <= 24, got n=" + std::to_string(n));

  std::vector<int> others;
  for (int u = 0; u < n; ++u)
    if (u != s && u != t) others.push_back(u);
  const int k = static_cast<int>(others.size());

  std::vector<SignedEdge> edges = g.pos_edges();
  edges.insert(edges.end(), g.neg_edges().begin(), g.neg_edges().end());

  OracleResult res;
  res.value = std::numeric_limits<double>::infinity();
  std::vector<char> in_a(n, 0);
  std::vector<double> coord(n, 0.0);
  const bool is_inf_norm = q.is_infinite();
  for (std::uint64_t mask = 0; mask < (1ULL << k); ++mask) {
    in_a.assign(n, 0);
    in_a[s] = 1;
    for (int i = 0; i < k; ++i)
      if (mask & (1ULL << i)) in_a[others[i]] = 1;
    ++res.enumerated;

    bool valid = true;
    std::fill(coord.begin(), coord.end(), 0.0);
    bool pruned = false;
    for (const auto& e : edges) {
      if (in_a[e.u] == in_a[e.v]) continue;
      if (e.infinite) {
        valid = false;
        break;
      }
      coord[e.u] += e.weight;
      coord[e.v] += e.weight;
      if (is_inf_norm && std::max(coord[e.u], coord[e.v]) >= res.value) {
        pruned = true;  // running max already matches the incumbent
        break;
      }
    }
    if (!valid || pruned) continue;
    double v = lq_norm(coord, q);
    if (v < res.value) {
      res.value = v;
      std::vector<int> assignment(n);
      for (int u = 0; u < n; ++u) assignment[u] = in_a[u] ? 0 : 1;
      res.best = Clustering(std::move(assignment));
    }
  }
  if (std::isinf(res.value))
    throw InfeasibleError("every s-t cut crosses an uncuttable edge");
  return res;
}

RatioReport verify_ratio(const SignedGraph& g, const NormSpec& q, const RoundingReport& rounded) {
  Scope scope = g.bipartition() ? Scope::kLeftSide : Scope::kAll;
  RatioReport rep;
  rep.oracle = opt_clustering(g, q, scope);
  if (rep.oracle.value > 1e-15)
    rep.vs_opt = rounded.objective / rep.oracle.value;
  else
    rep.vs_opt = rounded.objective <= 1e-12 ? 1.0 : std::numeric_limits<double>::infinity();
  rep.per_vertex_max = rounded.ratio_per_vertex;
  return rep;
}

bool brute_force_satisfiable(const CnfFormula& f) {
  validate(f);
  if (f.num_vars > 20) throw SizeGuardError("assignment enumeration is guarded at 20 variables");
  for (std::uint64_t mask = 0; mask < (1ULL << f.num_vars); ++mask) {
    bool all = true;
    for (const auto& clause : f.clauses) {
      bool sat = false;
      for (int lit : clause) {
        bool val = (mask >> (std::abs(lit) - 1)) & 1;
        if ((lit > 0) == val) {
          sat = true;
          break;
        }
      }
      if (!sat) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

}  // namespace corrclust
