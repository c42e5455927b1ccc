#pragma once

#include <functional>
#include <vector>

#include "corrclust/instances.hpp"
#include "corrclust/rounding.hpp"
#include "corrclust/signed_graph.hpp"

namespace corrclust {

struct OracleResult {
  Clustering best{std::vector<int>{}};
  double value = 0.0;
  long enumerated = 0;
};

// Calls fn for every set partition of {0..n-1}, encoded as a restricted
// growth string. The enumeration order is fixed, so "first found" ties are
// deterministic.
void for_each_partition(int n, const std::function<void(const std::vector<int>&)>& fn);

// Exact minimizer of the lq disagreement objective over all partitions.
// Guarded at n <= 12.
OracleResult opt_clustering(const SignedGraph& g, const NormSpec& q, Scope scope = Scope::kAll);

// Exact minimizer of ||cut||_q over two-part partitions (A, V \ A) with
// s in A, t not in A; candidates cutting an uncuttable edge are skipped.
// Guarded at n - 2 <= 24. Two parts suffice for s-t cuts: un-cutting edges
// never increases a cut coordinate (validated in the test suite).
OracleResult opt_st_cut(const SignedGraph& g, int s, int t, const NormSpec& q);

struct RatioReport {
  double vs_opt = 0.0;          // rounded objective / oracle optimum, 0/0 = 1
  double per_vertex_max = 0.0;  // max alg(u) / y(u)
  OracleResult oracle;
};

RatioReport verify_ratio(const SignedGraph& g, const NormSpec& q, const RoundingReport& rounded);

// 2^n assignment enumeration.
bool brute_force_satisfiable(const CnfFormula& f);

}  // namespace corrclust
