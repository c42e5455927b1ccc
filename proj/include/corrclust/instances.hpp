#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "corrclust/relaxation.hpp"
#include "corrclust/signed_graph.hpp"

namespace corrclust {

// Layered s-t cut family: b layers of K_{a,a} chained by terminals.
struct GapParams {
  int a = 1;  // layer width
  int b = 1;  // layer count
};

struct CnfFormula {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;  // signed 1-based literals, width 1..3
};

void validate(const CnfFormula& f);

// Random signed graph: each pair kept with probability p_edge, kept pairs
// positive with probability p_plus, unit weights. p_edge = 1 yields
// complete instances valid for the ball-growing rounder.
SignedGraph gen_random(int n, double p_plus, double p_edge, std::uint64_t seed);

// Complete bipartite random instance with |L| = left, |R| = right and unit
// weights; the left side occupies vertex ids 0..left-1.
SignedGraph gen_random_bipartite(int left, int right, double p_plus, std::uint64_t seed);

// G_{a,b}: vertices s_0..s_b (ids 0..b) plus b layers of 2a vertices;
// 2ab + b + 1 vertices, b a^2 + 2ab positive unit edges, terminals (s_0, s_b).
SignedGraph gen_gap(const GapParams& p);

struct GapFractional {
  FractionalSolution solution;
  double formula_value = 0.0;  // (a b (1/b)^q + b (a/b)^q)^(1/q)
};

// The closed-form fractional cut of the gap instance: length 1/b on the
// (s_i, R_i) edges, shortest-path metric elsewhere. Finite q only.
GapFractional gap_fractional(const GapParams& p, const NormSpec& q);

// 3SAT reduction graph G_phi with terminals (True=0, False=1); clauses of
// width < 3 are padded by repeating a literal. 2+4n+5m vertices, 6n+8m
// edges of which 2n+m are uncuttable.
SignedGraph reduce_3sat(const CnfFormula& f);

}  // namespace corrclust
