#include "corrclust/instances.hpp"

#include <cmath>
#include <limits>

#include "corrclust/rng.hpp"

namespace corrclust {

void validate(const CnfFormula& f) {
  if (f.num_vars <= 0 || f.clauses.empty())
    throw ContractViolation("formula must have at least one variable and one clause");
  for (const auto& clause : f.clauses) {
    if (clause.empty() || clause.size() > 3)
      throw ContractViolation("clause width must be between 1 and 3");
    for (int lit : clause)
      if (lit == 0 || std::abs(lit) > f.num_vars)
        throw ContractViolation("literal out of range: " + std::to_string(lit));
  }
}

SignedGraph gen_random(int n, double p_plus, double p_edge, std::uint64_t seed) {
  if (p_plus < 0 || p_plus > 1 || p_edge < 0 || p_edge > 1)
    throw ContractViolation("probabilities must lie in [0,1]");
  Rng rng(seed);
  std::vector<SignedEdge> pos, neg;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      if (rng.uniform() >= p_edge) continue;
      if (rng.uniform() < p_plus)
        pos.push_back({u, v, 1.0});
      else
        neg.push_back({u, v, 1.0});
    }
  return SignedGraph(n, std::move(pos), std::move(neg));
}

SignedGraph gen_random_bipartite(int left, int right, double p_plus, std::uint64_t seed) {
  if (left <= 0 || right <= 0) throw ContractViolation("both sides must be nonempty");
  if (p_plus < 0 || p_plus > 1) throw ContractViolation("probabilities must lie in [0,1]");
  Rng rng(seed);
  std::vector<SignedEdge> pos, neg;
  Bipartition bip;
  for (int u = 0; u < left; ++u) bip.left.push_back(u);
  for (int v = 0; v < right; ++v) bip.right.push_back(left + v);
  for (int u = 0; u < left; ++u)
    for (int v = 0; v < right; ++v) {
      if (rng.uniform() < p_plus)
        pos.push_back({u, left + v, 1.0});
      else
        neg.push_back({u, left + v, 1.0});
    }
  return SignedGraph(left + right, std::move(pos), std::move(neg), std::move(bip));
}

namespace {

// vertex layout of G_{a,b}: s_i = i for i in 0..b, then per layer i (1-based)
// a left vertices followed by a right vertices
struct GapLayout {
  int a, b;
  int n() const { return 2 * a * b + b + 1; }
  int terminal(int i) const { return i; }
  int left(int layer, int j) const { return b + 1 + (layer - 1) * 2 * a + j; }
  int right(int layer, int j) const { return b + 1 + (layer - 1) * 2 * a + a + j; }
};

}  // namespace

SignedGraph gen_gap(const GapParams& p) {
  if (p.a < 1 || p.b < 1) throw ContractViolation("gap parameters must be >= 1");
  GapLayout ly{p.a, p.b};
  std::vector<SignedEdge> pos;
  pos.reserve(static_cast<std::size_t>(p.b) * p.a * p.a + 2 * p.a * p.b);
  for (int i = 1; i <= p.b; ++i) {
    for (int j = 0; j < p.a; ++j)
      for (int k = 0; k < p.a; ++k) pos.push_back({ly.left(i, j), ly.right(i, k), 1.0});
    for (int j = 0; j < p.a; ++j) {
      pos.push_back({ly.terminal(i - 1), ly.left(i, j), 1.0});
      pos.push_back({ly.terminal(i), ly.right(i, j), 1.0});
    }
  }
  return SignedGraph(ly.n(), std::move(pos), {}, std::nullopt,
                     Terminals{ly.terminal(0), ly.terminal(p.b)});
}

GapFractional gap_fractional(const GapParams& p, const NormSpec& q) {
  if (q.is_infinite())
    throw UnsupportedConfiguration("the gap formula is stated for finite q");
  SignedGraph g = gen_gap(p);
  GapLayout ly{p.a, p.b};
  const int n = g.n();
  const double inf = std::numeric_limits<double>::infinity();

  // edge lengths: 1/b on (s_i, R_i), 0 elsewhere; x = shortest-path metric
  std::vector<double> dist(static_cast<std::size_t>(n) * n, inf);
  auto at = [&dist, n](int u, int v) -> double& { return dist[static_cast<std::size_t>(u) * n + v]; };
  for (int u = 0; u < n; ++u) at(u, u) = 0.0;
  const double step = 1.0 / p.b;
  for (const auto& e : g.pos_edges()) {
    double len = 0.0;
    for (int i = 1; i <= p.b; ++i) {
      if (e.u == ly.terminal(i) || e.v == ly.terminal(i)) {
        int other = e.u == ly.terminal(i) ? e.v : e.u;
        if (other >= ly.right(i, 0) && other <= ly.right(i, p.a - 1)) {
          len = step;
          break;
        }
      }
    }
    at(e.u, e.v) = std::min(at(e.u, e.v), len);
    at(e.v, e.u) = at(e.u, e.v);
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      if (at(i, k) == inf) continue;
      for (int j = 0; j < n; ++j) {
        double via = at(i, k) + at(k, j);
        if (via < at(i, j)) at(i, j) = at(j, i) = via;
      }
    }
  GapFractional out;
  out.solution = solution_from_matrix(g, q, std::move(dist), /*with_z=*/false);
  out.formula_value = std::pow(
      p.a * p.b * std::pow(1.0 / p.b, q.q()) + p.b * std::pow(static_cast<double>(p.a) / p.b, q.q()),
      1.0 / q.q());
  out.solution.lower_bound = 0.0;
  return out;
}

SignedGraph reduce_3sat(const CnfFormula& f) {
  validate(f);
  const int n = f.num_vars;
  const int m = static_cast<int>(f.clauses.size());
  const int kTrue = 0, kFalse = 1;
  auto var_true = [](int i) { return 2 + 4 * (i - 1); };      // x_i^T
  auto var_false = [](int i) { return 2 + 4 * (i - 1) + 1; };  // x_i^F
  auto var_pos = [](int i) { return 2 + 4 * (i - 1) + 2; };    // x_i dagger
  auto var_neg = [](int i) { return 2 + 4 * (i - 1) + 3; };    // negated-literal dagger
  auto clause_base = [n](int j) { return 2 + 4 * n + 5 * j; };

  std::vector<SignedEdge> pos;
  pos.reserve(static_cast<std::size_t>(6) * n + 8 * m);
  for (int i = 1; i <= n; ++i) {
    pos.push_back({kTrue, var_true(i), 1.0, true});
    pos.push_back({kFalse, var_false(i), 1.0, true});
    pos.push_back({var_true(i), var_pos(i), 1.0});
    pos.push_back({var_true(i), var_neg(i), 1.0});
    pos.push_back({var_false(i), var_pos(i), 1.0});
    pos.push_back({var_false(i), var_neg(i), 1.0});
  }
  for (int j = 0; j < m; ++j) {
    // pad short clauses by repeating the last literal; each slot keeps its
    // own gadget node, so the graph stays simple
    std::vector<int> lits = f.clauses[static_cast<std::size_t>(j)];
    while (lits.size() < 3) lits.push_back(lits.back());
    const int y1 = clause_base(j), y2 = clause_base(j) + 1, y3 = clause_base(j) + 2;
    const int ca = clause_base(j) + 3, cb = clause_base(j) + 4;
    pos.push_back({y2, cb, 1.0});
    pos.push_back({y3, cb, 1.0});
    pos.push_back({y1, ca, 1.0});
    pos.push_back({cb, ca, 1.0});
    pos.push_back({kTrue, ca, 1.0, true});
    const int slots[3] = {y1, y2, y3};
    for (int s = 0; s < 3; ++s) {
      int lit = lits[static_cast<std::size_t>(s)];
      int dagger = lit > 0 ? var_pos(lit) : var_neg(-lit);
      pos.push_back({slots[s], dagger, 1.0});
    }
  }
  return SignedGraph(2 + 4 * n + 5 * m, std::move(pos), {}, std::nullopt,
                     Terminals{kTrue, kFalse});
}

}  // namespace corrclust
