#include "corrclust/signed_graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace corrclust {

namespace {

std::uint64_t pair_key(int u, int v) {
  return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
}

void canonicalize(std::vector<SignedEdge>& edges, int n, std::unordered_set<std::uint64_t>& seen,
                  const char* side) {
  for (auto& e : edges) {
    if (e.u == e.v)
      throw ContractViolation("self-loop on vertex " + std::to_string(e.u));
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
      throw ContractViolation("edge endpoint out of range for n=" + std::to_string(n));
    if (e.u > e.v) std::swap(e.u, e.v);
    if (!e.infinite && (!std::isfinite(e.weight) || e.weight < 0)) {
      std::ostringstream os;
      os << side << " edge (" << e.u << "," << e.v << ") has invalid weight " << e.weight;
      throw ContractViolation(os.str());
    }
    if (!seen.insert(pair_key(e.u, e.v)).second) {
      std::ostringstream os;
      os << "pair (" << e.u << "," << e.v << ") appears more than once";
      throw ContractViolation(os.str());
    }
  }
  std::sort(edges.begin(), edges.end(), [](const SignedEdge& a, const SignedEdge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
}

}  // namespace

SignedGraph::SignedGraph(int n, std::vector<SignedEdge> pos_edges, std::vector<SignedEdge> neg_edges,
                         std::optional<Bipartition> bipartition, std::optional<Terminals> terminals)
    : n_(n), pos_(std::move(pos_edges)), neg_(std::move(neg_edges)),
      bipartition_(std::move(bipartition)), terminals_(std::move(terminals)) {
  if (n_ < 0) throw ContractViolation("negative vertex count");
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(pos_.size() + neg_.size());
  canonicalize(pos_, n_, seen, "positive");
  canonicalize(neg_, n_, seen, "negative");
  for (const auto& e : pos_) num_infinite_ += e.infinite ? 1 : 0;
  for (const auto& e : neg_) num_infinite_ += e.infinite ? 1 : 0;

  if (bipartition_) {
    left_mask_.assign(n_, 0);
    std::vector<char> covered(n_, 0);
    for (int u : bipartition_->left) {
      if (u < 0 || u >= n_ || covered[u]) throw ContractViolation("invalid bipartition left set");
      covered[u] = 1;
      left_mask_[u] = 1;
    }
    for (int u : bipartition_->right) {
      if (u < 0 || u >= n_ || covered[u]) throw ContractViolation("bipartition sides overlap");
      covered[u] = 1;
    }
    for (int u = 0; u < n_; ++u)
      if (!covered[u]) throw ContractViolation("bipartition does not cover vertex " + std::to_string(u));
    auto crosses = [&](const SignedEdge& e) { return left_mask_[e.u] != left_mask_[e.v]; };
    for (const auto& e : pos_)
      if (!crosses(e)) throw ContractViolation("edge does not cross the bipartition");
    for (const auto& e : neg_)
      if (!crosses(e)) throw ContractViolation("edge does not cross the bipartition");
  }

  if (terminals_) {
    if (terminals_->s == terminals_->t) throw ContractViolation("terminals must be distinct");
    if (terminals_->s < 0 || terminals_->s >= n_ || terminals_->t < 0 || terminals_->t >= n_)
      throw ContractViolation("terminal out of range");
  }
}

bool SignedGraph::is_complete_unit() const {
  if (num_infinite_ > 0) return false;
  std::size_t pairs = static_cast<std::size_t>(n_) * (n_ - 1) / 2;
  if (pos_.size() + neg_.size() != pairs) return false;
  for (const auto& e : pos_)
    if (std::abs(e.weight - 1.0) > kWeightTol) return false;
  for (const auto& e : neg_)
    if (std::abs(e.weight - 1.0) > kWeightTol) return false;
  return true;
}

bool SignedGraph::is_complete_bipartite_unit() const {
  if (!bipartition_ || num_infinite_ > 0) return false;
  std::size_t pairs = bipartition_->left.size() * bipartition_->right.size();
  if (pos_.size() + neg_.size() != pairs) return false;  // crossing is a class invariant
  for (const auto& e : pos_)
    if (std::abs(e.weight - 1.0) > kWeightTol) return false;
  for (const auto& e : neg_)
    if (std::abs(e.weight - 1.0) > kWeightTol) return false;
  return true;
}

Clustering::Clustering(std::vector<int> assignment) : assignment_(std::move(assignment)) {
  // normalize ids to 0..k-1 by first appearance
  std::unordered_map<int, int> remap;
  remap.reserve(assignment_.size());
  for (auto& a : assignment_) {
    auto [it, inserted] = remap.emplace(a, static_cast<int>(remap.size()));
    a = it->second;
  }
  num_clusters_ = static_cast<int>(remap.size());
}

std::vector<std::vector<int>> Clustering::clusters() const {
  std::vector<std::vector<int>> out(num_clusters_);
  for (int u = 0; u < n(); ++u) out[assignment_[u]].push_back(u);
  return out;
}

NormSpec::NormSpec(double q) : q_(q) {
  if (std::isnan(q_) || q_ < 1.0)
    throw ContractViolation("norm parameter q must be >= 1, got " + std::to_string(q));
}

NormSpec NormSpec::infinity() { return NormSpec(std::numeric_limits<double>::infinity()); }

NormSpec NormSpec::parse(const std::string& text) {
  if (text == "inf" || text == "INF" || text == "infinity") return infinity();
  std::size_t pos = 0;
  double q = 0;
  try {
    q = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw ContractViolation("cannot parse norm parameter '" + text + "'");
  }
  if (pos != text.size()) throw ContractViolation("cannot parse norm parameter '" + text + "'");
  return NormSpec(q);
}

std::string NormSpec::to_string() const {
  if (is_infinite()) return "inf";
  std::ostringstream os;
  os << q_;
  return os.str();
}

DisagreeVector disagreement_vector(const SignedGraph& g, const Clustering& c) {
  if (c.n() != g.n())
    throw ContractViolation("clustering covers " + std::to_string(c.n()) + " vertices, graph has " +
                            std::to_string(g.n()));
  DisagreeVector out;
  out.values.assign(g.n(), 0.0);
  out.infinite_hit.assign(g.n(), 0);
  auto add = [&out](const SignedEdge& e) {
    if (e.infinite) {
      out.infinite_hit[e.u] = 1;
      out.infinite_hit[e.v] = 1;
    } else {
      out.values[e.u] += e.weight;
      out.values[e.v] += e.weight;
    }
  };
  for (const auto& e : g.pos_edges())
    if (!c.same_cluster(e.u, e.v)) add(e);
  for (const auto& e : g.neg_edges())
    if (c.same_cluster(e.u, e.v)) add(e);
  return out;
}

DisagreeVector cut_vector(const std::vector<SignedEdge>& edges, const Clustering& c) {
  DisagreeVector out;
  out.values.assign(c.n(), 0.0);
  out.infinite_hit.assign(c.n(), 0);
  for (const auto& e : edges) {
    if (e.u >= c.n() || e.v >= c.n())
      throw ContractViolation("edge endpoint not covered by clustering");
    if (c.same_cluster(e.u, e.v)) continue;
    if (e.infinite) {
      out.infinite_hit[e.u] = 1;
      out.infinite_hit[e.v] = 1;
    } else {
      out.values[e.u] += e.weight;
      out.values[e.v] += e.weight;
    }
  }
  return out;
}

double lq_norm(const std::vector<double>& values, const NormSpec& q) {
  if (q.is_infinite()) {
    double m = 0.0;
    for (double v : values) m = std::max(m, v);
    return m;
  }
  if (q.q() == 1.0) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  double s = 0.0;
  for (double v : values) s += std::pow(v, q.q());
  return std::pow(s, 1.0 / q.q());
}

double lq_norm(const DisagreeVector& v, const NormSpec& q) { return lq_norm(v.values, q); }

double objective(const SignedGraph& g, const Clustering& c, const NormSpec& q, Scope scope) {
  if (scope == Scope::kLeftSide && !g.bipartition())
    throw ContractViolation("left-side objective requires a bipartition");
  DisagreeVector d = disagreement_vector(g, c);
  if (scope == Scope::kAll) {
    if (!d.feasible()) return std::numeric_limits<double>::infinity();
    return lq_norm(d, q);
  }
  std::vector<double> restricted;
  restricted.reserve(g.bipartition()->left.size());
  for (int u = 0; u < g.n(); ++u) {
    if (!g.left_mask()[u]) continue;
    if (d.infinite_hit[u]) return std::numeric_limits<double>::infinity();
    restricted.push_back(d.values[u]);
  }
  return lq_norm(restricted, q);
}

}  // namespace corrclust
