#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "corrclust/errors.hpp"

namespace corrclust {

inline constexpr double kWeightTol = 1e-9;  // default comparison tolerance

// Edge in canonical form u < v. `infinite` marks an uncuttable edge; the
// weight field of such an edge is ignored.
struct SignedEdge {
  int u = 0;
  int v = 0;
  double weight = 1.0;
  bool infinite = false;
};

struct Bipartition {
  std::vector<int> left;
  std::vector<int> right;
};

struct Terminals {
  int s = 0;
  int t = 0;
};

// Vertices plus disjoint positive/negative weighted edge sets. Immutable
// after construction; all invariants are validated by the constructor.
class SignedGraph {
 public:
  SignedGraph(int n, std::vector<SignedEdge> pos_edges, std::vector<SignedEdge> neg_edges,
              std::optional<Bipartition> bipartition = std::nullopt,
              std::optional<Terminals> terminals = std::nullopt);

  int n() const { return n_; }
  const std::vector<SignedEdge>& pos_edges() const { return pos_; }
  const std::vector<SignedEdge>& neg_edges() const { return neg_; }
  const std::optional<Bipartition>& bipartition() const { return bipartition_; }
  const std::optional<Terminals>& terminals() const { return terminals_; }

  bool has_infinite_edges() const { return num_infinite_ > 0; }
  int num_infinite_edges() const { return num_infinite_; }
  std::size_t num_edges() const { return pos_.size() + neg_.size(); }

  // True when every unordered pair carries an edge of weight 1 (the shape
  // Algorithm 2 requires).
  bool is_complete_unit() const;
  // True when the graph has a bipartition, every L x R pair carries an edge
  // of weight 1, and there are no other edges.
  bool is_complete_bipartite_unit() const;

  // Membership mask of the left side; empty when no bipartition.
  const std::vector<char>& left_mask() const { return left_mask_; }

 private:
  int n_;
  std::vector<SignedEdge> pos_, neg_;
  std::optional<Bipartition> bipartition_;
  std::optional<Terminals> terminals_;
  std::vector<char> left_mask_;
  int num_infinite_ = 0;
};

// Total assignment of vertices to cluster ids. Ids are normalized to a
// contiguous range ordered by first appearance.
class Clustering {
 public:
  explicit Clustering(std::vector<int> assignment);

  static Clustering single_cluster(int n) { return Clustering(std::vector<int>(n, 0)); }
  static Clustering singletons(int n) {
    std::vector<int> a(n);
    for (int i = 0; i < n; ++i) a[i] = i;
    return Clustering(std::move(a));
  }

  int n() const { return static_cast<int>(assignment_.size()); }
  int cluster_of(int u) const { return assignment_[u]; }
  int num_clusters() const { return num_clusters_; }
  bool same_cluster(int u, int v) const { return assignment_[u] == assignment_[v]; }
  const std::vector<int>& assignment() const { return assignment_; }
  std::vector<std::vector<int>> clusters() const;

  bool operator==(const Clustering& other) const { return assignment_ == other.assignment_; }

 private:
  std::vector<int> assignment_;
  int num_clusters_ = 0;
};

// lq norm selector: finite q >= 1 or infinity.
class NormSpec {
 public:
  explicit NormSpec(double q);
  static NormSpec infinity();
  static NormSpec parse(const std::string& text);

  bool is_infinite() const { return std::isinf(q_); }
  double q() const { return q_; }
  std::string to_string() const;

 private:
  double q_;
};

// Per-vertex weights of disagreeing (or cut) edges. Contributions of
// uncuttable edges are tracked as per-vertex flags instead of float
// infinities so the numeric entries stay finite.
struct DisagreeVector {
  std::vector<double> values;
  std::vector<char> infinite_hit;  // vertex touches a disagreeing/cut uncuttable edge

  bool feasible() const {
    for (char f : infinite_hit)
      if (f) return false;
    return true;
  }
};

enum class Scope { kAll, kLeftSide };

// Per-vertex weight of edges in disagreement with c: a positive edge
// disagrees when its endpoints are separated, a negative edge when they
// share a cluster.
DisagreeVector disagreement_vector(const SignedGraph& g, const Clustering& c);

// Per-vertex weight of edges whose endpoints are separated by c.
DisagreeVector cut_vector(const std::vector<SignedEdge>& edges, const Clustering& c);

// (sum_u v_u^q)^(1/q); max for the infinity norm. Ignores infinite flags.
double lq_norm(const DisagreeVector& v, const NormSpec& q);
double lq_norm(const std::vector<double>& values, const NormSpec& q);

// lq norm of the disagreement vector restricted to the scope. Returns
// +infinity when an uncuttable edge disagrees at an in-scope vertex.
double objective(const SignedGraph& g, const Clustering& c, const NormSpec& q,
                 Scope scope = Scope::kAll);

}  // namespace corrclust
