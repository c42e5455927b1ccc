#pragma once

#include <cstdint>
#include <vector>

#include "corrclust/rng.hpp"
#include "corrclust/signed_graph.hpp"

namespace corrclust {

// Finite metric on n points, dense distance matrix. The constructor checks
// symmetry (exact), zero diagonal, nonnegativity and the triangle
// inequality within 1e-7.
class MetricSpace {
 public:
  MetricSpace(int n, std::vector<double> distances);

  int n() const { return n_; }
  double d(int u, int v) const { return d_[static_cast<std::size_t>(u) * n_ + v]; }
  const std::vector<double>& matrix() const { return d_; }

 private:
  int n_;
  std::vector<double> d_;
};

// Parameters of the boundary-filtered decomposition: diameter bound delta,
// padding parameter D, boundary width eps = delta / sqrt(2 D n), boundary
// cap M = sqrt(2 D n), and ceil(log2 n) retries.
struct PaddedParams {
  double delta = 1.0;
  double padding_d = 1.0;
  double eps = 0.0;
  double cap_m = 0.0;
  int max_retries = 0;

  static PaddedParams for_metric(int n, double delta);
};

struct DecompositionAttempt {
  double eps = 0.0;
  double cap_m = 0.0;
  int boundary_size = 0;
  bool success = false;
};

struct DecompositionTrace {
  std::vector<DecompositionAttempt> attempts;
  bool fallback = false;
};

// One draw of the CKR-style padded decomposition: radius beta uniform in
// [delta/4, delta/2], random permutation ordering, each point joins the
// first permutation point within beta. Every cluster has diameter <= delta.
Clustering sample_padded(const MetricSpace& m, double delta, Rng& rng);

// Points within eps of a point in another cluster.
std::vector<int> boundary_neighborhood(const MetricSpace& m, const Clustering& c, double eps);

// Sampling with the boundary-size filter: retry up to ceil(log2 n) times,
// accept when |N_eps| <= M, fall back to threshold components otherwise.
// Attempt k uses the sub-seed derived from (seed, k), so attempts may be
// evaluated concurrently and the first success by index always wins.
Clustering decompose(const MetricSpace& m, double delta, std::uint64_t seed,
                     DecompositionTrace* trace = nullptr);
Clustering decompose(const MetricSpace& m, double delta, std::uint64_t seed,
                     const PaddedParams& params, DecompositionTrace* trace = nullptr);

// Connected components of the threshold graph with edges d(u,v) <= delta/n.
// Component diameters stay below delta.
Clustering fallback_components(const MetricSpace& m, double delta);

}  // namespace corrclust
