#include "corrclust/decomposition.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace corrclust {

MetricSpace::MetricSpace(int n, std::vector<double> distances) : n_(n), d_(std::move(distances)) {
  if (n_ < 0 || d_.size() != static_cast<std::size_t>(n_) * n_)
    throw ContractViolation("distance matrix has the wrong shape");
  for (int i = 0; i < n_; ++i) {
    if (d(i, i) != 0.0) throw ContractViolation("metric diagonal must be exactly zero");
    for (int j = i + 1; j < n_; ++j) {
      if (d(i, j) != d(j, i)) throw ContractViolation("metric must be exactly symmetric");
      if (!(d(i, j) >= 0.0)) throw ContractViolation("negative or NaN distance");
    }
  }
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      for (int k = j + 1; k < n_; ++k) {
        if (j == i || k == i) continue;
        if (d(j, k) > d(j, i) + d(i, k) + 1e-7) {
          std::ostringstream os;
          os << "triangle inequality violated on (" << j << "," << i << "," << k << ") by "
             << d(j, k) - d(j, i) - d(i, k);
          throw ContractViolation(os.str());
        }
      }
}

PaddedParams PaddedParams::for_metric(int n, double delta) {
  if (delta <= 0) throw ContractViolation("delta must be positive");
  if (n <= 0) throw ContractViolation("empty metric");
  PaddedParams p;
  p.delta = delta;
  p.padding_d = 8.0 * (1.0 + std::log(static_cast<double>(n)));
  p.eps = delta / std::sqrt(2.0 * p.padding_d * n);
  p.cap_m = std::sqrt(2.0 * p.padding_d * n);
  p.max_retries = static_cast<int>(std::ceil(std::log2(static_cast<double>(n))));
  return p;
}

Clustering sample_padded(const MetricSpace& m, double delta, Rng& rng) {
  if (delta <= 0) throw ContractViolation("delta must be positive");
  const int n = m.n();
  const double beta = delta / 4.0 * (1.0 + rng.uniform());  // [delta/4, delta/2)
  std::vector<int> order = rng.permutation(n);
  std::vector<int> assignment(n, -1);
  for (int u = 0; u < n; ++u) {
    for (int center : order) {
      if (m.d(u, center) <= beta) {
        assignment[u] = center;
        break;
      }
    }
    // u itself appears in the permutation, so a center always exists
  }
  return Clustering(std::move(assignment));
}

std::vector<int> boundary_neighborhood(const MetricSpace& m, const Clustering& c, double eps) {
  std::vector<int> out;
  const int n = m.n();
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (v == u || c.same_cluster(u, v)) continue;
      if (m.d(u, v) <= eps) {
        out.push_back(u);
        break;
      }
    }
  }
  return out;
}

Clustering decompose(const MetricSpace& m, double delta, std::uint64_t seed,
                     DecompositionTrace* trace) {
  return decompose(m, delta, seed, PaddedParams::for_metric(m.n(), delta), trace);
}

Clustering decompose(const MetricSpace& m, double delta, std::uint64_t seed,
                     const PaddedParams& params, DecompositionTrace* trace) {
  if (delta <= 0) throw ContractViolation("delta must be positive");
  if (trace) *trace = DecompositionTrace{};
  for (int attempt = 0; attempt < params.max_retries; ++attempt) {
    Rng rng(subseed(seed, static_cast<std::uint64_t>(attempt)));
    Clustering c = sample_padded(m, delta, rng);
    auto boundary = boundary_neighborhood(m, c, params.eps);
    bool success = static_cast<double>(boundary.size()) <= std::floor(params.cap_m);
    if (trace)
      trace->attempts.push_back(
          {params.eps, params.cap_m, static_cast<int>(boundary.size()), success});
    if (success) return c;
  }
  if (trace) trace->fallback = true;
  return fallback_components(m, delta);
}

Clustering fallback_components(const MetricSpace& m, double delta) {
  if (delta <= 0) throw ContractViolation("delta must be positive");
  const int n = m.n();
  const double threshold = delta / std::max(n, 1);
  // union-find over threshold edges
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (m.d(u, v) <= threshold) {
        int ru = find(u), rv = find(v);
        if (ru != rv) parent[ru] = rv;
      }
  std::vector<int> assignment(n);
  for (int u = 0; u < n; ++u) assignment[u] = find(u);
  return Clustering(std::move(assignment));
}

}  // namespace corrclust
