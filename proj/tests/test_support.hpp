#pragma once

// Instance and metric generators shared by the unit and acceptance suites.

#include <algorithm>
#include <cmath>
#include <vector>

#include "corrclust/relaxation.hpp"
#include "corrclust/rng.hpp"
#include "corrclust/signed_graph.hpp"

namespace corrclust::testsupport {

// Exactly symmetric Euclidean distance matrix of random points in [0,1]^dim.
inline std::vector<double> euclidean_metric(Rng& rng, int n, int dim, double scale = 1.0) {
  std::vector<std::vector<double>> pts(n, std::vector<double>(dim));
  for (auto& p : pts)
    for (auto& c : p) c = rng.uniform();
  std::vector<double> d(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double s = 0;
      for (int k = 0; k < dim; ++k) s += (pts[i][k] - pts[j][k]) * (pts[i][k] - pts[j][k]);
      double dist = scale * std::sqrt(s);
      d[static_cast<std::size_t>(i) * n + j] = dist;
      d[static_cast<std::size_t>(j) * n + i] = dist;
    }
  return d;
}

// Points drawn near a few centers; produces tight clusters with large gaps.
inline std::vector<double> clustered_metric(Rng& rng, int n, double scale = 1.0) {
  int k = 1 + static_cast<int>(rng.uniform_int(4));
  std::vector<double> centers(static_cast<std::size_t>(k) * 3);
  for (auto& c : centers) c = rng.uniform(0, 10);
  std::vector<std::vector<double>> pts(n, std::vector<double>(3));
  for (auto& p : pts) {
    int c = static_cast<int>(rng.uniform_int(k));
    for (int t = 0; t < 3; ++t) p[t] = centers[static_cast<std::size_t>(c) * 3 + t] + rng.uniform(0, 0.4);
  }
  std::vector<double> d(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double s = 0;
      for (int t = 0; t < 3; ++t) s += (pts[i][t] - pts[j][t]) * (pts[i][t] - pts[j][t]);
      double dist = scale * std::sqrt(s);
      d[static_cast<std::size_t>(i) * n + j] = dist;
      d[static_cast<std::size_t>(j) * n + i] = dist;
    }
  return d;
}

// Random metric in [0,1]: shortest-path closure of random lengths, capped.
inline std::vector<double> closure_metric(Rng& rng, int n, double cap = 1.0) {
  std::vector<double> d(static_cast<std::size_t>(n) * n, 0.0);
  auto at = [&d, n](int i, int j) -> double& { return d[static_cast<std::size_t>(i) * n + j]; };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) at(i, j) = at(j, i) = rng.uniform(0, 1.2);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (at(i, k) + at(k, j) < at(i, j)) at(i, j) = at(j, i) = at(i, k) + at(k, j);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double v = std::min(cap, at(i, j));
      at(i, j) = at(j, i) = v;
    }
  return d;
}

// Mixture of integral cut metrics capped at 1; hits the 0/1 boundary cases.
inline std::vector<double> cut_mixture_metric(Rng& rng, int n) {
  std::vector<double> d(static_cast<std::size_t>(n) * n, 0.0);
  int cuts = 1 + static_cast<int>(rng.uniform_int(4));
  for (int c = 0; c < cuts; ++c) {
    double lambda = rng.uniform(0.05, 0.8);
    std::vector<int> side(n);
    for (auto& s : side) s = static_cast<int>(rng.uniform_int(3));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (side[i] != side[j]) d[static_cast<std::size_t>(i) * n + j] += lambda;
  }
  for (auto& v : d) v = std::min(1.0, v);
  return d;
}

// A feasible x for the relaxation of an n-vertex instance (entries in [0,1],
// exact symmetry, zero diagonal, triangle inequality).
inline std::vector<double> random_feasible_x(Rng& rng, int n) {
  switch (rng.uniform_int(3)) {
    case 0: {
      auto d = euclidean_metric(rng, n, 3, rng.uniform(0.5, 2.5));
      for (auto& v : d) v = std::min(1.0, v);
      return d;
    }
    case 1:
      return cut_mixture_metric(rng, n);
    default:
      return closure_metric(rng, n, 1.0);
  }
}

inline SignedGraph random_unit_complete(Rng& rng, int n, double p_plus) {
  std::vector<SignedEdge> pos, neg;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      if (rng.uniform() < p_plus)
        pos.push_back({u, v, 1.0});
      else
        neg.push_back({u, v, 1.0});
    }
  return SignedGraph(n, std::move(pos), std::move(neg));
}

inline SignedGraph random_weighted(Rng& rng, int n, double p_edge, double p_plus, double w_lo,
                                   double w_hi) {
  std::vector<SignedEdge> pos, neg;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      if (rng.uniform() >= p_edge) continue;
      SignedEdge e{u, v, rng.uniform(w_lo, w_hi)};
      if (rng.uniform() < p_plus)
        pos.push_back(e);
      else
        neg.push_back(e);
    }
  return SignedGraph(n, std::move(pos), std::move(neg));
}

// Disagreement-free instance whose optimum is a fixed planted partition.
inline SignedGraph consistent_instance(int n, int clusters) {
  std::vector<SignedEdge> pos, neg;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      if (u % clusters == v % clusters)
        pos.push_back({u, v, 1.0});
      else
        neg.push_back({u, v, 1.0});
    }
  return SignedGraph(n, std::move(pos), std::move(neg));
}

}  // namespace corrclust::testsupport
