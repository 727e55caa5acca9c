#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "netsom/graph.hpp"

namespace netsom {

/// Ranks starting at 1; tied values share their average rank.
inline std::vector<double> average_ranks(const std::vector<double>& v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> rank(v.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
    const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) rank[idx[k]] = r;
    i = j + 1;
  }
  return rank;
}

/// Pearson correlation; NaN when either side has zero variance.
inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("correlation inputs differ in length");
  const std::size_t n = x.size();
  if (n < 2) return std::nan("");
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return std::nan("");
  return sxy / std::sqrt(sxx * syy);
}

inline double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  return pearson(average_ranks(x), average_ranks(y));
}

/// Newman's degree assortativity: Pearson correlation of the degrees at
/// either end of an edge, each edge counted in both directions.
inline double degree_assortativity(const Graph& g) {
  std::vector<double> a, b;
  a.reserve(2 * g.edge_count());
  b.reserve(2 * g.edge_count());
  for (auto [u, v] : g.edges()) {
    const double du = static_cast<double>(g.degree(u)), dv = static_cast<double>(g.degree(v));
    a.push_back(du);
    b.push_back(dv);
    a.push_back(dv);
    b.push_back(du);
  }
  return pearson(a, b);
}

inline double mean_degree(const Graph& g) {
  return g.node_count() ? 2.0 * static_cast<double>(g.edge_count()) / static_cast<double>(g.node_count()) : 0.0;
}

inline double mean(const std::vector<double>& v) {
  return v.empty() ? std::nan("") : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace netsom
