#pragma once

// Brute-force reference computations for small graphs. These deliberately
// avoid the library's BFS/Brandes code path: distances come from
// Floyd-Warshall and betweenness from explicit enumeration of every
// shortest path.

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "netsom/graph.hpp"

namespace netsom::oracle {

inline constexpr int kInf = std::numeric_limits<int>::max() / 4;

inline std::vector<std::vector<int>> adjacency_matrix(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
  for (auto [u, v] : g.edges()) a[u][v] = a[v][u] = 1;
  return a;
}

inline std::vector<std::vector<int>> floyd_warshall(const Graph& g) {
  const std::size_t n = g.node_count();
  auto a = adjacency_matrix(g);
  std::vector<std::vector<int>> d(n, std::vector<int>(n, kInf));
  for (std::size_t i = 0; i < n; ++i) {
    d[i][i] = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (a[i][j]) d[i][j] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
  return d;
}

/// Enumerates every shortest s-t path; counts[v] = paths through interior v.
inline void enumerate_paths(const std::vector<std::vector<int>>& adj, const std::vector<std::vector<int>>& d,
                            std::size_t s, std::size_t t, std::vector<std::size_t>& path, std::uint64_t& total,
                            std::vector<std::uint64_t>& through) {
  const std::size_t v = path.back();
  if (v == t) {
    ++total;
    for (std::size_t i = 1; i + 1 < path.size(); ++i) ++through[path[i]];
    return;
  }
  for (std::size_t w = 0; w < adj.size(); ++w)
    if (adj[v][w] && d[s][w] == d[s][v] + 1 && d[w][t] == d[v][t] - 1) {
      path.push_back(w);
      enumerate_paths(adj, d, s, t, path, total, through);
      path.pop_back();
    }
}

/// Normalized betweenness by explicit path enumeration over unordered pairs.
inline std::vector<double> betweenness(const Graph& g) {
  const std::size_t n = g.node_count();
  auto adj = adjacency_matrix(g);
  auto d = floyd_warshall(g);
  std::vector<double> b(n, 0.0);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < s; ++t) {
      if (d[s][t] >= kInf) continue;
      std::uint64_t total = 0;
      std::vector<std::uint64_t> through(n, 0);
      std::vector<std::size_t> path{s};
      enumerate_paths(adj, d, s, t, path, total, through);
      for (std::size_t i = 0; i < n; ++i)
        if (i != s && i != t) b[i] += static_cast<double>(through[i]) / static_cast<double>(total);
    }
  const double pairs = static_cast<double>(n - 1) * static_cast<double>(n - 2) / 2.0;
  for (auto& x : b) x /= pairs;
  return b;
}

inline std::vector<double> avg_path_length(const Graph& g) {
  const std::size_t n = g.node_count();
  auto d = floyd_warshall(g);
  std::vector<double> L(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) sum += d[i][j];
    L[i] = sum / static_cast<double>(n - 1);
  }
  return L;
}

/// Mean over all ordered pairs i != j of d(i, j).
inline double characteristic_path_length(const Graph& g) {
  const std::size_t n = g.node_count();
  auto d = floyd_warshall(g);
  double sum = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) sum += d[i][j];
  return sum / (static_cast<double>(n) * static_cast<double>(n - 1));
}

inline std::vector<double> clustering(const Graph& g) {
  const std::size_t n = g.node_count();
  auto a = adjacency_matrix(g);
  std::vector<double> c(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> nb;
    for (std::size_t j = 0; j < n; ++j)
      if (a[i][j]) nb.push_back(j);
    if (nb.size() < 2) continue;
    std::size_t links = 0, pairs = 0;
    for (std::size_t x = 0; x < nb.size(); ++x)
      for (std::size_t y = x + 1; y < nb.size(); ++y) {
        ++pairs;
        links += a[nb[x]][nb[y]];
      }
    c[i] = static_cast<double>(links) / static_cast<double>(pairs);
  }
  return c;
}

/// Random connected graph on n nodes: random spanning tree plus each other
/// pair independently with probability p.
inline Graph random_connected(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  for (NodeId v = 1; v < n; ++v)
    edges.emplace_back(static_cast<NodeId>(std::uniform_int_distribution<std::size_t>(0, v - 1)(rng)), v);
  std::bernoulli_distribution extra(p);
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (extra(rng)) edges.emplace_back(u, v);
  return build_graph(n, edges);
}

inline Graph star(std::size_t leaves) {
  std::vector<Edge> e;
  for (NodeId i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return build_graph(leaves + 1, e);
}

inline Graph complete(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return build_graph(n, e);
}

inline Graph path(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId v = 1; v < n; ++v) e.emplace_back(v - 1, v);
  return build_graph(n, e);
}

}  // namespace netsom::oracle
