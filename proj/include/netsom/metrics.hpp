#pragma once

// Per-node structural features n_i = (k, k_nn, b, L, C).

#include <array>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "netsom/graph.hpp"
#include "netsom/io.hpp"
#include "netsom/parallel.hpp"

namespace netsom {

inline constexpr std::size_t kFeatureCount = 5;
inline constexpr std::array<const char*, kFeatureCount> kFeatureNames = {"k", "k_nn", "b", "L", "C"};

using FeatureVector = std::array<double, kFeatureCount>;

/// Column-major per-node features; all columns have node_count entries.
struct NodeFeatures {
  std::vector<double> k;
  std::vector<double> k_nn;
  std::vector<double> b;
  std::vector<double> L;
  std::vector<double> C;

  std::size_t size() const { return k.size(); }

  const std::vector<double>& column(std::size_t f) const {
    switch (f) {
      case 0: return k;
      case 1: return k_nn;
      case 2: return b;
      case 3: return L;
      case 4: return C;
    }
    throw std::out_of_range("feature index");
  }
  std::vector<double>& column(std::size_t f) {
    return const_cast<std::vector<double>&>(std::as_const(*this).column(f));
  }

  FeatureVector row(std::size_t i) const { return {k[i], k_nn[i], b[i], L[i], C[i]}; }

  friend bool operator==(const NodeFeatures&, const NodeFeatures&) = default;
};

class MetricsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::vector<double> compute_degree(const Graph& g) {
  std::vector<double> k(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) k[v] = static_cast<double>(g.degree(v));
  return k;
}

/// Mean neighbour degree; 0 for isolated nodes.
inline std::vector<double> compute_avg_neighbor_degree(const Graph& g) {
  std::vector<double> out(g.node_count(), 0.0);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    auto adj = g.neighbors(v);
    if (adj.empty()) continue;
    std::uint64_t sum = 0;
    for (NodeId w : adj) sum += g.degree(w);
    out[v] = static_cast<double>(sum) / static_cast<double>(adj.size());
  }
  return out;
}

/// Local clustering E_i / (k_i (k_i - 1) / 2); 0 when k_i < 2.
inline std::vector<double> compute_clustering(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<double> out(n, 0.0);
  std::vector<char> mark(n, 0);
  for (NodeId v = 0; v < n; ++v) {
    auto adj = g.neighbors(v);
    const std::size_t k = adj.size();
    if (k < 2) continue;
    for (NodeId w : adj) mark[w] = 1;
    std::uint64_t links = 0;
    for (NodeId w : adj)
      for (NodeId x : g.neighbors(w))
        if (x > w && mark[x]) ++links;
    for (NodeId w : adj) mark[w] = 0;
    out[v] = static_cast<double>(links) / (static_cast<double>(k) * static_cast<double>(k - 1) / 2.0);
  }
  return out;
}

namespace detail {

/// Sources are split into this many contiguous blocks regardless of the
/// worker count; block partials are summed in block order, so betweenness is
/// bit-identical for any number of threads.
inline constexpr std::size_t kSourceBlocks = 64;

struct ShortestPathSums {
  std::vector<double> betweenness_raw;  // sum over ordered (s,t) of pair dependencies
  std::vector<std::uint64_t> distance_sum;
};

/// One BFS + Brandes back-propagation per source.
inline ShortestPathSums shortest_path_sums(const Graph& g, bool want_betweenness, bool require_connected) {
  const std::size_t n = g.node_count();
  const std::size_t blocks = std::min(kSourceBlocks, std::max<std::size_t>(n, 1));
  std::vector<std::vector<double>> partial(want_betweenness ? blocks : 0);
  ShortestPathSums sums;
  sums.distance_sum.assign(n, 0);

  parallel_for(blocks, worker_count(), [&](std::size_t block) {
    const std::size_t begin = n * block / blocks;
    const std::size_t end = n * (block + 1) / blocks;
    std::vector<std::int32_t> dist(n, -1);
    std::vector<double> sigma(n, 0.0);
    std::vector<double> delta(n, 0.0);
    std::vector<NodeId> order;
    order.reserve(n);
    std::vector<double> acc;
    if (want_betweenness) acc.assign(n, 0.0);

    for (std::size_t s = begin; s < end; ++s) {
      order.clear();
      order.push_back(static_cast<NodeId>(s));
      dist[s] = 0;
      sigma[s] = 1.0;
      std::uint64_t total = 0;
      for (std::size_t head = 0; head < order.size(); ++head) {
        NodeId v = order[head];
        total += static_cast<std::uint64_t>(dist[v]);
        for (NodeId w : g.neighbors(v)) {
          if (dist[w] < 0) {
            dist[w] = dist[v] + 1;
            order.push_back(w);
          }
          if (dist[w] == dist[v] + 1) sigma[w] += sigma[v];
        }
      }
      if (require_connected && order.size() != n) {
        NodeId missing = 0;
        while (dist[missing] >= 0) ++missing;
        throw MetricsError("graph is disconnected: no path between nodes " + std::to_string(s) +
                           " and " + std::to_string(missing));
      }
      sums.distance_sum[s] = total;

      if (want_betweenness) {
        for (std::size_t idx = order.size(); idx-- > 1;) {
          NodeId w = order[idx];
          const double coeff = (1.0 + delta[w]) / sigma[w];
          for (NodeId v : g.neighbors(w))
            if (dist[v] == dist[w] - 1) delta[v] += sigma[v] * coeff;
          acc[w] += delta[w];
        }
      }
      for (NodeId v : order) {
        dist[v] = -1;
        sigma[v] = 0.0;
        delta[v] = 0.0;
      }
    }
    if (want_betweenness) partial[block] = std::move(acc);
  });

  if (want_betweenness) {
    sums.betweenness_raw.assign(n, 0.0);
    for (const auto& part : partial)
      for (std::size_t i = 0; i < n; ++i) sums.betweenness_raw[i] += part[i];
  }
  return sums;
}

inline std::vector<double> normalize_betweenness(const std::vector<double>& raw, std::size_t n) {
  // raw counts every unordered pair twice (once per orientation).
  const double pairs = static_cast<double>(n - 1) * static_cast<double>(n - 2);
  std::vector<double> b(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) b[i] = raw[i] / pairs;
  return b;
}

inline std::vector<double> mean_distance(const std::vector<std::uint64_t>& sums, std::size_t n) {
  std::vector<double> L(sums.size());
  for (std::size_t i = 0; i < sums.size(); ++i)
    L[i] = static_cast<double>(sums[i]) / static_cast<double>(n - 1);
  return L;
}

}  // namespace detail

/// Normalized betweenness: fraction of shortest paths between unordered
/// pairs of other nodes that pass through i, over (N-1)(N-2)/2 pairs.
/// Disconnected pairs contribute nothing. Requires N >= 3.
inline std::vector<double> compute_betweenness(const Graph& g) {
  const std::size_t n = g.node_count();
  if (n < 3) throw MetricsError("betweenness needs at least 3 nodes, got " + std::to_string(n));
  auto sums = detail::shortest_path_sums(g, true, false);
  return detail::normalize_betweenness(sums.betweenness_raw, n);
}

/// Mean hop distance to every other node. Throws on disconnected graphs.
inline std::vector<double> compute_avg_path_length(const Graph& g) {
  const std::size_t n = g.node_count();
  if (n < 2) throw MetricsError("average path length needs at least 2 nodes");
  auto sums = detail::shortest_path_sums(g, false, true);
  return detail::mean_distance(sums.distance_sum, n);
}

/// All five features; one shared BFS pass per source for b and L.
inline NodeFeatures compute_all(const Graph& g) {
  const std::size_t n = g.node_count();
  if (n < 3) throw MetricsError("feature extraction needs at least 3 nodes, got " + std::to_string(n));
  auto sums = detail::shortest_path_sums(g, true, true);
  NodeFeatures f;
  f.k = compute_degree(g);
  f.k_nn = compute_avg_neighbor_degree(g);
  f.b = detail::normalize_betweenness(sums.betweenness_raw, n);
  f.L = detail::mean_distance(sums.distance_sum, n);
  f.C = compute_clustering(g);
  return f;
}

inline constexpr const char* kFeaturesCsvHeader = "node,k,k_nn,b,L,C";

inline void write_features_csv(const NodeFeatures& f, std::ostream& out) {
  out << kFeaturesCsvHeader << '\n';
  for (std::size_t i = 0; i < f.size(); ++i) {
    out << i;
    for (std::size_t c = 0; c < kFeatureCount; ++c) out << ',' << format_double(f.column(c)[i]);
    out << '\n';
  }
}

inline std::string features_to_csv(const NodeFeatures& f) {
  std::ostringstream os;
  write_features_csv(f, os);
  return os.str();
}

/// Rows must be in node-id order 0..N-1.
inline NodeFeatures read_features_csv(std::istream& in) {
  auto rows = read_csv(in, kFeaturesCsvHeader);
  NodeFeatures f;
  for (std::size_t c = 0; c < kFeatureCount; ++c) f.column(c).reserve(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != kFeatureCount + 1)
      throw FormatError("features row " + std::to_string(r + 1) + ": expected 6 fields");
    if (parse_int(row[0]) != static_cast<long long>(r))
      throw FormatError("features row " + std::to_string(r + 1) + ": node ids must be 0..N-1 in order");
    for (std::size_t c = 0; c < kFeatureCount; ++c) f.column(c).push_back(parse_double(row[c + 1]));
  }
  return f;
}

}  // namespace netsom
