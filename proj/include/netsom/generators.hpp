#pragma once

// Growth-model network generators: Holme-Kim (preferential attachment with
// triad formation) and connecting-nearest-neighbour (CNN).

#include <cstdint>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "netsom/graph.hpp"
#include "netsom/rng.hpp"

namespace netsom {

struct HkParams {
  std::size_t n = 10000;
  std::size_t m = 4;
  double triad_probability = 0.9;
};

struct CnnParams {
  std::size_t n = 10000;
  double conversion_probability = 0.75;
};

/// Growth bookkeeping, for checking edge-count identities.
struct GrowthStats {
  std::size_t skipped_edges = 0;       // HK: attachments abandoned after resampling
  std::size_t conversions = 0;         // CNN: potential links realized
  std::size_t discarded_potential = 0; // CNN: draws of already-linked pairs
};

namespace detail {

inline std::uint64_t edge_key(NodeId u, NodeId v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

/// Mutable adjacency used only while growing a network.
struct GrowingGraph {
  std::vector<std::vector<NodeId>> adj;
  std::vector<Edge> edges;
  std::unordered_set<std::uint64_t> keys;

  NodeId add_node() {
    adj.emplace_back();
    return static_cast<NodeId>(adj.size() - 1);
  }
  bool linked(NodeId u, NodeId v) const { return keys.count(edge_key(u, v)) != 0; }
  bool link(NodeId u, NodeId v) {
    if (u == v || !keys.insert(edge_key(u, v)).second) return false;
    adj[u].push_back(v);
    adj[v].push_back(u);
    edges.emplace_back(u, v);
    return true;
  }
  Graph freeze() const { return build_graph(adj.size(), edges); }
};

}  // namespace detail

/// Holme-Kim growth. Starts from an (m+1)-clique; each arrival places m
/// edges, the first by preferential attachment and each later one by triad
/// formation with probability p_t (a uniformly chosen, not yet linked
/// neighbour of the last preferential target), otherwise by preferential
/// attachment. Duplicate preferential draws are resampled up to 100 times.
inline Graph generate_hk(const HkParams& p, std::uint64_t seed, GrowthStats* stats = nullptr) {
  if (p.m < 1) throw std::invalid_argument("hk: m must be >= 1");
  if (p.n <= p.m) throw std::invalid_argument("hk: n must exceed m");
  if (!(p.triad_probability >= 0.0 && p.triad_probability <= 1.0))
    throw std::invalid_argument("hk: triad probability must lie in [0,1]");

  constexpr int kMaxResample = 100;
  Rng rng = make_rng(seed);
  detail::GrowingGraph g;
  g.adj.reserve(p.n);
  g.keys.reserve(p.n * p.m * 2);

  // Degree-weighted pool: node v appears deg(v) times.
  std::vector<NodeId> pool;
  pool.reserve(2 * p.n * p.m);

  for (std::size_t i = 0; i <= p.m; ++i) g.add_node();
  for (NodeId u = 0; u <= p.m; ++u)
    for (NodeId v = u + 1; v <= p.m; ++v) {
      g.link(u, v);
      pool.push_back(u);
      pool.push_back(v);
    }

  std::vector<NodeId> chosen;
  std::vector<NodeId> candidates;
  for (std::size_t step = p.m + 1; step < p.n; ++step) {
    const NodeId v = g.add_node();
    chosen.clear();
    NodeId last_pa = v;  // v means "no preferential target yet"

    auto preferential = [&]() -> bool {
      for (int attempt = 0; attempt < kMaxResample; ++attempt) {
        NodeId t = pool[uniform_index(rng, pool.size())];
        if (g.link(v, t)) {
          chosen.push_back(t);
          last_pa = t;
          return true;
        }
      }
      return false;
    };

    for (std::size_t e = 0; e < p.m; ++e) {
      bool placed = false;
      if (e > 0 && last_pa != v && bernoulli(rng, p.triad_probability)) {
        candidates.clear();
        for (NodeId w : g.adj[last_pa])
          if (w != v && !g.linked(v, w)) candidates.push_back(w);
        if (!candidates.empty()) {
          NodeId w = candidates[uniform_index(rng, candidates.size())];
          g.link(v, w);
          chosen.push_back(w);
          placed = true;
        }
      }
      if (!placed && !preferential() && stats) ++stats->skipped_edges;
    }
    for (NodeId t : chosen) {
      pool.push_back(t);
      pool.push_back(v);
    }
  }
  return g.freeze();
}

/// Connecting-nearest-neighbour growth. With probability 1-u a new node
/// links to a uniform existing node and records potential links to that
/// node's neighbours; with probability u one pending potential link is
/// realized. Stops once n nodes exist.
inline Graph generate_cnn(const CnnParams& p, std::uint64_t seed, GrowthStats* stats = nullptr) {
  if (p.n < 1) throw std::invalid_argument("cnn: n must be >= 1");
  const double u = p.conversion_probability;
  if (!(u > 0.0 && u < 1.0)) throw std::invalid_argument("cnn: u must lie in (0,1)");

  Rng rng = make_rng(seed);
  detail::GrowingGraph g;
  g.adj.reserve(p.n);
  g.add_node();
  std::vector<Edge> potential;

  while (g.adj.size() < p.n) {
    if (!bernoulli(rng, u)) {
      NodeId target = static_cast<NodeId>(uniform_index(rng, g.adj.size()));
      NodeId v = g.add_node();
      for (NodeId w : g.adj[target]) potential.emplace_back(v, w);
      g.link(v, target);
    } else if (!potential.empty()) {
      std::size_t idx = uniform_index(rng, potential.size());
      Edge e = potential[idx];
      potential[idx] = potential.back();
      potential.pop_back();
      bool realized = g.link(e.first, e.second);
      if (stats) ++(realized ? stats->conversions : stats->discarded_potential);
    }
  }
  return g.freeze();
}

}  // namespace netsom
