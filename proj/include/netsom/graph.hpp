#pragma once

// Undirected simple graph with sorted adjacency lists and edge-list file I/O.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace netsom {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Immutable undirected simple graph stored in CSR form.
///
/// Neighbour lists are sorted ascending; ids are 0-based and contiguous.
class Graph {
 public:
  Graph() = default;

  std::size_t node_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const { return targets_.size() / 2; }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }

  bool has_edge(NodeId u, NodeId v) const {
    auto adj = neighbors(u);
    return std::binary_search(adj.begin(), adj.end(), v);
  }

  /// Edges with u < v, in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (NodeId u = 0; u < node_count(); ++u)
      for (NodeId v : neighbors(u))
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  friend bool operator==(const Graph&, const Graph&) = default;

  friend Graph build_graph(std::size_t node_count, std::span<const Edge> edges);

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> targets_;
};

/// Builds a graph from unordered pairs. Duplicates collapse; self-loops and
/// out-of-range ids throw GraphError.
inline Graph build_graph(std::size_t node_count, std::span<const Edge> edges) {
  std::vector<Edge> directed;
  directed.reserve(edges.size() * 2);
  for (auto [u, v] : edges) {
    if (u >= node_count || v >= node_count)
      throw GraphError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                       ") has id out of range for " + std::to_string(node_count) + " nodes");
    if (u == v) throw GraphError("self-loop at node " + std::to_string(u));
    directed.emplace_back(u, v);
    directed.emplace_back(v, u);
  }
  std::sort(directed.begin(), directed.end());
  directed.erase(std::unique(directed.begin(), directed.end()), directed.end());

  Graph g;
  g.offsets_.assign(node_count + 1, 0);
  for (auto [u, v] : directed) ++g.offsets_[u + 1];
  for (std::size_t i = 0; i < node_count; ++i) g.offsets_[i + 1] += g.offsets_[i];
  g.targets_.reserve(directed.size());
  for (auto [u, v] : directed) g.targets_.push_back(v);
  return g;
}

inline Graph build_graph(std::size_t node_count, std::initializer_list<Edge> edges) {
  return build_graph(node_count, std::span<const Edge>(edges.begin(), edges.size()));
}

inline bool is_connected(const Graph& g) {
  const std::size_t n = g.node_count();
  if (n <= 1) return true;
  std::vector<char> seen(n, 0);
  std::vector<NodeId> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    for (NodeId w : g.neighbors(v))
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
  }
  return reached == n;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

inline long long parse_integer(std::string_view tok, std::size_t line_no) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw GraphError("line " + std::to_string(line_no) + ": non-integer token '" +
                     std::string(tok) + "'");
  return value;
}

}  // namespace detail

/// Parses the edge-list text format: "u v" per line, '#' comments, optional
/// "# nodes: N" header. Accepts CRLF.
inline Graph parse_edge_list(std::istream& in) {
  std::vector<Edge> edges;
  long long declared = -1;
  long long max_id = -1;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto body = detail::trim(line);
    if (body.empty()) continue;
    if (body.front() == '#') {
      auto rest = detail::trim(body.substr(1));
      constexpr std::string_view key = "nodes:";
      if (rest.substr(0, key.size()) == key) {
        declared = detail::parse_integer(detail::trim(rest.substr(key.size())), line_no);
        if (declared < 0) throw GraphError("line " + std::to_string(line_no) + ": negative node count");
      }
      continue;
    }
    std::vector<std::string_view> tokens;
    std::size_t pos = 0;
    while (pos < body.size()) {
      auto b = body.find_first_not_of(" \t", pos);
      if (b == std::string_view::npos) break;
      auto e = body.find_first_of(" \t", b);
      if (e == std::string_view::npos) e = body.size();
      tokens.push_back(body.substr(b, e - b));
      pos = e;
    }
    if (tokens.size() != 2)
      throw GraphError("line " + std::to_string(line_no) + ": expected two ids, got " +
                       std::to_string(tokens.size()) + " tokens");
    long long u = detail::parse_integer(tokens[0], line_no);
    long long v = detail::parse_integer(tokens[1], line_no);
    if (u < 0 || v < 0) throw GraphError("line " + std::to_string(line_no) + ": negative id");
    if (u > 0xFFFFFFFELL || v > 0xFFFFFFFELL)
      throw GraphError("line " + std::to_string(line_no) + ": id too large");
    max_id = std::max({max_id, u, v});
    edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
  }
  if (declared < 0 && max_id < 0) throw GraphError("empty edge list without '# nodes:' header");
  std::size_t n = declared >= 0 ? static_cast<std::size_t>(declared)
                                : static_cast<std::size_t>(max_id + 1);
  return build_graph(n, edges);
}

inline Graph load_edge_list(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw GraphError("cannot open edge list '" + path + "'");
  return parse_edge_list(in);
}

/// Writes the header and one "u v" line per edge (u < v), LF endings.
inline void write_edge_list(const Graph& g, std::ostream& out) {
  out << "# nodes: " << g.node_count() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

inline std::string to_edge_list(const Graph& g) {
  std::ostringstream os;
  write_edge_list(g, os);
  return os.str();
}

inline void save_edge_list(const Graph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw GraphError("cannot write edge list '" + path + "'");
  write_edge_list(g, out);
}

}  // namespace netsom
