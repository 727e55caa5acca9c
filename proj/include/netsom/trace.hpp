#pragma once

// Time-stamped per-cell state counts produced by the simulations.

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "netsom/io.hpp"
#include "netsom/som.hpp"

namespace netsom {

struct Snapshot {
  double time = 0.0;
  std::vector<std::uint32_t> counts;  // [cell * state_count + state]
};

struct SimTrace {
  std::string time_column;          // "t" for SIR, "round" for SPD
  std::vector<std::string> states;  // e.g. {"S","I","R"}
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<Snapshot> snapshots;  // strictly increasing time
  bool terminal = false;            // last snapshot is the terminal state

  std::size_t cell_count() const { return width * height; }
  std::size_t state_count() const { return states.size(); }

  std::uint32_t count(std::size_t snap, std::size_t cell, std::size_t state) const {
    return snapshots[snap].counts[cell * states.size() + state];
  }
  std::uint64_t cell_population(std::size_t snap, std::size_t cell) const {
    std::uint64_t n = 0;
    for (std::size_t s = 0; s < states.size(); ++s) n += count(snap, cell, s);
    return n;
  }
  std::uint64_t state_total(std::size_t snap, std::size_t state) const {
    std::uint64_t n = 0;
    for (std::size_t c = 0; c < cell_count(); ++c) n += count(snap, c, state);
    return n;
  }

  /// Index of the snapshot whose time is nearest to t (earlier wins a tie).
  std::size_t nearest(double t) const {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < snapshots.size(); ++i) {
      const double d = std::abs(snapshots[i].time - t);
      if (d < best_d) {
        best_d = d;
        best = i;
      }
    }
    return best;
  }
};

/// Tallies per-agent states (values in [0, state_count)) into cell counts.
template <class StateVector>
Snapshot tally(const StateVector& agents, const CellAssignment& a, std::size_t state_count, double time) {
  Snapshot s;
  s.time = time;
  s.counts.assign(a.cell_count() * state_count, 0);
  for (std::size_t i = 0; i < agents.size(); ++i)
    ++s.counts[a.linear(i) * state_count + static_cast<std::size_t>(agents[i])];
  return s;
}

/// Rows `<time>,X,Y,<state counts...>` per snapshot per cell, cells in
/// row-major order.
inline std::string trace_to_csv(const SimTrace& tr) {
  std::ostringstream os;
  os << tr.time_column << ",X,Y";
  for (const auto& s : tr.states) os << ',' << s;
  os << '\n';
  for (std::size_t i = 0; i < tr.snapshots.size(); ++i) {
    const std::string t = format_double(tr.snapshots[i].time);
    for (std::size_t c = 0; c < tr.cell_count(); ++c) {
      os << t << ',' << c % tr.width << ',' << c / tr.width;
      for (std::size_t s = 0; s < tr.state_count(); ++s) os << ',' << tr.count(i, c, s);
      os << '\n';
    }
  }
  return os.str();
}

/// Parses either trace flavour from its header; grid size is inferred from
/// the largest coordinates. The terminal flag is not part of the CSV.
inline SimTrace trace_from_csv(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw FormatError("empty trace CSV");
  if (!header.empty() && header.back() == '\r') header.pop_back();
  auto cols = split_csv(header);
  if (cols.size() < 4 || cols[1] != "X" || cols[2] != "Y") throw FormatError("unrecognized trace header '" + header + "'");
  SimTrace tr;
  tr.time_column = std::string(cols[0]);
  for (std::size_t i = 3; i < cols.size(); ++i) tr.states.emplace_back(cols[i]);

  struct Row {
    double t;
    std::size_t x, y;
    std::vector<std::uint32_t> counts;
  };
  std::vector<Row> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    auto f = split_csv(line);
    if (f.size() != cols.size()) throw FormatError("trace row has wrong field count: '" + line + "'");
    Row r{parse_double(f[0]), static_cast<std::size_t>(parse_int(f[1])), static_cast<std::size_t>(parse_int(f[2])), {}};
    for (std::size_t i = 3; i < f.size(); ++i) r.counts.push_back(static_cast<std::uint32_t>(parse_int(f[i])));
    tr.width = std::max(tr.width, r.x + 1);
    tr.height = std::max(tr.height, r.y + 1);
    rows.push_back(std::move(r));
  }
  const std::size_t k = tr.state_count();
  for (const auto& r : rows) {
    if (tr.snapshots.empty() || tr.snapshots.back().time != r.t) {
      if (!tr.snapshots.empty() && r.t < tr.snapshots.back().time)
        throw FormatError("trace snapshot times must be increasing");
      tr.snapshots.push_back({r.t, std::vector<std::uint32_t>(tr.cell_count() * k, 0)});
    }
    auto& counts = tr.snapshots.back().counts;
    for (std::size_t s = 0; s < k; ++s) counts[(r.y * tr.width + r.x) * k + s] = r.counts[s];
  }
  return tr;
}

}  // namespace netsom
