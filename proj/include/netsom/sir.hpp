#pragma once

// Asynchronous discrete-time SIR epidemic. Each sweep makes N uniform picks
// with replacement; a picked S agent is infected with probability
// min(1, lambda * n(I) * dt) where n(I) counts its currently infectious
// neighbours, a picked I agent recovers with probability min(1, mu * dt).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "netsom/graph.hpp"
#include "netsom/rng.hpp"
#include "netsom/trace.hpp"

namespace netsom {

enum class Health : std::uint8_t { S = 0, I = 1, R = 2 };

struct SirParams {
  double lambda = 0.2;
  double mu = 1.0;
  double dt = 0.01;
  std::size_t initial_infected = 10;
};

struct SirState {
  std::vector<Health> agents;
  std::size_t sweeps = 0;
  std::array<std::size_t, 3> totals{};  // S, I, R

  double time(double dt) const { return static_cast<double>(sweeps) * dt; }
  std::size_t susceptible() const { return totals[0]; }
  std::size_t infectious() const { return totals[1]; }
  std::size_t removed() const { return totals[2]; }
};

/// All agents S except `n_initial` distinct agents drawn uniformly.
inline SirState init_sir(const Graph& g, std::size_t n_initial, Rng& rng) {
  const std::size_t n = g.node_count();
  if (n_initial < 1 || n_initial > n)
    throw std::invalid_argument("initial infected count must lie in [1, " + std::to_string(n) + "]");
  SirState st;
  st.agents.assign(n, Health::S);
  // Partial Fisher-Yates: first n_initial entries form a uniform sample.
  std::vector<NodeId> ids(n);
  for (NodeId i = 0; i < n; ++i) ids[i] = i;
  for (std::size_t i = 0; i < n_initial; ++i) {
    std::size_t j = i + uniform_index(rng, n - i);
    std::swap(ids[i], ids[j]);
    st.agents[ids[i]] = Health::I;
  }
  st.totals = {n - n_initial, n_initial, 0};
  return st;
}

inline SirState init_sir(const Graph& g, std::size_t n_initial, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  return init_sir(g, n_initial, rng);
}

inline std::size_t infectious_neighbors(const SirState& st, const Graph& g, NodeId v) {
  std::size_t n = 0;
  for (NodeId w : g.neighbors(v)) n += st.agents[w] == Health::I;
  return n;
}

/// Applies rules (b1)-(b3) to one chosen agent.
inline void sir_pick(SirState& st, const Graph& g, NodeId v, const SirParams& p, Rng& rng) {
  switch (st.agents[v]) {
    case Health::S: {
      const std::size_t infected = infectious_neighbors(st, g, v);
      if (infected == 0) return;
      const double prob = std::min(1.0, p.lambda * static_cast<double>(infected) * p.dt);
      if (bernoulli(rng, prob)) {
        st.agents[v] = Health::I;
        --st.totals[0];
        ++st.totals[1];
      }
      return;
    }
    case Health::I:
      if (bernoulli(rng, std::min(1.0, p.mu * p.dt))) {
        st.agents[v] = Health::R;
        --st.totals[1];
        ++st.totals[2];
      }
      return;
    case Health::R:
      return;
  }
}

/// One sweep: N picks with replacement, then time advances by dt.
inline void step_sir(SirState& st, const Graph& g, const SirParams& p, Rng& rng) {
  if (p.lambda < 0.0 || p.mu < 0.0 || !(p.dt > 0.0))
    throw std::invalid_argument("SIR needs lambda >= 0, mu >= 0, dt > 0");
  const std::size_t n = st.agents.size();
  for (std::size_t pick = 0; pick < n; ++pick)
    sir_pick(st, g, static_cast<NodeId>(uniform_index(rng, n)), p, rng);
  ++st.sweeps;
}

/// Snapshot request: explicit times plus, when interval > 0, every multiple
/// of interval. Times are rounded to the nearest whole sweep.
struct SnapshotPlan {
  std::vector<double> times;
  double interval = 0.5;
};

/// Runs until no agent is infectious, recording per-cell S/I/R counts at
/// the planned times (those not past termination) and at the terminal time.
inline SimTrace run_sir(const Graph& g, const CellAssignment& cells, const SirParams& p, std::uint64_t seed,
                        const SnapshotPlan& plan = {}, SirState* final_state = nullptr) {
  if (cells.cells.size() != g.node_count())
    throw std::invalid_argument("cell assignment size does not match graph");
  if (!(p.mu * p.dt > 0.0)) throw std::invalid_argument("SIR run needs mu * dt > 0 to terminate");
  if (!std::is_sorted(plan.times.begin(), plan.times.end()))
    throw std::invalid_argument("snapshot times must be sorted");

  std::vector<std::size_t> wanted;
  for (double t : plan.times) {
    if (t < 0.0) throw std::invalid_argument("snapshot times must be non-negative");
    wanted.push_back(static_cast<std::size_t>(std::llround(t / p.dt)));
  }
  std::size_t interval_sweeps = 0;
  if (plan.interval > 0.0)
    interval_sweeps = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(plan.interval / p.dt)));
  auto requested = [&](std::size_t sweep) {
    if (interval_sweeps && sweep % interval_sweeps == 0) return true;
    return std::binary_search(wanted.begin(), wanted.end(), sweep);
  };

  Rng rng = make_rng(seed);
  SirState st = init_sir(g, p.initial_infected, rng);

  SimTrace tr;
  tr.time_column = "t";
  tr.states = {"S", "I", "R"};
  tr.width = cells.width;
  tr.height = cells.height;
  if (requested(0)) tr.snapshots.push_back(tally(st.agents, cells, 3, 0.0));

  while (st.infectious() > 0) {
    step_sir(st, g, p, rng);
    if (st.infectious() > 0 && requested(st.sweeps)) tr.snapshots.push_back(tally(st.agents, cells, 3, st.time(p.dt)));
  }
  tr.snapshots.push_back(tally(st.agents, cells, 3, st.time(p.dt)));
  tr.terminal = true;
  if (final_state) *final_state = std::move(st);
  return tr;
}

}  // namespace netsom
