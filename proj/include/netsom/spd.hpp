#pragma once

// Spatial prisoner's dilemma with synchronous imitate-the-wealthiest
// updating. Payoffs accumulate over all neighbours:
//            C     D
//      C   1,1   0,T
//      D   T,0   e,e

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "netsom/graph.hpp"
#include "netsom/rng.hpp"
#include "netsom/trace.hpp"

namespace netsom {

enum class Strategy : std::uint8_t { C = 0, D = 1 };

enum class TieRule { SmallestId, Random };

struct SpdParams {
  double temptation = 1.5;
  double eps = 0.0;
  std::size_t max_rounds = 100;
  TieRule tie = TieRule::SmallestId;
  bool all_cooperate = false;  // test hook: start from all C
};

struct SpdState {
  std::vector<Strategy> strategies;
  std::size_t round = 0;
  std::vector<double> payoffs;  // from the last played round
};

inline SpdState init_spd(const Graph& g, std::uint64_t seed, bool all_cooperate = false) {
  SpdState st;
  st.strategies.assign(g.node_count(), Strategy::C);
  if (!all_cooperate) {
    Rng rng = make_rng(seed);
    for (auto& s : st.strategies) s = bernoulli(rng, 0.5) ? Strategy::D : Strategy::C;
  }
  return st;
}

inline double spd_payoff(Strategy self, Strategy other, double temptation, double eps) {
  if (self == Strategy::C) return other == Strategy::C ? 1.0 : 0.0;
  return other == Strategy::C ? temptation : eps;
}

inline void check_dilemma(double temptation, double eps) {
  if (!(temptation > 1.0 && 1.0 > eps && eps >= 0.0))
    throw std::invalid_argument("prisoner's dilemma needs T > 1 > eps >= 0");
}

inline std::vector<double> play_round(const Graph& g, std::span<const Strategy> strategies, double temptation,
                                      double eps) {
  check_dilemma(temptation, eps);
  std::vector<double> payoff(g.node_count(), 0.0);
  for (NodeId v = 0; v < g.node_count(); ++v)
    for (NodeId w : g.neighbors(v)) payoff[v] += spd_payoff(strategies[v], strategies[w], temptation, eps);
  return payoff;
}

/// New strategy of v given last-round payoffs: keep own strategy unless some
/// neighbour earned strictly more, then copy the wealthiest such neighbour.
/// Ties among the wealthiest go to the smallest id, or a uniform draw when
/// `tie_rng` is given.
inline Strategy imitate(const Graph& g, NodeId v, std::span<const Strategy> strategies,
                        std::span<const double> payoffs, Rng* tie_rng = nullptr) {
  double best = payoffs[v];
  NodeId chosen = v;
  std::size_t ties = 0;
  for (NodeId w : g.neighbors(v)) {  // ascending ids
    if (payoffs[w] > best) {
      best = payoffs[w];
      chosen = w;
      ties = 1;
    } else if (chosen != v && payoffs[w] == best) {
      ++ties;
      if (tie_rng && uniform_index(*tie_rng, ties) == 0) chosen = w;
    }
  }
  return strategies[chosen];
}

/// Synchronous update: every agent reads only the previous round.
inline std::vector<Strategy> update_strategies(const Graph& g, std::span<const Strategy> strategies,
                                               std::span<const double> payoffs, Rng* tie_rng = nullptr) {
  std::vector<Strategy> next(strategies.begin(), strategies.end());
  for (NodeId v = 0; v < g.node_count(); ++v) next[v] = imitate(g, v, strategies, payoffs, tie_rng);
  return next;
}

/// Same update, visiting agents in `order`; the result does not depend on it.
inline std::vector<Strategy> update_strategies(const Graph& g, std::span<const Strategy> strategies,
                                               std::span<const double> payoffs, std::span<const NodeId> order) {
  std::vector<Strategy> next(strategies.begin(), strategies.end());
  for (NodeId v : order) next[v] = imitate(g, v, strategies, payoffs);
  return next;
}

/// Plays rounds until a round changes no strategy or max_rounds is reached.
/// Snapshot r holds the strategies after r rounds.
inline SimTrace run_spd(const Graph& g, const CellAssignment& cells, const SpdParams& p, std::uint64_t seed,
                        SpdState* final_state = nullptr) {
  if (cells.cells.size() != g.node_count())
    throw std::invalid_argument("cell assignment size does not match graph");
  if (p.max_rounds < 1) throw std::invalid_argument("max_rounds must be >= 1");
  check_dilemma(p.temptation, p.eps);

  SpdState st = init_spd(g, seed, p.all_cooperate);
  Rng tie_rng = make_rng(derive_seed(seed, 1));
  Rng* tie = p.tie == TieRule::Random ? &tie_rng : nullptr;

  SimTrace tr;
  tr.time_column = "round";
  tr.states = {"C", "D"};
  tr.width = cells.width;
  tr.height = cells.height;
  tr.snapshots.push_back(tally(st.strategies, cells, 2, 0.0));

  bool fixed = false;
  while (!fixed && st.round < p.max_rounds) {
    st.payoffs = play_round(g, st.strategies, p.temptation, p.eps);
    auto next = update_strategies(g, st.strategies, st.payoffs, tie);
    fixed = next == st.strategies;
    st.strategies = std::move(next);
    ++st.round;
    tr.snapshots.push_back(tally(st.strategies, cells, 2, static_cast<double>(st.round)));
  }
  tr.terminal = fixed;
  if (final_state) *final_state = std::move(st);
  return tr;
}

}  // namespace netsom
