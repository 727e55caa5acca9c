#include <gtest/gtest.h>

#include "netsom/generators.hpp"
#include "netsom/sir.hpp"
#include "oracles.hpp"

using namespace netsom;

namespace {

CellAssignment single_cell(std::size_t n) { return {1, 1, std::vector<Cell>(n)}; }

CellAssignment striped(std::size_t n, std::size_t width) {
  CellAssignment a{width, 1, {}};
  for (std::size_t i = 0; i < n; ++i) a.cells.push_back({i % width, 0});
  return a;
}

std::array<std::size_t, 3> recount(const SirState& st) {
  std::array<std::size_t, 3> t{};
  for (Health h : st.agents) ++t[static_cast<std::size_t>(h)];
  return t;
}

}  // namespace

TEST(InitSir, TenInitialInfected) {
  Graph g = generate_hk({10000, 4, 0.9}, 1);
  SirState st = init_sir(g, 10, 5);
  EXPECT_EQ(recount(st), (std::array<std::size_t, 3>{9990, 10, 0}));
  EXPECT_EQ(st.totals, recount(st));
  EXPECT_EQ(st.sweeps, 0u);
}

TEST(InitSir, AllInfectedAndRangeChecks) {
  Graph g = oracle::path(20);
  EXPECT_EQ(init_sir(g, 20, 1).infectious(), 20u);
  EXPECT_THROW(init_sir(g, 0, 1), std::invalid_argument);
  EXPECT_THROW(init_sir(g, 21, 1), std::invalid_argument);
}

TEST(InitSir, SameSeedSameInfectedSet) {
  Graph g = oracle::path(500);
  EXPECT_EQ(init_sir(g, 10, 42).agents, init_sir(g, 10, 42).agents);
  EXPECT_NE(init_sir(g, 10, 42).agents, init_sir(g, 10, 43).agents);
}

TEST(SirPick, RemovedAgentNeverChanges) {
  Graph g = oracle::complete(3);
  SirState st{{Health::R, Health::I, Health::I}, 0, {0, 2, 1}};
  Rng rng = make_rng(1);
  for (int i = 0; i < 100; ++i) sir_pick(st, g, 0, {5.0, 5.0, 0.5, 1}, rng);
  EXPECT_EQ(st.agents[0], Health::R);
}

TEST(SirPick, InfectionProbabilityClampsToOne) {
  // Hub with 50 infectious leaves: lambda * n(I) * dt = 10 * 50 * 0.01 = 5.
  Graph g = oracle::star(50);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    SirState st;
    st.agents.assign(51, Health::I);
    st.agents[0] = Health::S;
    st.totals = {1, 50, 0};
    Rng rng = make_rng(seed);
    sir_pick(st, g, 0, {10.0, 1.0, 0.01, 1}, rng);
    ASSERT_EQ(st.agents[0], Health::I) << "seed " << seed;
  }
}

TEST(SirPick, ConservationAfterEveryPick) {
  Graph g = generate_hk({400, 3, 0.5}, 2);
  Rng rng = make_rng(3);
  SirState st = init_sir(g, 20, rng);
  const SirParams p{0.8, 1.0, 0.05, 20};
  for (int pick = 0; pick < 20000 && st.infectious() > 0; ++pick) {
    sir_pick(st, g, static_cast<NodeId>(uniform_index(rng, 400)), p, rng);
    auto t = recount(st);
    ASSERT_EQ(t, st.totals);
    ASSERT_EQ(t[0] + t[1] + t[2], 400u);
  }
}

TEST(RunSir, NoTransmissionWhenLambdaIsZero) {
  Graph g = generate_hk({2000, 4, 0.9}, 4);
  SirParams p;
  p.lambda = 0.0;
  SimTrace tr = run_sir(g, single_cell(2000), p, 8);
  const auto last = tr.snapshots.size() - 1;
  EXPECT_EQ(tr.state_total(last, 2), 10u);
  EXPECT_EQ(tr.state_total(last, 0), 1990u);
}

TEST(RunSir, TraceInvariants) {
  Graph g = generate_hk({1500, 4, 0.9}, 6);
  CellAssignment cells = striped(1500, 4);
  SnapshotPlan every_sweep{{}, 0.01};
  SimTrace tr = run_sir(g, cells, {}, 12, every_sweep);
  ASSERT_TRUE(tr.terminal);
  ASSERT_GE(tr.snapshots.size(), 2u);
  for (std::size_t i = 0; i < tr.snapshots.size(); ++i) {
    std::uint64_t total = 0;
    for (std::size_t c = 0; c < tr.cell_count(); ++c) total += tr.cell_population(i, c);
    EXPECT_EQ(total, 1500u);
    for (std::size_t c = 0; c < tr.cell_count(); ++c) EXPECT_EQ(tr.cell_population(i, c), 375u);
    if (i > 0) {
      EXPECT_GT(tr.snapshots[i].time, tr.snapshots[i - 1].time);
      EXPECT_LE(tr.state_total(i, 0), tr.state_total(i - 1, 0));
      EXPECT_GE(tr.state_total(i, 2), tr.state_total(i - 1, 2));
    }
  }
  const auto last = tr.snapshots.size() - 1;
  for (std::size_t c = 0; c < tr.cell_count(); ++c) EXPECT_EQ(tr.count(last, c, 1), 0u);
}

TEST(RunSir, Deterministic) {
  Graph g = generate_cnn({800, 0.75}, 1);
  auto a = trace_to_csv(run_sir(g, striped(800, 3), {}, 77));
  auto b = trace_to_csv(run_sir(g, striped(800, 3), {}, 77));
  EXPECT_EQ(a, b);
}

TEST(RunSir, RequestedTimesAndTerminalSnapshot) {
  Graph g = generate_hk({500, 4, 0.9}, 3);
  SnapshotPlan plan{{0.0, 0.25, 1.0, 1000.0}, 0.0};
  SimTrace tr = run_sir(g, single_cell(500), {}, 5, plan);
  EXPECT_EQ(tr.snapshots.front().time, 0.0);
  EXPECT_DOUBLE_EQ(tr.snapshots[1].time, 0.25);
  // 1000 lies past termination and is dropped; the terminal snapshot is last.
  EXPECT_LT(tr.snapshots.back().time, 1000.0);
  EXPECT_EQ(tr.state_total(tr.snapshots.size() - 1, 1), 0u);
  SnapshotPlan unsorted{{1.0, 0.5}, 0.0};
  EXPECT_THROW(run_sir(g, single_cell(500), {}, 5, unsorted), std::invalid_argument);
}

TEST(RunSir, SupercriticalOutbreakOnHk) {
  // lambda <k> / mu = 1.6; terminal size should far exceed the seed infection.
  double r = 0;
  for (std::uint64_t s = 0; s < 10; ++s) {
    Graph g = generate_hk({2000, 4, 0.9}, s);
    SimTrace tr = run_sir(g, single_cell(2000), {}, 100 + s);
    r += static_cast<double>(tr.state_total(tr.snapshots.size() - 1, 2)) / 2000.0;
  }
  EXPECT_GE(r / 10, 10 * 10.0 / 2000.0);
}

TEST(RunSir, TwoNodeInfectionProbability) {
  // Continuous-time limit: the S node is infected before the I node
  // recovers with probability lambda / (lambda + mu) = 1/6.
  Graph g = oracle::path(2);
  const SirParams p{0.2, 1.0, 0.01, 1};
  int infected = 0;
  const int runs = 20000;
  for (int run = 0; run < runs; ++run) {
    Rng rng = make_rng(static_cast<std::uint64_t>(run));
    SirState st{{Health::S, Health::I}, 0, {1, 1, 0}};
    while (st.infectious() > 0) step_sir(st, g, p, rng);
    infected += st.agents[0] == Health::R;
  }
  EXPECT_NEAR(static_cast<double>(infected) / runs, 1.0 / 6.0, 0.02);
}
