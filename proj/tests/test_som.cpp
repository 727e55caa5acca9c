#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "netsom/generators.hpp"
#include "netsom/metrics.hpp"
#include "netsom/som.hpp"

using namespace netsom;

namespace {

NodeFeatures constant_features(std::size_t n, FeatureVector v) {
  NodeFeatures f;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < kFeatureCount; ++c) f.column(c).push_back(v[c]);
  return f;
}

NodeFeatures two_clusters(std::size_t per_cluster) {
  NodeFeatures f;
  for (std::size_t i = 0; i < 2 * per_cluster; ++i)
    for (std::size_t c = 0; c < kFeatureCount; ++c) f.column(c).push_back(i < per_cluster ? 0.0 : 1.0);
  return f;
}

}  // namespace

TEST(Normalize, ConstantColumnMapsToHalf) {
  NodeFeatures f = constant_features(3, {2, 2, 2, 2, 2});
  auto n = normalize_features(f);
  for (const auto& row : n.rows)
    for (double x : row) EXPECT_EQ(x, 0.5);
}

TEST(Normalize, MinMaxScaling) {
  NodeFeatures f = constant_features(3, {0, 0, 0, 0, 0});
  f.k = {0, 5, 10};
  auto n = normalize_features(f);
  EXPECT_EQ(n.rows[0][0], 0.0);
  EXPECT_EQ(n.rows[1][0], 0.5);
  EXPECT_EQ(n.rows[2][0], 1.0);
  EXPECT_EQ(n.params.min[0], 0.0);
  EXPECT_EQ(n.params.max[0], 10.0);
}

TEST(Normalize, DenormalizeInvertsNonConstantColumns) {
  NodeFeatures f = compute_all(generate_hk({300, 3, 0.6}, 1));
  for (auto logs : {std::array<bool, 5>{}, std::array<bool, 5>{true, false, true, false, false}}) {
    auto n = normalize_features(f, logs);
    for (std::size_t i = 0; i < f.size(); ++i)
      for (std::size_t c = 0; c < kFeatureCount; ++c) {
        const double x = f.column(c)[i];
        EXPECT_NEAR(denormalize_value(n.rows[i][c], c, n.params), x, 1e-12 * std::max(1.0, std::abs(x)));
      }
  }
}

TEST(Normalize, Errors) {
  EXPECT_THROW(normalize_features(constant_features(1, {1, 1, 1, 1, 1})), SomError);
  NodeFeatures f = constant_features(3, {1, 1, 1, 1, 1});
  f.b[1] = std::nan("");
  EXPECT_THROW(normalize_features(f), SomError);
  f.b[1] = INFINITY;
  EXPECT_THROW(normalize_features(f), SomError);
}

TEST(TrainSom, IdenticalInputsShareOneCell) {
  auto data = normalize_features(constant_features(50, {3, 1, 0.2, 2, 0.5}));
  SomGrid grid = train_som(data, 5, 5, {}, 4);
  CellAssignment a = assign_nodes(grid, data.rows);
  std::set<std::size_t> used;
  for (std::size_t i = 0; i < a.cells.size(); ++i) used.insert(a.linear(i));
  EXPECT_EQ(used.size(), 1u);
}

TEST(TrainSom, SeparatesTwoClusters) {
  auto data = normalize_features(two_clusters(100));
  int separated = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    CellAssignment a = assign_nodes(train_som(data, 5, 5, {}, seed), data.rows);
    std::set<std::size_t> zeros, ones;
    for (std::size_t i = 0; i < 200; ++i) (i < 100 ? zeros : ones).insert(a.linear(i));
    bool disjoint = true;
    for (auto c : zeros) disjoint = disjoint && !ones.count(c);
    separated += disjoint;
  }
  EXPECT_GE(separated, 9);
}

TEST(TrainSom, QuantizationErrorDoesNotGrow) {
  NodeFeatures f = compute_all(generate_hk({800, 4, 0.9}, 7));
  auto data = normalize_features(f);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    SomTrainingReport report;
    train_som(data, 5, 5, {}, seed, &report);
    EXPECT_LE(report.final_quantization_error, report.initial_quantization_error);
  }
}

TEST(TrainSom, DeterministicPerSeed) {
  auto data = normalize_features(compute_all(generate_cnn({400, 0.75}, 1)));
  EXPECT_EQ(train_som(data, 4, 3, {}, 9), train_som(data, 4, 3, {}, 9));
  EXPECT_FALSE(train_som(data, 4, 3, {}, 9) == train_som(data, 4, 3, {}, 10));
}

TEST(TrainSom, RejectsDegenerateInput) {
  auto data = normalize_features(two_clusters(5));
  EXPECT_THROW(train_som(data, 0, 5, {}, 1), SomError);
  EXPECT_THROW(train_som(data, 1, 1, {}, 1), SomError);
  SomSchedule none;
  none.epochs = 0;
  EXPECT_THROW(train_som(data, 2, 2, none, 1), SomError);
  NormalizedFeatures empty;
  EXPECT_THROW(train_som(empty, 2, 2, {}, 1), SomError);
}

TEST(AssignNodes, ExactWeightMatch) {
  SomGrid g{3, 1, {{0, 0, 0, 0, 0}, {0.5, 0.5, 0.5, 0.5, 0.5}, {1, 1, 1, 1, 1}}, {}};
  CellAssignment a = assign_nodes(g, std::vector<FeatureVector>{{0.5, 0.5, 0.5, 0.5, 0.5}, {1, 1, 1, 1, 1}});
  EXPECT_EQ(a.cells[0], (Cell{1, 0}));
  EXPECT_EQ(a.cells[1], (Cell{2, 0}));
}

TEST(AssignNodes, TiesGoToLowestLinearIndex) {
  // Cells (1,0) and (0,1) share a weight; (0,0) and (1,1) are far away.
  SomGrid g{2, 2, {{9, 9, 9, 9, 9}, {0.2, 0.2, 0.2, 0.2, 0.2}, {0.2, 0.2, 0.2, 0.2, 0.2}, {9, 9, 9, 9, 9}}, {}};
  CellAssignment a = assign_nodes(g, std::vector<FeatureVector>{{0.2, 0.2, 0.2, 0.2, 0.2}});
  EXPECT_EQ(a.cells[0], (Cell{1, 0}));
  // Equidistant between two distinct weights: lower index wins too.
  SomGrid h{2, 1, {{0, 0, 0, 0, 0}, {1, 1, 1, 1, 1}}, {}};
  EXPECT_EQ(assign_nodes(h, std::vector<FeatureVector>{{0.5, 0.5, 0.5, 0.5, 0.5}}).cells[0], (Cell{0, 0}));
}

TEST(AssignNodes, DimensionMismatch) {
  SomGrid g{2, 1, {{0, 0, 0, 0, 0}, {1, 1, 1, 1, 1}}, {}};
  EXPECT_THROW(assign_nodes(g, std::vector<std::vector<double>>{{0.1, 0.2, 0.3}}), SomError);
}

TEST(AssignNodes, StableAcrossCalls) {
  auto data = normalize_features(compute_all(generate_hk({300, 2, 0.5}, 3)));
  SomGrid grid = train_som(data, 5, 5, {}, 2);
  EXPECT_EQ(assignment_to_csv(assign_nodes(grid, data.rows)), assignment_to_csv(assign_nodes(grid, data.rows)));
}

TEST(CellStatsTest, SingleCellHoldsGlobalMeans) {
  NodeFeatures f = compute_all(generate_hk({200, 2, 0.5}, 5));
  CellAssignment a{3, 3, std::vector<Cell>(f.size(), Cell{1, 2})};
  CellStats s = cell_stats(a, f);
  const std::size_t c = 2 * 3 + 1;
  EXPECT_EQ(s.count[c], f.size());
  for (std::size_t k = 0; k < kFeatureCount; ++k) {
    double sum = 0;
    for (double x : f.column(k)) sum += x;
    EXPECT_NEAR(s.mean[c][k], sum / static_cast<double>(f.size()), 1e-12);
  }
  for (std::size_t other = 0; other < 9; ++other)
    if (other != c) {
      EXPECT_TRUE(s.empty(other));
      EXPECT_TRUE(std::isnan(s.mean[other][0]));
    }
}

TEST(CellStatsTest, MeanOfTwoNodes) {
  NodeFeatures f = constant_features(2, {0, 0, 0, 0, 0});
  f.k = {2, 4};
  CellAssignment a{2, 1, {Cell{0, 0}, Cell{0, 0}}};
  CellStats s = cell_stats(a, f);
  EXPECT_EQ(s.mean[0][0], 3.0);
  EXPECT_EQ(s.count[0] + s.count[1], 2u);
}

TEST(CellStatsTest, MatchesRecomputationFromCsv) {
  NodeFeatures f = compute_all(generate_cnn({500, 0.75}, 8));
  auto data = normalize_features(f);
  CellAssignment a = assign_nodes(train_som(data, 5, 5, {}, 1), data.rows);
  CellStats s = cell_stats(a, f);

  // Reload both CSVs and average by brute force.
  std::istringstream fin(features_to_csv(f)), ain(assignment_to_csv(a));
  NodeFeatures raw = read_features_csv(fin);
  CellAssignment back = assignment_from_csv(ain, 5, 5);
  std::size_t total = 0;
  for (std::size_t c = 0; c < 25; ++c) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < raw.size(); ++i)
      if (back.linear(i) == c) members.push_back(i);
    EXPECT_EQ(members.size(), s.count[c]);
    total += members.size();
    for (std::size_t k = 0; k < kFeatureCount && !members.empty(); ++k) {
      double sum = 0;
      for (auto i : members) sum += raw.column(k)[i];
      EXPECT_NEAR(s.mean[c][k], sum / static_cast<double>(members.size()), 1e-9);
    }
  }
  EXPECT_EQ(total, f.size());
}

TEST(Persistence, CellStatsCsvFlagsEmptyCells) {
  NodeFeatures f = constant_features(2, {1, 2, 0, 1, 0});
  CellAssignment a{2, 1, {Cell{0, 0}, Cell{0, 0}}};
  std::string csv = cell_stats_to_csv(cell_stats(a, f));
  EXPECT_EQ(csv, "X,Y,count,mean_k,mean_k_nn,mean_b,mean_L,mean_C\n0,0,2,1,2,0,1,0\n1,0,0,,,,,\n");
  std::istringstream in(csv);
  CellStats back = cell_stats_from_csv(in);
  EXPECT_EQ(back.width, 2u);
  EXPECT_TRUE(back.empty(1));
  EXPECT_EQ(back.mean[0][1], 2.0);
}

TEST(Persistence, GridJsonRoundTrip) {
  auto data = normalize_features(compute_all(generate_hk({200, 2, 0.5}, 1)), {true, false, false, false, false});
  SomGrid g = train_som(data, 3, 4, {}, 6);
  EXPECT_EQ(som_from_json(nlohmann::json::parse(som_to_json(g).dump())), g);
  auto j = som_to_json(g);
  j["weights"].erase(0);
  EXPECT_THROW(som_from_json(j), SomError);
}

TEST(Persistence, AssignmentCsvRejectsOutOfGridCells) {
  std::istringstream in("node,X,Y\n0,5,0\n");
  EXPECT_THROW(assignment_from_csv(in, 5, 5), FormatError);
}
