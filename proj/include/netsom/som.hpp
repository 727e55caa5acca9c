#pragma once

// Self-organizing map over node feature vectors: normalization, online
// Kohonen training, BMU assignment and per-cell statistics.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "netsom/io.hpp"
#include "netsom/metrics.hpp"
#include "netsom/rng.hpp"

namespace netsom {

class SomError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Per-feature min-max parameters, taken after the optional log10(1+x).
struct NormParams {
  FeatureVector min{};
  FeatureVector max{};
  std::array<bool, kFeatureCount> log_scaled{};

  friend bool operator==(const NormParams&, const NormParams&) = default;
};

struct NormalizedFeatures {
  std::vector<FeatureVector> rows;
  NormParams params;
};

inline double normalize_value(double x, std::size_t f, const NormParams& p) {
  if (p.log_scaled[f]) x = std::log10(1.0 + x);
  const double span = p.max[f] - p.min[f];
  return span > 0.0 ? (x - p.min[f]) / span : 0.5;
}

/// Inverse of normalize_value; constant columns map back to their value.
inline double denormalize_value(double y, std::size_t f, const NormParams& p) {
  const double span = p.max[f] - p.min[f];
  double x = span > 0.0 ? p.min[f] + y * span : p.min[f];
  return p.log_scaled[f] ? std::pow(10.0, x) - 1.0 : x;
}

/// Min-max scales each column to [0,1]; constant columns become 0.5.
/// Columns flagged in `log_columns` pass through log10(1+x) first.
inline NormalizedFeatures normalize_features(const NodeFeatures& features,
                                             std::array<bool, kFeatureCount> log_columns = {}) {
  const std::size_t n = features.size();
  if (n < 2) throw SomError("normalization needs at least 2 rows, got " + std::to_string(n));
  NormalizedFeatures out;
  out.params.log_scaled = log_columns;
  for (std::size_t f = 0; f < kFeatureCount; ++f) {
    const auto& col = features.column(f);
    if (col.size() != n) throw SomError("feature columns differ in length");
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (double x : col) {
      if (!std::isfinite(x))
        throw SomError(std::string("non-finite value in feature column ") + kFeatureNames[f]);
      if (log_columns[f] && x <= -1.0)
        throw SomError(std::string("log scaling needs values > -1 in column ") + kFeatureNames[f]);
      double y = log_columns[f] ? std::log10(1.0 + x) : x;
      lo = std::min(lo, y);
      hi = std::max(hi, y);
    }
    out.params.min[f] = lo;
    out.params.max[f] = hi;
  }
  out.rows.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t f = 0; f < kFeatureCount; ++f)
      out.rows[i][f] = normalize_value(features.column(f)[i], f, out.params);
  return out;
}

struct SomSchedule {
  double alpha_start = 0.5;
  double alpha_end = 0.01;
  double sigma_start = -1.0;  // <= 0: max(width, height) / 2
  double sigma_end = 0.5;
  std::size_t epochs = 20;
};

struct SomGrid {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<FeatureVector> weights;  // row-major, index y * width + x
  NormParams norm;

  std::size_t cell_count() const { return width * height; }
  std::size_t index(std::size_t x, std::size_t y) const { return y * width + x; }

  friend bool operator==(const SomGrid&, const SomGrid&) = default;
};

inline double squared_distance(const FeatureVector& a, const FeatureVector& b) {
  double s = 0.0;
  for (std::size_t f = 0; f < kFeatureCount; ++f) {
    const double d = a[f] - b[f];
    s += d * d;
  }
  return s;
}

/// Best-matching unit; ties go to the smallest linear index.
inline std::size_t find_bmu(const std::vector<FeatureVector>& weights, const FeatureVector& x) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < weights.size(); ++c) {
    const double d = squared_distance(weights[c], x);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

/// Mean Euclidean distance from each sample to its BMU weight.
inline double quantization_error(const std::vector<FeatureVector>& weights,
                                 const std::vector<FeatureVector>& rows) {
  if (rows.empty()) return 0.0;
  double total = 0.0;
  for (const auto& x : rows) total += std::sqrt(squared_distance(weights[find_bmu(weights, x)], x));
  return total / static_cast<double>(rows.size());
}

struct SomTrainingReport {
  double initial_quantization_error = 0.0;
  double final_quantization_error = 0.0;
};

/// Online Kohonen training. Weights start uniform in [0,1]^5; each epoch
/// visits the samples in a freshly shuffled order; learning rate and
/// neighbourhood width decay exponentially over all epochs * N presentations.
inline SomGrid train_som(const NormalizedFeatures& data, std::size_t width, std::size_t height,
                         const SomSchedule& schedule, std::uint64_t seed,
                         SomTrainingReport* report = nullptr) {
  if (width == 0 || height == 0) throw SomError("SOM grid must have positive width and height");
  if (width * height < 2) throw SomError("SOM grid needs at least 2 cells");
  if (data.rows.empty()) throw SomError("SOM training set is empty");
  if (schedule.epochs < 1) throw SomError("SOM epochs must be >= 1");

  Rng rng = make_rng(seed);
  SomGrid grid;
  grid.width = width;
  grid.height = height;
  grid.norm = data.params;
  grid.weights.resize(width * height);
  for (auto& w : grid.weights)
    for (auto& c : w) c = uniform01(rng);

  if (report) report->initial_quantization_error = quantization_error(grid.weights, data.rows);

  const double a0 = schedule.alpha_start;
  const double a1 = schedule.alpha_end;
  const double s0 = schedule.sigma_start > 0.0 ? schedule.sigma_start
                                               : static_cast<double>(std::max(width, height)) / 2.0;
  const double s1 = schedule.sigma_end;
  const std::size_t n = data.rows.size();
  const double total = static_cast<double>(schedule.epochs * n);
  const double last = total > 1.0 ? total - 1.0 : 1.0;

  std::vector<std::size_t> order(n);
  std::vector<double> cx(width * height), cy(width * height);
  for (std::size_t c = 0; c < grid.weights.size(); ++c) {
    cx[c] = static_cast<double>(c % width);
    cy[c] = static_cast<double>(c / width);
  }

  std::size_t step = 0;
  for (std::size_t epoch = 0; epoch < schedule.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t i : order) {
      const double frac = static_cast<double>(step) / last;
      const double alpha = a0 * std::pow(a1 / a0, frac);
      const double sigma = s0 * std::pow(s1 / s0, frac);
      const double inv_two_sigma_sq = 1.0 / (2.0 * sigma * sigma);
      const auto& x = data.rows[i];
      const std::size_t bmu = find_bmu(grid.weights, x);
      for (std::size_t c = 0; c < grid.weights.size(); ++c) {
        const double dx = cx[c] - cx[bmu];
        const double dy = cy[c] - cy[bmu];
        const double h = std::exp(-(dx * dx + dy * dy) * inv_two_sigma_sq);
        const double rate = alpha * h;
        if (rate < 1e-300) continue;
        auto& w = grid.weights[c];
        for (std::size_t f = 0; f < kFeatureCount; ++f) w[f] += rate * (x[f] - w[f]);
      }
      ++step;
    }
  }

  if (report) report->final_quantization_error = quantization_error(grid.weights, data.rows);
  return grid;
}

struct Cell {
  std::size_t x = 0;
  std::size_t y = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
};

struct CellAssignment {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<Cell> cells;  // per node

  std::size_t cell_count() const { return width * height; }
  std::size_t linear(std::size_t node) const { return cells[node].y * width + cells[node].x; }

  friend bool operator==(const CellAssignment&, const CellAssignment&) = default;
};

inline CellAssignment assign_nodes(const SomGrid& grid, const std::vector<FeatureVector>& rows) {
  if (grid.weights.size() != grid.cell_count() || grid.cell_count() == 0)
    throw SomError("SOM grid weights do not match its dimensions");
  CellAssignment a;
  a.width = grid.width;
  a.height = grid.height;
  a.cells.resize(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::size_t c = find_bmu(grid.weights, rows[i]);
    a.cells[i] = {c % grid.width, c / grid.width};
  }
  return a;
}

/// Assigns raw (un-normalized) features using the grid's stored norm params.
inline CellAssignment assign_nodes(const SomGrid& grid, const NodeFeatures& raw) {
  std::vector<FeatureVector> rows(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i)
    for (std::size_t f = 0; f < kFeatureCount; ++f)
      rows[i][f] = normalize_value(raw.column(f)[i], f, grid.norm);
  return assign_nodes(grid, rows);
}

/// Assigns rows of arbitrary dimension; throws on mismatch with the grid.
inline CellAssignment assign_nodes(const SomGrid& grid, const std::vector<std::vector<double>>& rows) {
  std::vector<FeatureVector> fixed(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != kFeatureCount)
      throw SomError("feature dimension " + std::to_string(rows[i].size()) + " does not match grid dimension " +
                     std::to_string(kFeatureCount));
    std::copy(rows[i].begin(), rows[i].end(), fixed[i].begin());
  }
  return assign_nodes(grid, fixed);
}

/// Per-cell node count and raw-feature means. Empty cells carry NaN means.
struct CellStats {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::size_t> count;   // per linear cell index
  std::vector<FeatureVector> mean;  // NaN where count == 0

  bool empty(std::size_t c) const { return count[c] == 0; }
  std::size_t cell_count() const { return width * height; }
};

inline CellStats cell_stats(const CellAssignment& a, const NodeFeatures& raw) {
  if (a.cells.size() != raw.size())
    throw SomError("assignment covers " + std::to_string(a.cells.size()) + " nodes but features have " +
                   std::to_string(raw.size()));
  CellStats s;
  s.width = a.width;
  s.height = a.height;
  s.count.assign(a.cell_count(), 0);
  std::vector<FeatureVector> sum(a.cell_count(), FeatureVector{});
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const std::size_t c = a.linear(i);
    ++s.count[c];
    for (std::size_t f = 0; f < kFeatureCount; ++f) sum[c][f] += raw.column(f)[i];
  }
  s.mean.assign(a.cell_count(), FeatureVector{});
  for (std::size_t c = 0; c < a.cell_count(); ++c)
    for (std::size_t f = 0; f < kFeatureCount; ++f)
      s.mean[c][f] = s.count[c] ? sum[c][f] / static_cast<double>(s.count[c])
                                : std::numeric_limits<double>::quiet_NaN();
  return s;
}

// --- persistence -----------------------------------------------------------

inline constexpr const char* kAssignCsvHeader = "node,X,Y";
inline constexpr const char* kCellStatsCsvHeader = "X,Y,count,mean_k,mean_k_nn,mean_b,mean_L,mean_C";

inline std::string assignment_to_csv(const CellAssignment& a) {
  std::ostringstream os;
  os << kAssignCsvHeader << '\n';
  for (std::size_t i = 0; i < a.cells.size(); ++i) os << i << ',' << a.cells[i].x << ',' << a.cells[i].y << '\n';
  return os.str();
}

/// Grid dimensions are not stored in the CSV; callers supply them.
inline CellAssignment assignment_from_csv(std::istream& in, std::size_t width, std::size_t height) {
  auto rows = read_csv(in, kAssignCsvHeader);
  CellAssignment a;
  a.width = width;
  a.height = height;
  a.cells.resize(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != 3 || parse_int(row[0]) != static_cast<long long>(r))
      throw FormatError("assignment row " + std::to_string(r + 1) + " malformed or out of order");
    long long x = parse_int(row[1]), y = parse_int(row[2]);
    if (x < 0 || y < 0 || static_cast<std::size_t>(x) >= width || static_cast<std::size_t>(y) >= height)
      throw FormatError("assignment row " + std::to_string(r + 1) + " has cell outside the grid");
    a.cells[r] = {static_cast<std::size_t>(x), static_cast<std::size_t>(y)};
  }
  return a;
}

/// Dimensions inferred as 1 + max coordinate.
inline CellAssignment assignment_from_csv(std::istream& in) {
  std::stringstream buffer;
  buffer << in.rdbuf();
  auto rows = read_csv(buffer, kAssignCsvHeader);
  std::size_t w = 0, h = 0;
  for (const auto& row : rows)
    if (row.size() == 3) {
      w = std::max<std::size_t>(w, static_cast<std::size_t>(parse_int(row[1]) + 1));
      h = std::max<std::size_t>(h, static_cast<std::size_t>(parse_int(row[2]) + 1));
    }
  buffer.clear();
  buffer.seekg(0);
  return assignment_from_csv(buffer, w, h);
}

inline std::string cell_stats_to_csv(const CellStats& s) {
  std::ostringstream os;
  os << kCellStatsCsvHeader << '\n';
  for (std::size_t y = 0; y < s.height; ++y)
    for (std::size_t x = 0; x < s.width; ++x) {
      const std::size_t c = y * s.width + x;
      os << x << ',' << y << ',' << s.count[c];
      for (std::size_t f = 0; f < kFeatureCount; ++f) {
        os << ',';
        if (s.count[c]) os << format_double(s.mean[c][f]);
      }
      os << '\n';
    }
  return os.str();
}

inline CellStats cell_stats_from_csv(std::istream& in) {
  auto rows = read_csv(in, kCellStatsCsvHeader);
  if (rows.empty()) throw FormatError("cell stats CSV has no rows");
  std::size_t w = 0, h = 0;
  for (const auto& row : rows) {
    if (row.size() != 3 + kFeatureCount) throw FormatError("cell stats row has wrong field count");
    w = std::max<std::size_t>(w, static_cast<std::size_t>(parse_int(row[0]) + 1));
    h = std::max<std::size_t>(h, static_cast<std::size_t>(parse_int(row[1]) + 1));
  }
  if (rows.size() != w * h) throw FormatError("cell stats CSV must list every cell of the grid");
  CellStats s;
  s.width = w;
  s.height = h;
  s.count.assign(w * h, 0);
  s.mean.assign(w * h, FeatureVector{});
  for (const auto& row : rows) {
    const std::size_t c = static_cast<std::size_t>(parse_int(row[1])) * w + static_cast<std::size_t>(parse_int(row[0]));
    s.count[c] = static_cast<std::size_t>(parse_int(row[2]));
    for (std::size_t f = 0; f < kFeatureCount; ++f)
      s.mean[c][f] = s.count[c] ? parse_double(row[3 + f]) : std::numeric_limits<double>::quiet_NaN();
  }
  return s;
}

inline nlohmann::json som_to_json(const SomGrid& g) {
  nlohmann::json j;
  j["width"] = g.width;
  j["height"] = g.height;
  j["features"] = std::vector<std::string>(kFeatureNames.begin(), kFeatureNames.end());
  j["norm_min"] = g.norm.min;
  j["norm_max"] = g.norm.max;
  j["log_scaled"] = g.norm.log_scaled;
  auto weights = nlohmann::json::array();
  for (const auto& w : g.weights) weights.push_back(w);
  j["weights"] = std::move(weights);
  return j;
}

inline SomGrid som_from_json(const nlohmann::json& j) {
  try {
    SomGrid g;
    g.width = j.at("width").get<std::size_t>();
    g.height = j.at("height").get<std::size_t>();
    g.norm.min = j.at("norm_min").get<FeatureVector>();
    g.norm.max = j.at("norm_max").get<FeatureVector>();
    g.norm.log_scaled = j.at("log_scaled").get<std::array<bool, kFeatureCount>>();
    for (const auto& w : j.at("weights")) g.weights.push_back(w.get<FeatureVector>());
    if (g.weights.size() != g.cell_count()) throw SomError("weight count does not match grid size");
    for (std::size_t f = 0; f < kFeatureCount; ++f)
      if (g.norm.min[f] > g.norm.max[f]) throw SomError("norm params must satisfy min <= max");
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw SomError(std::string("malformed SOM JSON: ") + e.what());
  }
}

}  // namespace netsom
