#pragma once

// Stage orchestration: generate -> metrics -> categorize -> simulate ->
// render, each stage persisting a plain-text artifact plus
// <artifact>.meta.json (content hash, input hashes, parameters, seed).

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "netsom/generators.hpp"
#include "netsom/graph.hpp"
#include "netsom/io.hpp"
#include "netsom/metrics.hpp"
#include "netsom/parallel.hpp"
#include "netsom/rng.hpp"
#include "netsom/sir.hpp"
#include "netsom/som.hpp"
#include "netsom/spd.hpp"
#include "netsom/stats.hpp"
#include "netsom/svg.hpp"
#include "netsom/trace.hpp"

namespace netsom {

inline constexpr const char* kToolVersion = "netsom 1.0.0";

/// Invalid configuration or arguments (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A stage failed while running (exit code 3).
class StageError : public std::runtime_error {
 public:
  StageError(const std::string& stage, const std::string& what) : std::runtime_error(stage + ": " + what) {}
};

using json = nlohmann::json;

// --- artifacts & metadata -----------------------------------------------------

inline std::string meta_path(const std::string& artifact) { return artifact + ".meta.json"; }

inline json make_meta(const std::string& stage, const std::string& content, json inputs, json parameters,
                      std::optional<std::uint64_t> seed, json lineage = json::object()) {
  json m;
  m["stage"] = stage;
  m["hash"] = content_hash(content);
  m["inputs"] = std::move(inputs);
  m["lineage"] = std::move(lineage);
  m["parameters"] = std::move(parameters);
  m["seed"] = seed ? json(*seed) : json(nullptr);
  m["tool_version"] = kToolVersion;
  return m;
}

inline void write_artifact(const std::string& path, const std::string& content, const json& meta) {
  write_file(path, content);
  write_file(meta_path(path), meta.dump(2) + "\n");
}

struct CheckedInput {
  std::string content;
  std::string hash;
  std::optional<json> meta;
};

/// Reads an input artifact; if a sidecar meta file exists its recorded hash
/// must match the file content.
inline CheckedInput read_checked(const std::string& path, const std::string& stage) {
  if (!std::filesystem::exists(path)) throw StageError(stage, "missing input '" + path + "'");
  CheckedInput in;
  in.content = read_file(path);
  in.hash = content_hash(in.content);
  if (std::filesystem::exists(meta_path(path))) {
    json m;
    try {
      m = json::parse(read_file(meta_path(path)));
    } catch (const json::exception& e) {
      throw StageError(stage, "unreadable metadata for '" + path + "': " + e.what());
    }
    if (m.value("hash", "") != in.hash)
      throw StageError(stage, "stale input '" + path + "': content hash " + in.hash + " does not match metadata " +
                                  m.value("hash", std::string("<none>")));
    in.meta = std::move(m);
  }
  return in;
}

inline std::string lineage_graph(const CheckedInput& in) {
  if (in.meta && in.meta->contains("lineage") && (*in.meta)["lineage"].contains("graph"))
    return (*in.meta)["lineage"]["graph"].get<std::string>();
  return {};
}

// --- configuration ------------------------------------------------------------

struct GenerateConfig {
  std::string model = "hk";
  HkParams hk;
  CnnParams cnn;
  std::optional<std::uint64_t> seed;

  std::size_t n() const { return model == "hk" ? hk.n : cnn.n; }
};

struct SomConfig {
  std::size_t width = 5;
  std::size_t height = 5;
  SomSchedule schedule;
  std::array<bool, kFeatureCount> log_features{};
  std::optional<std::uint64_t> seed;
};

struct SirConfig {
  SirParams params;
  SnapshotPlan plan;
  std::optional<std::uint64_t> seed;
};

struct SpdConfig {
  SpdParams params;
  std::optional<std::uint64_t> seed;
};

struct RenderConfig {
  std::vector<double> sir_times;  // empty: six evenly spaced times incl. terminal
  std::vector<double> spd_times;
  bool scale_pies = false;
};

struct RunConfig {
  std::uint64_t seed = 1;
  GenerateConfig generate;
  SomConfig som;
  std::optional<SirConfig> sir;
  std::optional<SpdConfig> spd;
  RenderConfig render;
};

/// Parses "WxH" (e.g. "5x5").
inline std::pair<std::size_t, std::size_t> parse_grid(const std::string& s) {
  auto x = s.find_first_of("xX");
  try {
    if (x == std::string::npos) throw std::invalid_argument(s);
    std::size_t pos = 0;
    long w = std::stol(s.substr(0, x), &pos);
    if (pos != x) throw std::invalid_argument(s);
    std::string rest = s.substr(x + 1);
    long h = std::stol(rest, &pos);
    if (pos != rest.size() || w < 1 || h < 1 || w * h < 2) throw std::invalid_argument(s);
    return {static_cast<std::size_t>(w), static_cast<std::size_t>(h)};
  } catch (const std::exception&) {
    throw ConfigError("grid must look like WxH with W*H >= 2, got '" + s + "'");
  }
}

/// Columns named in a comma list ("k,b") among k, k_nn, b, L, C.
inline std::array<bool, kFeatureCount> parse_feature_list(const std::vector<std::string>& names) {
  std::array<bool, kFeatureCount> out{};
  for (const auto& n : names) {
    auto it = std::find(kFeatureNames.begin(), kFeatureNames.end(), n);
    if (it == kFeatureNames.end()) throw ConfigError("unknown feature '" + n + "' (expected k, k_nn, b, L, C)");
    out[static_cast<std::size_t>(it - kFeatureNames.begin())] = true;
  }
  return out;
}

inline TieRule parse_tie(const std::string& s) {
  if (s == "smallest") return TieRule::SmallestId;
  if (s == "random") return TieRule::Random;
  throw ConfigError("tie rule must be 'smallest' or 'random', got '" + s + "'");
}

namespace detail {

inline void check_keys(const json& section, const std::string& name, std::initializer_list<const char*> allowed) {
  if (!section.is_object()) throw ConfigError("config section '" + name + "' must be an object");
  for (auto it = section.begin(); it != section.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    if (!ok) throw ConfigError("unknown key '" + it.key() + "' in config section '" + name + "'");
  }
}

template <class T>
void read_opt(const json& j, const char* key, T& out, const std::string& section) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config '" + section + "." + key + "' has the wrong type");
  }
}

inline void read_seed(const json& j, std::optional<std::uint64_t>& out, const std::string& section) {
  if (!j.contains("seed")) return;
  std::uint64_t s = 0;
  read_opt(j, "seed", s, section);
  out = s;
}

}  // namespace detail

inline RunConfig parse_config(const json& j) {
  using detail::read_opt;
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  detail::check_keys(j, "<root>", {"seed", "generate", "som", "sir", "spd", "render"});
  RunConfig c;
  read_opt(j, "seed", c.seed, "<root>");

  if (j.contains("generate")) {
    const auto& g = j["generate"];
    detail::check_keys(g, "generate", {"model", "n", "m", "pt", "u", "seed"});
    read_opt(g, "model", c.generate.model, "generate");
    if (c.generate.model != "hk" && c.generate.model != "cnn")
      throw ConfigError("generate.model must be 'hk' or 'cnn'");
    std::size_t n = 10000;
    read_opt(g, "n", n, "generate");
    c.generate.hk.n = c.generate.cnn.n = n;
    read_opt(g, "m", c.generate.hk.m, "generate");
    read_opt(g, "pt", c.generate.hk.triad_probability, "generate");
    read_opt(g, "u", c.generate.cnn.conversion_probability, "generate");
    detail::read_seed(g, c.generate.seed, "generate");
  }
  if (j.contains("som")) {
    const auto& s = j["som"];
    detail::check_keys(s, "som", {"grid", "width", "height", "epochs", "alpha0", "alpha1", "sigma0", "sigma1",
                                  "log_features", "seed"});
    if (s.contains("grid")) {
      std::string grid;
      read_opt(s, "grid", grid, "som");
      std::tie(c.som.width, c.som.height) = parse_grid(grid);
    }
    read_opt(s, "width", c.som.width, "som");
    read_opt(s, "height", c.som.height, "som");
    if (c.som.width * c.som.height < 2) throw ConfigError("som grid needs at least 2 cells");
    read_opt(s, "epochs", c.som.schedule.epochs, "som");
    if (c.som.schedule.epochs < 1) throw ConfigError("som.epochs must be >= 1");
    read_opt(s, "alpha0", c.som.schedule.alpha_start, "som");
    read_opt(s, "alpha1", c.som.schedule.alpha_end, "som");
    read_opt(s, "sigma0", c.som.schedule.sigma_start, "som");
    read_opt(s, "sigma1", c.som.schedule.sigma_end, "som");
    std::vector<std::string> logs;
    read_opt(s, "log_features", logs, "som");
    c.som.log_features = parse_feature_list(logs);
    detail::read_seed(s, c.som.seed, "som");
  }
  if (j.contains("sir")) {
    const auto& s = j["sir"];
    detail::check_keys(s, "sir", {"lambda", "mu", "dt", "initial", "snapshot_interval", "times", "seed"});
    SirConfig sc;
    read_opt(s, "lambda", sc.params.lambda, "sir");
    read_opt(s, "mu", sc.params.mu, "sir");
    read_opt(s, "dt", sc.params.dt, "sir");
    read_opt(s, "initial", sc.params.initial_infected, "sir");
    read_opt(s, "snapshot_interval", sc.plan.interval, "sir");
    read_opt(s, "times", sc.plan.times, "sir");
    detail::read_seed(s, sc.seed, "sir");
    if (sc.params.lambda < 0 || sc.params.mu <= 0 || sc.params.dt <= 0)
      throw ConfigError("sir needs lambda >= 0, mu > 0, dt > 0");
    c.sir = sc;
  }
  if (j.contains("spd")) {
    const auto& s = j["spd"];
    detail::check_keys(s, "spd", {"T", "eps", "max_rounds", "tie", "seed"});
    SpdConfig sc;
    read_opt(s, "T", sc.params.temptation, "spd");
    read_opt(s, "eps", sc.params.eps, "spd");
    read_opt(s, "max_rounds", sc.params.max_rounds, "spd");
    std::string tie = "smallest";
    read_opt(s, "tie", tie, "spd");
    sc.params.tie = parse_tie(tie);
    detail::read_seed(s, sc.seed, "spd");
    if (!(sc.params.temptation > 1.0 && 1.0 > sc.params.eps && sc.params.eps >= 0.0))
      throw ConfigError("spd needs T > 1 > eps >= 0");
    c.spd = sc;
  }
  if (!c.sir && !c.spd) {
    c.sir = SirConfig{};
    c.spd = SpdConfig{};
  }
  if (j.contains("render")) {
    const auto& r = j["render"];
    detail::check_keys(r, "render", {"sir_times", "spd_times", "scale_pies"});
    read_opt(r, "sir_times", c.render.sir_times, "render");
    read_opt(r, "spd_times", c.render.spd_times, "render");
    read_opt(r, "scale_pies", c.render.scale_pies, "render");
  }
  return c;
}

/// Stage seeds: explicit per-section seed, else derived from the master.
enum class StageIndex : std::uint64_t { Generate = 1, Som = 2, Sir = 3, Spd = 4 };

inline std::uint64_t stage_seed(const RunConfig& c, StageIndex stage) {
  std::optional<std::uint64_t> explicit_seed;
  switch (stage) {
    case StageIndex::Generate: explicit_seed = c.generate.seed; break;
    case StageIndex::Som: explicit_seed = c.som.seed; break;
    case StageIndex::Sir: explicit_seed = c.sir ? c.sir->seed : std::nullopt; break;
    case StageIndex::Spd: explicit_seed = c.spd ? c.spd->seed : std::nullopt; break;
  }
  return explicit_seed ? *explicit_seed : derive_seed(c.seed, static_cast<std::uint64_t>(stage));
}

// --- parameter records --------------------------------------------------------

inline json generate_params_json(const GenerateConfig& g) {
  json p{{"model", g.model}, {"n", g.n()}};
  if (g.model == "hk") {
    p["m"] = g.hk.m;
    p["pt"] = g.hk.triad_probability;
  } else {
    p["u"] = g.cnn.conversion_probability;
  }
  return p;
}

inline json som_params_json(const SomConfig& s) {
  std::vector<std::string> logs;
  for (std::size_t f = 0; f < kFeatureCount; ++f)
    if (s.log_features[f]) logs.emplace_back(kFeatureNames[f]);
  return {{"width", s.width},
          {"height", s.height},
          {"epochs", s.schedule.epochs},
          {"alpha0", s.schedule.alpha_start},
          {"alpha1", s.schedule.alpha_end},
          {"sigma0", s.schedule.sigma_start > 0 ? s.schedule.sigma_start
                                                : static_cast<double>(std::max(s.width, s.height)) / 2.0},
          {"sigma1", s.schedule.sigma_end},
          {"log_features", logs}};
}

inline json sir_params_json(const SirConfig& s) {
  return {{"lambda", s.params.lambda},
          {"mu", s.params.mu},
          {"dt", s.params.dt},
          {"initial", s.params.initial_infected},
          {"snapshot_interval", s.plan.interval},
          {"times", s.plan.times}};
}

inline json spd_params_json(const SpdConfig& s) {
  return {{"T", s.params.temptation},
          {"eps", s.params.eps},
          {"max_rounds", s.params.max_rounds},
          {"tie", s.params.tie == TieRule::Random ? "random" : "smallest"},
          {"all_cooperate", s.params.all_cooperate}};
}

// --- stage implementations ------------------------------------------------------

inline Graph run_generate(const GenerateConfig& g, std::uint64_t seed) {
  try {
    if (g.model == "hk") return generate_hk(g.hk, seed);
    if (g.model == "cnn") return generate_cnn(g.cnn, seed);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("generate: ") + e.what());
  }
  throw ConfigError("generate: unknown model '" + g.model + "'");
}

struct Categorization {
  SomGrid grid;
  CellAssignment assignment;
  CellStats stats;
  SomTrainingReport report;
};

inline Categorization run_categorize(const NodeFeatures& features, const SomConfig& s, std::uint64_t seed) {
  Categorization c;
  auto normalized = normalize_features(features, s.log_features);
  c.grid = train_som(normalized, s.width, s.height, s.schedule, seed, &c.report);
  c.assignment = assign_nodes(c.grid, normalized.rows);
  c.stats = cell_stats(c.assignment, features);
  return c;
}

/// Default display times: six evenly spaced instants from the first to the
/// last snapshot.
inline std::vector<double> default_display_times(const SimTrace& tr) {
  const double t0 = tr.snapshots.front().time, t1 = tr.snapshots.back().time;
  std::vector<double> out;
  for (int i = 0; i < 6; ++i) out.push_back(t0 + (t1 - t0) * i / 5.0);
  return out;
}

inline std::string time_tag(double t) { return svg::label(t); }

/// Fraction of each cell's agents in `state` at `snap`; NaN for empty cells.
inline std::vector<double> cell_state_fraction(const SimTrace& tr, std::size_t snap, std::size_t state) {
  std::vector<double> out(tr.cell_count());
  for (std::size_t c = 0; c < tr.cell_count(); ++c) {
    const auto pop = tr.cell_population(snap, c);
    out[c] = pop ? static_cast<double>(tr.count(snap, c, state)) / static_cast<double>(pop) : std::nan("");
  }
  return out;
}

/// Spearman correlation over populated cells between a cell feature mean
/// and a per-cell value.
inline double cell_correlation(const CellStats& stats, std::size_t feature, const std::vector<double>& per_cell) {
  std::vector<double> a, b;
  for (std::size_t c = 0; c < stats.cell_count(); ++c)
    if (stats.count[c] && !std::isnan(per_cell[c])) {
      a.push_back(stats.mean[c][feature]);
      b.push_back(per_cell[c]);
    }
  return spearman(a, b);
}

inline json json_number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

/// Full pipeline into `dir`. Returns the summary that is also written to
/// summary.json.
inline json run_full(const RunConfig& cfg, const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  auto path = [&](const std::string& name) { return (dir / name).string(); };
  const json no_inputs = json::object();

  // generate
  const std::uint64_t gen_seed = stage_seed(cfg, StageIndex::Generate);
  Graph graph;
  try {
    graph = run_generate(cfg.generate, gen_seed);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError("generate", e.what());
  }
  const std::string edges = to_edge_list(graph);
  const std::string graph_hash = content_hash(edges);
  write_artifact(path("graph.edges"), edges,
                 make_meta("generate", edges, no_inputs, generate_params_json(cfg.generate), gen_seed,
                           {{"graph", graph_hash}}));

  // metrics
  NodeFeatures features;
  try {
    features = compute_all(graph);
  } catch (const std::exception& e) {
    throw StageError("metrics", e.what());
  }
  const std::string features_csv = features_to_csv(features);
  write_artifact(path("features.csv"), features_csv,
                 make_meta("metrics", features_csv, {{"graph.edges", graph_hash}}, json::object(), std::nullopt,
                           {{"graph", graph_hash}}));

  // categorize
  const std::uint64_t som_seed = stage_seed(cfg, StageIndex::Som);
  Categorization cat;
  try {
    cat = run_categorize(features, cfg.som, som_seed);
  } catch (const std::exception& e) {
    throw StageError("categorize", e.what());
  }
  const json cat_inputs = {{"features.csv", content_hash(features_csv)}};
  const json lineage = {{"graph", graph_hash}};
  const std::string assign_csv = assignment_to_csv(cat.assignment);
  const std::string cells_csv = cell_stats_to_csv(cat.stats);
  const std::string som_json = som_to_json(cat.grid).dump(2) + "\n";
  const json som_params = som_params_json(cfg.som);
  write_artifact(path("assign.csv"), assign_csv, make_meta("categorize", assign_csv, cat_inputs, som_params, som_seed, lineage));
  write_artifact(path("cells.csv"), cells_csv, make_meta("categorize", cells_csv, cat_inputs, som_params, som_seed, lineage));
  write_artifact(path("som.json"), som_json, make_meta("categorize", som_json, cat_inputs, som_params, som_seed, lineage));

  json summary;
  summary["tool_version"] = kToolVersion;
  summary["graph"] = {{"model", cfg.generate.model},
                      {"nodes", graph.node_count()},
                      {"edges", graph.edge_count()},
                      {"mean_degree", mean_degree(graph)},
                      {"hash", graph_hash}};
  summary["som"] = {{"width", cfg.som.width},
                    {"height", cfg.som.height},
                    {"initial_quantization_error", cat.report.initial_quantization_error},
                    {"final_quantization_error", cat.report.final_quantization_error}};
  json cells = json::array();
  for (std::size_t c = 0; c < cat.stats.cell_count(); ++c) {
    json row{{"X", c % cat.stats.width}, {"Y", c / cat.stats.width}, {"count", cat.stats.count[c]}};
    for (std::size_t f = 0; f < kFeatureCount; ++f)
      row[std::string("mean_") + kFeatureNames[f]] = cat.stats.count[c] ? json(cat.stats.mean[c][f]) : json(nullptr);
    cells.push_back(std::move(row));
  }
  summary["cells"] = std::move(cells);

  // render heat maps
  try {
    const std::string heat = svg::render_heatmaps(cat.stats, "Heat maps (" + cfg.generate.model + ")");
    write_file(path("heatmap_" + cfg.generate.model + ".svg"), heat);
  } catch (const std::exception& e) {
    throw StageError("render", e.what());
  }

  const svg::PieOptions pie_opt{cfg.render.scale_pies};
  auto render_trace = [&](const SimTrace& tr, const std::string& sim, const std::vector<double>& requested) {
    try {
      const auto times = requested.empty() ? default_display_times(tr) : requested;
      write_file(path("timeline_" + sim + ".svg"), svg::render_timeline(tr, times, pie_opt, sim + " states over time"));
      for (std::size_t idx : svg::select_snapshots(tr, times))
        write_file(path("pies_" + sim + "_" + time_tag(tr.snapshots[idx].time) + ".svg"),
                   svg::render_pie_lattice(tr, idx, pie_opt));
    } catch (const std::exception& e) {
      throw StageError("render", e.what());
    }
  };
  const json sim_inputs = {{"graph.edges", graph_hash}, {"assign.csv", content_hash(assign_csv)}};

  if (cfg.sir) {
    const std::uint64_t seed = stage_seed(cfg, StageIndex::Sir);
    SimTrace tr;
    try {
      tr = run_sir(graph, cat.assignment, cfg.sir->params, seed, cfg.sir->plan);
    } catch (const std::exception& e) {
      throw StageError("simulate sir", e.what());
    }
    const std::string csv = trace_to_csv(tr);
    json params = sir_params_json(*cfg.sir);
    json meta = make_meta("simulate", csv, sim_inputs, params, seed, lineage);
    meta["terminal_time"] = tr.snapshots.back().time;
    write_artifact(path("sir_trace.csv"), csv, meta);
    render_trace(tr, "sir", cfg.render.sir_times);

    const std::size_t last = tr.snapshots.size() - 1;
    const auto r_frac = cell_state_fraction(tr, last, 2);
    json per_cell = json::array();
    for (std::size_t c = 0; c < tr.cell_count(); ++c)
      per_cell.push_back({{"X", c % tr.width}, {"Y", c / tr.width}, {"count", tr.cell_population(last, c)},
                          {"R_fraction", json_number(r_frac[c])}});
    summary["sir"] = {
        {"seed", seed},
        {"terminal_time", tr.snapshots.back().time},
        {"terminal_R", tr.state_total(last, 2)},
        {"terminal_R_fraction", static_cast<double>(tr.state_total(last, 2)) / static_cast<double>(graph.node_count())},
        {"spearman_R_vs_b", json_number(cell_correlation(cat.stats, 2, r_frac))},
        {"spearman_R_vs_k_nn", json_number(cell_correlation(cat.stats, 1, r_frac))},
        {"spearman_R_vs_L", json_number(cell_correlation(cat.stats, 3, r_frac))},
        {"cells", std::move(per_cell)}};
  }

  if (cfg.spd) {
    const std::uint64_t seed = stage_seed(cfg, StageIndex::Spd);
    SimTrace tr;
    try {
      tr = run_spd(graph, cat.assignment, cfg.spd->params, seed);
    } catch (const std::exception& e) {
      throw StageError("simulate spd", e.what());
    }
    const std::string csv = trace_to_csv(tr);
    json meta = make_meta("simulate", csv, sim_inputs, spd_params_json(*cfg.spd), seed, lineage);
    meta["terminal_time"] = tr.snapshots.back().time;
    meta["fixed_point"] = tr.terminal;
    write_artifact(path("spd_trace.csv"), csv, meta);
    render_trace(tr, "spd", cfg.render.spd_times);

    const std::size_t last = tr.snapshots.size() - 1;
    const auto c_frac = cell_state_fraction(tr, last, 0);
    json per_cell = json::array();
    for (std::size_t c = 0; c < tr.cell_count(); ++c)
      per_cell.push_back({{"X", c % tr.width}, {"Y", c / tr.width}, {"count", tr.cell_population(last, c)},
                          {"C_fraction", json_number(c_frac[c])}});
    summary["spd"] = {
        {"seed", seed},
        {"rounds", static_cast<std::size_t>(tr.snapshots.back().time)},
        {"fixed_point", tr.terminal},
        {"final_cooperator_fraction",
         static_cast<double>(tr.state_total(last, 0)) / static_cast<double>(graph.node_count())},
        {"cells", std::move(per_cell)}};
  }

  write_file(path("summary.json"), summary.dump(2) + "\n");
  return summary;
}

/// K independent runs (master seeds seed, seed+1, ...) in run_000, run_001,
/// ... under `dir`, executed concurrently up to worker_count().
inline std::vector<json> run_ensemble(const RunConfig& cfg, const std::filesystem::path& dir, std::size_t runs) {
  if (runs < 1) throw ConfigError("--runs must be >= 1");
  std::vector<json> summaries(runs);
  parallel_for(runs, worker_count(), [&](std::size_t k) {
    RunConfig rc = cfg;
    rc.seed = cfg.seed + k;
    char name[32];
    std::snprintf(name, sizeof name, "run_%03zu", k);
    summaries[k] = run_full(rc, dir / name);
  });
  return summaries;
}

}  // namespace netsom
