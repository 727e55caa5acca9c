// netsom: generate -> metrics -> categorize -> simulate -> render.
//
// Exit codes: 0 ok, 2 configuration/argument error, 3 stage failure.

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "netsom/netsom.hpp"

namespace {

using namespace netsom;
namespace fs = std::filesystem;

constexpr int kExitConfig = 2;
constexpr int kExitStage = 3;

/// "dir/hk.features.csv" -> "dir/hk" for the given suffixes.
std::string strip_suffix(const std::string& path, std::initializer_list<const char*> suffixes) {
  for (const char* s : suffixes) {
    const std::string suf(s);
    if (path.size() > suf.size() && path.compare(path.size() - suf.size(), suf.size(), suf) == 0)
      return path.substr(0, path.size() - suf.size());
  }
  return fs::path(path).replace_extension().string();
}

std::vector<double> parse_times(const std::string& list) {
  std::vector<double> out;
  if (list.empty()) return out;
  for (auto tok : split_csv(list)) {
    try {
      out.push_back(parse_double(tok));
    } catch (const FormatError&) {
      throw ConfigError("bad time value '" + std::string(tok) + "'");
    }
  }
  return out;
}

std::vector<std::string> split_names(const std::string& list) {
  std::vector<std::string> out;
  if (list.empty()) return out;
  for (auto tok : split_csv(list)) out.emplace_back(tok);
  return out;
}

struct GenerateArgs {
  std::string model = "hk";
  std::size_t n = 10000;
  std::size_t m = 4;
  double pt = 0.9;
  double u = 0.75;
  std::uint64_t seed = 1;
  std::string out;
};

void cmd_generate(const GenerateArgs& a) {
  GenerateConfig g;
  g.model = a.model;
  g.hk = {a.n, a.m, a.pt};
  g.cnn = {a.n, a.u};
  Graph graph = run_generate(g, a.seed);
  const std::string text = to_edge_list(graph);
  const std::string hash = content_hash(text);
  write_artifact(a.out, text, make_meta("generate", text, json::object(), generate_params_json(g), a.seed, {{"graph", hash}}));
  std::cerr << "generate: " << graph.node_count() << " nodes, " << graph.edge_count() << " edges, <k> = "
            << mean_degree(graph) << " -> " << a.out << '\n';
}

struct MetricsArgs {
  std::string edges;
  std::string out;
};

void cmd_metrics(const MetricsArgs& a) {
  auto in = read_checked(a.edges, "metrics");
  std::istringstream is(in.content);
  NodeFeatures f;
  try {
    f = compute_all(parse_edge_list(is));
  } catch (const std::exception& e) {
    throw StageError("metrics", e.what());
  }
  const std::string out = a.out.empty() ? strip_suffix(a.edges, {".edges"}) + ".features.csv" : a.out;
  const std::string csv = features_to_csv(f);
  write_artifact(out, csv, make_meta("metrics", csv, {{a.edges, in.hash}}, json::object(), std::nullopt,
                                     {{"graph", in.hash}}));
  std::cerr << "metrics: " << f.size() << " nodes -> " << out << '\n';
}

struct CategorizeArgs {
  std::string features;
  std::string grid = "5x5";
  std::uint64_t seed = 1;
  std::size_t epochs = 20;
  double alpha0 = 0.5, alpha1 = 0.01, sigma0 = -1.0, sigma1 = 0.5;
  std::string log_features;
  std::string prefix;
};

void cmd_categorize(const CategorizeArgs& a) {
  SomConfig s;
  std::tie(s.width, s.height) = parse_grid(a.grid);
  s.schedule = {a.alpha0, a.alpha1, a.sigma0, a.sigma1, a.epochs};
  if (a.epochs < 1) throw ConfigError("--epochs must be >= 1");
  s.log_features = parse_feature_list(split_names(a.log_features));

  auto in = read_checked(a.features, "categorize");
  std::istringstream is(in.content);
  Categorization cat;
  try {
    cat = run_categorize(read_features_csv(is), s, a.seed);
  } catch (const std::exception& e) {
    throw StageError("categorize", e.what());
  }
  const std::string prefix = a.prefix.empty() ? strip_suffix(a.features, {".features.csv", ".csv"}) : a.prefix;
  const json inputs = {{a.features, in.hash}};
  json lineage = json::object();
  if (auto g = lineage_graph(in); !g.empty()) lineage["graph"] = g;
  const json params = som_params_json(s);
  const std::string assign = assignment_to_csv(cat.assignment);
  const std::string cells = cell_stats_to_csv(cat.stats);
  const std::string som = som_to_json(cat.grid).dump(2) + "\n";
  write_artifact(prefix + ".assign.csv", assign, make_meta("categorize", assign, inputs, params, a.seed, lineage));
  write_artifact(prefix + ".cells.csv", cells, make_meta("categorize", cells, inputs, params, a.seed, lineage));
  write_artifact(prefix + ".som.json", som, make_meta("categorize", som, inputs, params, a.seed, lineage));
  std::cerr << "categorize: quantization error " << cat.report.initial_quantization_error << " -> "
            << cat.report.final_quantization_error << "; wrote " << prefix << ".{assign,cells}.csv, " << prefix
            << ".som.json\n";
}

struct SimInputs {
  Graph graph;
  CellAssignment cells;
  json inputs;
  json lineage;
};

SimInputs load_sim_inputs(const std::string& edges, const std::string& assign, const std::string& stage) {
  auto ge = read_checked(edges, stage);
  auto as = read_checked(assign, stage);
  const std::string recorded = lineage_graph(as);
  if (!recorded.empty() && recorded != ge.hash)
    throw StageError(stage, "stale input: '" + assign + "' was derived from a different graph (hash " + recorded +
                                ") than '" + edges + "' (hash " + ge.hash + ")");
  SimInputs s;
  try {
    std::istringstream gs(ge.content);
    s.graph = parse_edge_list(gs);
    std::istringstream ss(as.content);
    if (as.meta && (*as.meta)["parameters"].contains("width"))
      s.cells = assignment_from_csv(ss, (*as.meta)["parameters"]["width"].get<std::size_t>(),
                                    (*as.meta)["parameters"]["height"].get<std::size_t>());
    else
      s.cells = assignment_from_csv(ss);
  } catch (const std::exception& e) {
    throw StageError(stage, e.what());
  }
  if (s.cells.cells.size() != s.graph.node_count())
    throw StageError(stage, "assignment has " + std::to_string(s.cells.cells.size()) + " nodes, graph has " +
                                std::to_string(s.graph.node_count()));
  s.inputs = {{edges, ge.hash}, {assign, as.hash}};
  s.lineage = {{"graph", ge.hash}};
  return s;
}

struct SirArgs {
  std::string edges, assign, out;
  double lambda = 0.2, mu = 1.0, dt = 0.01;
  std::size_t initial = 10;
  std::uint64_t seed = 1;
  double every = 0.5;
  std::string times;
};

void cmd_simulate_sir(const SirArgs& a) {
  SirConfig c;
  c.params = {a.lambda, a.mu, a.dt, a.initial};
  c.plan = {parse_times(a.times), a.every};
  if (a.lambda < 0 || a.mu <= 0 || a.dt <= 0) throw ConfigError("sir needs lambda >= 0, mu > 0, dt > 0");
  auto in = load_sim_inputs(a.edges, a.assign, "simulate sir");
  if (a.initial < 1 || a.initial > in.graph.node_count()) throw ConfigError("--initial out of range");
  SimTrace tr;
  try {
    tr = run_sir(in.graph, in.cells, c.params, a.seed, c.plan);
  } catch (const std::exception& e) {
    throw StageError("simulate sir", e.what());
  }
  const std::string out = a.out.empty() ? strip_suffix(a.assign, {".assign.csv", ".csv"}) + ".sir.csv" : a.out;
  const std::string csv = trace_to_csv(tr);
  json meta = make_meta("simulate", csv, in.inputs, sir_params_json(c), a.seed, in.lineage);
  meta["terminal_time"] = tr.snapshots.back().time;
  write_artifact(out, csv, meta);
  const auto last = tr.snapshots.size() - 1;
  std::cerr << "simulate sir: terminal t = " << tr.snapshots.back().time << ", R = " << tr.state_total(last, 2)
            << " -> " << out << '\n';
}

struct SpdArgs {
  std::string edges, assign, out;
  double temptation = 1.5, eps = 0.0;
  std::size_t max_rounds = 100;
  std::string tie = "smallest";
  bool all_c = false;
  std::uint64_t seed = 1;
};

void cmd_simulate_spd(const SpdArgs& a) {
  SpdConfig c;
  c.params = {a.temptation, a.eps, a.max_rounds, parse_tie(a.tie), a.all_c};
  if (!(a.temptation > 1.0 && 1.0 > a.eps && a.eps >= 0.0)) throw ConfigError("spd needs T > 1 > eps >= 0");
  if (a.max_rounds < 1) throw ConfigError("--max-rounds must be >= 1");
  auto in = load_sim_inputs(a.edges, a.assign, "simulate spd");
  SimTrace tr;
  try {
    tr = run_spd(in.graph, in.cells, c.params, a.seed);
  } catch (const std::exception& e) {
    throw StageError("simulate spd", e.what());
  }
  const std::string out = a.out.empty() ? strip_suffix(a.assign, {".assign.csv", ".csv"}) + ".spd.csv" : a.out;
  const std::string csv = trace_to_csv(tr);
  json meta = make_meta("simulate", csv, in.inputs, spd_params_json(c), a.seed, in.lineage);
  meta["terminal_time"] = tr.snapshots.back().time;
  meta["fixed_point"] = tr.terminal;
  write_artifact(out, csv, meta);
  const auto last = tr.snapshots.size() - 1;
  std::cerr << "simulate spd: " << tr.snapshots.back().time << " rounds" << (tr.terminal ? " (fixed point)" : "")
            << ", C = " << tr.state_total(last, 0) << " -> " << out << '\n';
}

struct RenderArgs {
  std::string kind, input, out, times, title;
  double time = -1.0;
  bool scale = false;
};

void cmd_render(const RenderArgs& a) {
  auto in = read_checked(a.input, "render");
  std::istringstream is(in.content);
  const std::string base = fs::path(strip_suffix(a.input, {".cells.csv", ".csv"})).filename().string();
  std::string out = a.out;
  try {
    if (a.kind == "heatmap") {
      auto stats = cell_stats_from_csv(is);
      if (out.empty()) out = "heatmap_" + base + ".svg";
      write_file(out, svg::render_heatmaps(stats, a.title));
    } else {
      auto tr = trace_from_csv(is);
      const std::string sim = tr.time_column == "t" ? "sir" : "spd";
      const svg::PieOptions opt{a.scale};
      if (a.kind == "pies") {
        const std::size_t idx = a.time < 0 ? tr.snapshots.size() - 1 : tr.nearest(a.time);
        if (out.empty()) out = "pies_" + sim + "_" + time_tag(tr.snapshots[idx].time) + ".svg";
        write_file(out, svg::render_pie_lattice(tr, idx, opt));
      } else {
        auto times = parse_times(a.times);
        if (times.empty()) times = default_display_times(tr);
        if (out.empty()) out = "timeline_" + sim + ".svg";
        write_file(out, svg::render_timeline(tr, times, opt, a.title));
      }
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError("render", e.what());
  }
  std::cerr << "render: " << out << '\n';
}

struct RunArgs {
  std::string config;
  std::string out = "report";
  std::size_t runs = 1;
  std::optional<std::uint64_t> seed;
  std::string grid;
};

void cmd_run(const RunArgs& a) {
  json j;
  try {
    j = json::parse(read_file(a.config));
  } catch (const json::exception& e) {
    throw ConfigError("config '" + a.config + "' is not valid JSON: " + e.what());
  } catch (const FormatError& e) {
    throw ConfigError(e.what());
  }
  RunConfig cfg = parse_config(j);
  if (a.seed) cfg.seed = *a.seed;
  if (!a.grid.empty()) std::tie(cfg.som.width, cfg.som.height) = parse_grid(a.grid);
  if (a.runs == 1) {
    json summary = run_full(cfg, a.out);
    std::cerr << "run: report in " << a.out << '\n';
    if (summary.contains("sir"))
      std::cerr << "  terminal R fraction " << summary["sir"]["terminal_R_fraction"] << '\n';
    if (summary.contains("spd"))
      std::cerr << "  final cooperator fraction " << summary["spd"]["final_cooperator_fraction"] << '\n';
  } else {
    auto summaries = run_ensemble(cfg, a.out, a.runs);
    std::cerr << "run: " << summaries.size() << " runs in " << a.out << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"netsom: structural node categorization and agent simulations on growth-model networks"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Generate an HK or CNN network as an edge list");
  g->add_option("--model", gen.model, "hk or cnn")->check(CLI::IsMember({"hk", "cnn"}));
  g->add_option("--n", gen.n, "Number of nodes");
  g->add_option("--m", gen.m, "HK: edges per new node");
  g->add_option("--pt", gen.pt, "HK: triad formation probability");
  g->add_option("--u", gen.u, "CNN: potential-link conversion probability");
  g->add_option("--seed", gen.seed, "Random seed");
  g->add_option("-o,--output", gen.out, "Output edge list")->required();

  MetricsArgs met;
  auto* m = app.add_subcommand("metrics", "Compute per-node features (k, k_nn, b, L, C)");
  m->add_option("edges", met.edges, "Input edge list")->required();
  m->add_option("-o,--output", met.out, "Output features CSV (default <stem>.features.csv)");

  CategorizeArgs cat;
  auto* c = app.add_subcommand("categorize", "Train a SOM and assign nodes to lattice cells");
  c->add_option("features", cat.features, "Features CSV")->required();
  c->add_option("--grid", cat.grid, "Lattice size WxH");
  c->add_option("--seed", cat.seed, "Random seed");
  c->add_option("--epochs", cat.epochs, "Training epochs");
  c->add_option("--alpha0", cat.alpha0, "Initial learning rate");
  c->add_option("--alpha1", cat.alpha1, "Final learning rate");
  c->add_option("--sigma0", cat.sigma0, "Initial neighbourhood width (default max(W,H)/2)");
  c->add_option("--sigma1", cat.sigma1, "Final neighbourhood width");
  c->add_option("--log-features", cat.log_features, "Comma list of features to log10(1+x) before scaling");
  c->add_option("-o,--prefix", cat.prefix, "Output prefix (default <stem>)");

  auto* sim = app.add_subcommand("simulate", "Run an agent simulation over categorized nodes");
  sim->require_subcommand(1);
  SirArgs sir;
  auto* ss = sim->add_subcommand("sir", "SIR epidemic");
  ss->add_option("edges", sir.edges, "Edge list")->required();
  ss->add_option("assign", sir.assign, "Cell assignment CSV")->required();
  ss->add_option("--lambda", sir.lambda, "Infection rate");
  ss->add_option("--mu", sir.mu, "Recovery rate");
  ss->add_option("--dt", sir.dt, "Time step");
  ss->add_option("--initial", sir.initial, "Initially infectious agents");
  ss->add_option("--seed", sir.seed, "Random seed");
  ss->add_option("--snapshot-every", sir.every, "Snapshot interval in time units (0 disables)");
  ss->add_option("--times", sir.times, "Comma list of extra snapshot times");
  ss->add_option("-o,--output", sir.out, "Trace CSV (default <stem>.sir.csv)");

  SpdArgs spd;
  auto* sp = sim->add_subcommand("spd", "Spatial prisoner's dilemma");
  sp->add_option("edges", spd.edges, "Edge list")->required();
  sp->add_option("assign", spd.assign, "Cell assignment CSV")->required();
  sp->add_option("--T", spd.temptation, "Temptation payoff");
  sp->add_option("--eps", spd.eps, "Mutual defection payoff");
  sp->add_option("--max-rounds", spd.max_rounds, "Round limit");
  sp->add_option("--tie", spd.tie, "Tie rule among wealthiest neighbours")->check(CLI::IsMember({"smallest", "random"}));
  sp->add_flag("--all-c", spd.all_c, "Start with every agent cooperating");
  sp->add_option("--seed", spd.seed, "Random seed");
  sp->add_option("-o,--output", spd.out, "Trace CSV (default <stem>.spd.csv)");

  RenderArgs ren;
  auto* r = app.add_subcommand("render", "Render SVG figures");
  r->add_option("kind", ren.kind, "heatmap | pies | timeline")->required()->check(CLI::IsMember({"heatmap", "pies", "timeline"}));
  r->add_option("input", ren.input, "Cell stats CSV (heatmap) or trace CSV")->required();
  r->add_option("--time", ren.time, "pies: snapshot time (nearest used; default terminal)");
  r->add_option("--times", ren.times, "timeline: comma list of times");
  r->add_option("--title", ren.title, "Figure title");
  r->add_flag("--scale-pies", ren.scale, "Scale pie radius by sqrt(cell population)");
  r->add_option("-o,--output", ren.out, "Output SVG");

  RunArgs run;
  auto* f = app.add_subcommand("run", "Run the whole pipeline from a JSON config");
  f->add_option("config", run.config, "JSON config")->required();
  f->add_option("-o,--output", run.out, "Report directory");
  f->add_option("--runs", run.runs, "Independent seeded runs (ensemble)");
  f->add_option("--seed", run.seed, "Override master seed");
  f->add_option("--grid", run.grid, "Override SOM grid WxH");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*g) cmd_generate(gen);
    else if (*m) cmd_metrics(met);
    else if (*c) cmd_categorize(cat);
    else if (*ss) cmd_simulate_sir(sir);
    else if (*sp) cmd_simulate_spd(spd);
    else if (*r) cmd_render(ren);
    else if (*f) cmd_run(run);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitStage;
  }
  return 0;
}
