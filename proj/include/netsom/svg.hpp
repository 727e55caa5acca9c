#pragma once

// Standalone SVG 1.1 output: per-component heat maps of cell statistics and
// pie-chart lattices of simulation state fractions.
//
// Heat-map ramp (value t in [0,1] between panel min and max over populated
// cells): #313695 -> #74add1 -> #ffffbf -> #f46d43 -> #a50026, linear in RGB
// between equally spaced stops. Empty cells are #e0e0e0.
// State palette: S #377eb8, I #e41a1c, R #9e9e9e, C #1a9850, D #d73027.

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "netsom/metrics.hpp"
#include "netsom/som.hpp"
#include "netsom/trace.hpp"

namespace netsom::svg {

class RenderError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Rgb {
  int r, g, b;
};

inline constexpr std::array<Rgb, 5> kRamp = {{{0x31, 0x36, 0x95},
                                              {0x74, 0xad, 0xd1},
                                              {0xff, 0xff, 0xbf},
                                              {0xf4, 0x6d, 0x43},
                                              {0xa5, 0x00, 0x26}}};
inline constexpr const char* kEmptyFill = "#e0e0e0";

inline std::string hex_color(Rgb c) {
  static constexpr char d[] = "0123456789abcdef";
  std::string s = "#";
  for (int v : {c.r, c.g, c.b}) {
    s += d[(v >> 4) & 0xF];
    s += d[v & 0xF];
  }
  return s;
}

/// Ramp colour at position t in [0,1] (clamped).
inline std::string ramp_color(double t) {
  t = std::clamp(std::isfinite(t) ? t : 0.0, 0.0, 1.0);
  const double pos = t * static_cast<double>(kRamp.size() - 1);
  const std::size_t i = std::min(static_cast<std::size_t>(pos), kRamp.size() - 2);
  const double f = pos - static_cast<double>(i);
  auto mix = [f](int a, int b) { return static_cast<int>(std::lround(a + (b - a) * f)); };
  return hex_color({mix(kRamp[i].r, kRamp[i + 1].r), mix(kRamp[i].g, kRamp[i + 1].g), mix(kRamp[i].b, kRamp[i + 1].b)});
}

/// Colour of `value` in a panel spanning [lo, hi]; a degenerate panel
/// (lo == hi) is drawn entirely at the top of the ramp.
inline std::string heat_color(double value, double lo, double hi) {
  if (!(hi > lo)) return ramp_color(1.0);
  return ramp_color((value - lo) / (hi - lo));
}

inline std::string state_color(const std::string& state) {
  static const std::map<std::string, std::string> palette = {
      {"S", "#377eb8"}, {"I", "#e41a1c"}, {"R", "#9e9e9e"}, {"C", "#1a9850"}, {"D", "#d73027"}};
  auto it = palette.find(state);
  return it != palette.end() ? it->second : "#000000";
}

/// Fixed-point coordinate with at most 4 decimals, trailing zeros removed.
inline std::string num(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 4);
  std::string s(buf, ptr);
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  if (s == "-0") s = "0";
  return s;
}

/// Compact human label (4 significant digits).
inline std::string label(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 4);
  return std::string(buf, ptr);
}

inline std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string document_open(double width, double height) {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(width) + "\" height=\"" +
         num(height) + "\" viewBox=\"0 0 " + num(width) + " " + num(height) +
         "\" font-family=\"Helvetica, Arial, sans-serif\">\n"
         "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
}

inline constexpr const char* kDocumentClose = "</svg>\n";

// --- heat maps --------------------------------------------------------------

namespace detail {

inline constexpr double kHeatCell = 36.0;
inline constexpr double kHeatMargin = 40.0;

struct HeatPanel {
  std::string key;    // element id prefix
  std::string title;
  std::vector<double> values;  // per linear cell, NaN when empty
};

inline double panel_width(std::size_t w) { return kHeatMargin + kHeatCell * static_cast<double>(w) + 20.0; }
inline double panel_height(std::size_t h) { return 34.0 + kHeatCell * static_cast<double>(h) + 78.0; }

inline void heat_panel(std::ostringstream& os, const HeatPanel& p, std::size_t w, std::size_t h, double ox,
                       double oy) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (double v : p.values)
    if (!std::isnan(v)) lo = std::min(lo, v), hi = std::max(hi, v);

  os << "<g id=\"panel-" << p.key << "\" transform=\"translate(" << num(ox) << "," << num(oy) << ")\">\n";
  os << "<text x=\"" << num(kHeatMargin) << "\" y=\"20\" font-size=\"14\" font-weight=\"bold\">" << escape(p.title)
     << "</text>\n";
  const double top = 30.0;
  for (std::size_t y = 0; y < h; ++y)
    for (std::size_t x = 0; x < w; ++x) {
      const double v = p.values[y * w + x];
      // Y grows upward.
      const double px = kHeatMargin + kHeatCell * static_cast<double>(x);
      const double py = top + kHeatCell * static_cast<double>(h - 1 - y);
      os << "<rect id=\"" << p.key << "-" << x << "-" << y << "\" class=\"" << (std::isnan(v) ? "empty" : "cell")
         << "\" data-x=\"" << x << "\" data-y=\"" << y << "\"";
      if (!std::isnan(v)) os << " data-value=\"" << format_double(v) << "\"";
      os << " x=\"" << num(px) << "\" y=\"" << num(py) << "\" width=\"" << num(kHeatCell) << "\" height=\""
         << num(kHeatCell) << "\" fill=\"" << (std::isnan(v) ? kEmptyFill : heat_color(v, lo, hi))
         << "\" stroke=\"#ffffff\" stroke-width=\"1\"/>\n";
    }
  const double grid_bottom = top + kHeatCell * static_cast<double>(h);
  for (std::size_t x = 0; x < w; ++x)
    os << "<text x=\"" << num(kHeatMargin + kHeatCell * (static_cast<double>(x) + 0.5)) << "\" y=\""
       << num(grid_bottom + 13) << "\" font-size=\"10\" text-anchor=\"middle\">" << x << "</text>\n";
  for (std::size_t y = 0; y < h; ++y)
    os << "<text x=\"" << num(kHeatMargin - 6) << "\" y=\""
       << num(top + kHeatCell * (static_cast<double>(h - 1 - y) + 0.5) + 3.5)
       << "\" font-size=\"10\" text-anchor=\"end\">" << y << "</text>\n";
  os << "<text x=\"" << num(kHeatMargin + kHeatCell * static_cast<double>(w) / 2) << "\" y=\""
     << num(grid_bottom + 26) << "\" font-size=\"11\" text-anchor=\"middle\">X &#8594;</text>\n";
  os << "<text x=\"12\" y=\"" << num(top + kHeatCell * static_cast<double>(h) / 2)
     << "\" font-size=\"11\" text-anchor=\"middle\" transform=\"rotate(-90 12 "
     << num(top + kHeatCell * static_cast<double>(h) / 2) << ")\">Y &#8594;</text>\n";

  // Legend bar.
  const double lx = kHeatMargin, ly = grid_bottom + 34, lw = kHeatCell * static_cast<double>(w);
  os << "<rect class=\"legend\" x=\"" << num(lx) << "\" y=\"" << num(ly) << "\" width=\"" << num(lw)
     << "\" height=\"10\" fill=\"url(#ramp)\"/>\n";
  if (!(hi > lo)) {
    os << "<text class=\"legend-label\" x=\"" << num(lx) << "\" y=\"" << num(ly + 24)
       << "\" font-size=\"10\">min = max = " << label(hi) << "</text>\n";
  } else {
    os << "<text class=\"legend-label\" x=\"" << num(lx) << "\" y=\"" << num(ly + 24) << "\" font-size=\"10\">"
       << label(lo) << "</text>\n";
    os << "<text class=\"legend-label\" x=\"" << num(lx + lw) << "\" y=\"" << num(ly + 24)
       << "\" font-size=\"10\" text-anchor=\"end\">" << label(hi) << "</text>\n";
  }
  os << "</g>\n";
}

inline std::string ramp_gradient() {
  std::ostringstream os;
  os << "<defs><linearGradient id=\"ramp\" x1=\"0\" y1=\"0\" x2=\"1\" y2=\"0\">";
  for (int i = 0; i <= 10; ++i)
    os << "<stop offset=\"" << num(i / 10.0) << "\" stop-color=\"" << ramp_color(i / 10.0) << "\"/>";
  os << "</linearGradient></defs>\n";
  return os.str();
}

}  // namespace detail

/// Count panel plus one panel per feature, three panels per row.
inline std::string render_heatmaps(const CellStats& stats, const std::string& title = "") {
  const std::size_t w = stats.width, h = stats.height;
  if (w == 0 || h == 0 || stats.count.size() != w * h) throw RenderError("cell stats have no grid");
  if (std::all_of(stats.count.begin(), stats.count.end(), [](std::size_t c) { return c == 0; }))
    throw RenderError("cannot render heat maps: every cell is empty");

  std::vector<detail::HeatPanel> panels;
  {
    detail::HeatPanel p{"count", "number of nodes", {}};
    for (std::size_t c = 0; c < w * h; ++c)
      p.values.push_back(stats.count[c] ? static_cast<double>(stats.count[c]) : std::nan(""));
    panels.push_back(std::move(p));
  }
  for (std::size_t f = 0; f < kFeatureCount; ++f) {
    detail::HeatPanel p{kFeatureNames[f], kFeatureNames[f], {}};
    for (std::size_t c = 0; c < w * h; ++c) p.values.push_back(stats.count[c] ? stats.mean[c][f] : std::nan(""));
    panels.push_back(std::move(p));
  }

  const double pw = detail::panel_width(w), ph = detail::panel_height(h);
  const double header = title.empty() ? 0.0 : 28.0;
  std::ostringstream os;
  os << document_open(3 * pw, header + 2 * ph);
  os << detail::ramp_gradient();
  if (!title.empty())
    os << "<text x=\"10\" y=\"20\" font-size=\"16\" font-weight=\"bold\">" << escape(title) << "</text>\n";
  for (std::size_t i = 0; i < panels.size(); ++i)
    detail::heat_panel(os, panels[i], w, h, pw * static_cast<double>(i % 3), header + ph * static_cast<double>(i / 3));
  os << kDocumentClose;
  return os.str();
}

// --- pie lattices -----------------------------------------------------------

struct PieOptions {
  bool scale_by_population = false;  // radius proportional to sqrt(cell size)
};

namespace detail {

inline constexpr double kPieCell = 56.0;
inline constexpr double kPieRadius = 24.0;

inline double pie_panel_width(std::size_t w) { return 30.0 + kPieCell * static_cast<double>(w) + 10.0; }
inline double pie_panel_height(std::size_t h) { return 30.0 + kPieCell * static_cast<double>(h) + 26.0; }

inline std::string caption(const SimTrace& tr, std::size_t snap) {
  return tr.time_column + " = " + label(tr.snapshots[snap].time);
}

/// Sectors start at 12 o'clock and run clockwise in state order.
inline void pie(std::ostringstream& os, const SimTrace& tr, std::size_t snap, std::size_t cell, double cx, double cy,
                double r) {
  const double pop = static_cast<double>(tr.cell_population(snap, cell));
  double start = 0.0;  // degrees clockwise from 12 o'clock
  for (std::size_t s = 0; s < tr.state_count(); ++s) {
    const std::uint32_t c = tr.count(snap, cell, s);
    if (c == 0) continue;
    const double angle = 360.0 * static_cast<double>(c) / pop;
    const std::string attrs = "class=\"sector\" data-state=\"" + escape(tr.states[s]) + "\" data-angle=\"" +
                              format_double(angle) + "\" fill=\"" + state_color(tr.states[s]) + "\"";
    if (c == pop) {
      os << "<circle " << attrs << " cx=\"" << num(cx) << "\" cy=\"" << num(cy) << "\" r=\"" << num(r) << "\"/>\n";
      return;
    }
    const double a0 = start * std::numbers::pi / 180.0;
    const double a1 = (start + angle) * std::numbers::pi / 180.0;
    os << "<path " << attrs << " d=\"M" << num(cx) << "," << num(cy) << " L" << num(cx + r * std::sin(a0)) << ","
       << num(cy - r * std::cos(a0)) << " A" << num(r) << "," << num(r) << " 0 " << (angle > 180.0 ? 1 : 0) << ",1 "
       << num(cx + r * std::sin(a1)) << "," << num(cy - r * std::cos(a1)) << " Z\"/>\n";
    start += angle;
  }
}

/// One lattice panel as a <g> element with its top-left at (ox, oy).
inline std::string pie_panel(const SimTrace& tr, std::size_t snap, const PieOptions& opt, double ox, double oy) {
  const std::size_t w = tr.width, h = tr.height;
  std::uint64_t max_pop = 0;
  for (std::size_t c = 0; c < tr.cell_count(); ++c) max_pop = std::max(max_pop, tr.cell_population(snap, c));

  std::ostringstream os;
  os << "<g class=\"pie-panel\" data-time=\"" << format_double(tr.snapshots[snap].time) << "\" transform=\"translate("
     << num(ox) << "," << num(oy) << ")\">\n";
  os << "<text x=\"30\" y=\"18\" font-size=\"13\" font-weight=\"bold\">" << escape(caption(tr, snap)) << "</text>\n";
  const double left = 30.0, top = 26.0;
  for (std::size_t y = 0; y < h; ++y)
    for (std::size_t x = 0; x < w; ++x) {
      const std::size_t cell = y * w + x;
      const double px = left + kPieCell * static_cast<double>(x);
      const double py = top + kPieCell * static_cast<double>(h - 1 - y);
      os << "<rect class=\"lattice\" x=\"" << num(px) << "\" y=\"" << num(py) << "\" width=\"" << num(kPieCell)
         << "\" height=\"" << num(kPieCell) << "\" fill=\"none\" stroke=\"#cccccc\" stroke-width=\"0.5\"/>\n";
      const std::uint64_t pop = tr.cell_population(snap, cell);
      if (pop == 0) continue;
      double r = kPieRadius;
      if (opt.scale_by_population)
        r *= std::sqrt(static_cast<double>(pop) / static_cast<double>(max_pop));
      os << "<g class=\"pie\" id=\"pie-" << x << "-" << y << "\" data-x=\"" << x << "\" data-y=\"" << y
         << "\" data-count=\"" << pop << "\">\n";
      pie(os, tr, snap, cell, px + kPieCell / 2, py + kPieCell / 2, r);
      os << "</g>\n";
    }
  const double bottom = top + kPieCell * static_cast<double>(h);
  for (std::size_t x = 0; x < w; ++x)
    os << "<text x=\"" << num(left + kPieCell * (static_cast<double>(x) + 0.5)) << "\" y=\"" << num(bottom + 12)
       << "\" font-size=\"10\" text-anchor=\"middle\">" << x << "</text>\n";
  for (std::size_t y = 0; y < h; ++y)
    os << "<text x=\"" << num(left - 5) << "\" y=\"" << num(top + kPieCell * (static_cast<double>(h - 1 - y) + 0.5) + 3.5)
       << "\" font-size=\"10\" text-anchor=\"end\">" << y << "</text>\n";
  os << "</g>\n";
  return os.str();
}

inline std::string state_legend(const SimTrace& tr, double ox, double oy) {
  std::ostringstream os;
  os << "<g class=\"legend\" transform=\"translate(" << num(ox) << "," << num(oy) << ")\">\n";
  for (std::size_t s = 0; s < tr.state_count(); ++s) {
    const double x = 60.0 * static_cast<double>(s);
    os << "<rect x=\"" << num(x) << "\" y=\"0\" width=\"12\" height=\"12\" fill=\"" << state_color(tr.states[s])
       << "\"/>\n<text x=\"" << num(x + 16) << "\" y=\"10\" font-size=\"11\">" << escape(tr.states[s]) << "</text>\n";
  }
  os << "</g>\n";
  return os.str();
}

}  // namespace detail

/// Pie lattice for one snapshot.
inline std::string render_pie_lattice(const SimTrace& tr, std::size_t snap, const PieOptions& opt = {}) {
  if (snap >= tr.snapshots.size()) throw RenderError("snapshot index out of range");
  const double pw = detail::pie_panel_width(tr.width), ph = detail::pie_panel_height(tr.height);
  std::ostringstream os;
  os << document_open(std::max(pw, 200.0), ph + 24.0);
  os << detail::pie_panel(tr, snap, opt, 0.0, 0.0);
  os << detail::state_legend(tr, 30.0, ph);
  os << kDocumentClose;
  return os.str();
}

/// Snapshot indices nearest to each requested time.
inline std::vector<std::size_t> select_snapshots(const SimTrace& tr, const std::vector<double>& times) {
  if (tr.snapshots.empty()) throw RenderError("trace has no snapshots");
  std::vector<std::size_t> out;
  for (double t : times) out.push_back(tr.nearest(t));
  return out;
}

/// Panels for the selected times, four per row, sharing one legend. Each
/// requested time uses the nearest recorded snapshot and is captioned with
/// that snapshot's true time.
inline std::string render_timeline(const SimTrace& tr, const std::vector<double>& times, const PieOptions& opt = {},
                                   const std::string& title = "") {
  if (times.empty()) throw RenderError("timeline needs at least one time");
  auto snaps = select_snapshots(tr, times);
  constexpr std::size_t kPerRow = 4;
  const double pw = detail::pie_panel_width(tr.width), ph = detail::pie_panel_height(tr.height);
  const std::size_t cols = std::min(kPerRow, snaps.size());
  const std::size_t rows = (snaps.size() + kPerRow - 1) / kPerRow;
  const double header = title.empty() ? 0.0 : 26.0;
  std::ostringstream os;
  os << document_open(std::max(pw * static_cast<double>(cols), 200.0), header + ph * static_cast<double>(rows) + 24.0);
  if (!title.empty())
    os << "<text x=\"10\" y=\"18\" font-size=\"15\" font-weight=\"bold\">" << escape(title) << "</text>\n";
  for (std::size_t i = 0; i < snaps.size(); ++i)
    os << detail::pie_panel(tr, snaps[i], opt, pw * static_cast<double>(i % kPerRow),
                            header + ph * static_cast<double>(i / kPerRow));
  os << detail::state_legend(tr, 30.0, header + ph * static_cast<double>(rows));
  os << kDocumentClose;
  return os.str();
}

}  // namespace netsom::svg
