#include "recsys/viz.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "recsys/errors.hpp"
#include "recsys/numfmt.hpp"

namespace recsys {

PlotKind parse_plot_kind(const std::string& name) {
  if (name == "line") return PlotKind::line;
  if (name == "scatter2d" || name == "scatter") return PlotKind::scatter2d;
  if (name == "heatmap") return PlotKind::heatmap;
  if (name == "recurrence") return PlotKind::recurrence;
  if (name == "graph") return PlotKind::graph;
  if (name == "loglog") return PlotKind::loglog;
  throw ValidateError("unknown plot kind: " + name);
}

namespace {

constexpr const char* kCategorical[] = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
};
constexpr std::size_t kCategoricalCount = 10;

std::string fmt(double x) { return format_double(x, 6); }

std::string escape_xml(const std::string& s) {
  std::string out;
  out.reserve(s.size());
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

// white -> dark blue sequential ramp (integer channels, so byte-stable)
std::string ramp_color(double v, const std::string& palette) {
  v = std::min(std::max(v, 0.0), 1.0);
  int r0 = 255, g0 = 255, b0 = 255, r1 = 8, g1 = 48, b1 = 107;
  if (palette == "grays") {
    r1 = g1 = b1 = 0;
  }
  auto channel = [v](int a, int b) {
    return static_cast<int>(std::lround(a + (b - a) * v));
  };
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", channel(r0, r1), channel(g0, g1),
                channel(b0, b1));
  return buf;
}

struct Frame {
  double px0, py0, px1, py1;  // plot area in pixels (py0 = top)
  double dx0, dx1, dy0, dy1;  // data ranges

  double sx(double x) const {
    const double t = dx1 > dx0 ? (x - dx0) / (dx1 - dx0) : 0.5;
    return px0 + t * (px1 - px0);
  }
  double sy(double y) const {
    const double t = dy1 > dy0 ? (y - dy0) / (dy1 - dy0) : 0.5;
    return py1 - t * (py1 - py0);
  }
};

void pad_range(double& lo, double& hi) {
  if (hi > lo) {
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
  } else {
    const double pad = lo == 0.0 ? 1.0 : 0.1 * std::fabs(lo);
    lo -= pad;
    hi += pad;
  }
}

std::vector<double> nice_ticks(double lo, double hi, int target = 5) {
  std::vector<double> ticks;
  const double range = hi - lo;
  if (!(range > 0.0)) return {lo};
  double step = std::pow(10.0, std::floor(std::log10(range / target)));
  if (range / step > target * 5) step *= 5;
  else if (range / step > target * 2) step *= 2;
  double t = std::ceil(lo / step) * step;
  while (t <= hi + step * 1e-9 && ticks.size() < 32) {
    ticks.push_back(t == 0.0 ? 0.0 : t);  // normalize -0
    t += step;
  }
  return ticks;
}

std::string svg_open(const PlotSpec& spec) {
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
                    std::to_string(spec.width) + "\" height=\"" +
                    std::to_string(spec.height) + "\" viewBox=\"0 0 " +
                    std::to_string(spec.width) + " " + std::to_string(spec.height) +
                    "\">\n";
  out += "<rect class=\"bg\" x=\"0\" y=\"0\" width=\"" + std::to_string(spec.width) +
         "\" height=\"" + std::to_string(spec.height) + "\" fill=\"#ffffff\"/>\n";
  if (!spec.title.empty())
    out += "<text x=\"" + fmt(spec.width / 2.0) +
           "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"15\">" +
           escape_xml(spec.title) + "</text>\n";
  return out;
}

std::string axes_with_ticks(const PlotSpec& spec, const Frame& f, bool log_x,
                            bool log_y) {
  std::string out;
  out += "<line x1=\"" + fmt(f.px0) + "\" y1=\"" + fmt(f.py1) + "\" x2=\"" + fmt(f.px1) +
         "\" y2=\"" + fmt(f.py1) + "\" stroke=\"#000000\"/>\n";
  out += "<line x1=\"" + fmt(f.px0) + "\" y1=\"" + fmt(f.py0) + "\" x2=\"" + fmt(f.px0) +
         "\" y2=\"" + fmt(f.py1) + "\" stroke=\"#000000\"/>\n";
  auto tick_label = [&](double v, bool log) {
    return log ? "1e" + fmt(v) : fmt(v);
  };
  for (double t : nice_ticks(f.dx0, f.dx1)) {
    const double x = f.sx(t);
    out += "<line x1=\"" + fmt(x) + "\" y1=\"" + fmt(f.py1) + "\" x2=\"" + fmt(x) +
           "\" y2=\"" + fmt(f.py1 + 4) + "\" stroke=\"#000000\"/>\n";
    out += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(f.py1 + 18) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
           tick_label(t, log_x) + "</text>\n";
  }
  for (double t : nice_ticks(f.dy0, f.dy1)) {
    const double y = f.sy(t);
    out += "<line x1=\"" + fmt(f.px0 - 4) + "\" y1=\"" + fmt(y) + "\" x2=\"" +
           fmt(f.px0) + "\" y2=\"" + fmt(y) + "\" stroke=\"#000000\"/>\n";
    out += "<text x=\"" + fmt(f.px0 - 7) + "\" y=\"" + fmt(y + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
           tick_label(t, log_y) + "</text>\n";
  }
  if (!spec.x_label.empty())
    out += "<text x=\"" + fmt((f.px0 + f.px1) / 2) + "\" y=\"" + fmt(f.py1 + 36) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
           escape_xml(spec.x_label) + "</text>\n";
  if (!spec.y_label.empty())
    out += "<text x=\"16\" y=\"" + fmt((f.py0 + f.py1) / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
           "transform=\"rotate(-90 16 " +
           fmt((f.py0 + f.py1) / 2) + ")\">" + escape_xml(spec.y_label) + "</text>\n";
  return out;
}

std::string legend(const Frame& f, const std::vector<Series2D>& series) {
  std::string out;
  double y = f.py0 + 12;
  for (std::size_t s = 0; s < series.size(); ++s) {
    const std::string color = kCategorical[s % kCategoricalCount];
    out += "<rect x=\"" + fmt(f.px1 + 8) + "\" y=\"" + fmt(y - 8) +
           "\" width=\"12\" height=\"12\" fill=\"" + color + "\"/>\n";
    out += "<text x=\"" + fmt(f.px1 + 24) + "\" y=\"" + fmt(y + 2) +
           "\" font-family=\"sans-serif\" font-size=\"11\">" +
           escape_xml(series[s].label) + "</text>\n";
    y += 18;
  }
  return out;
}

void validate_series(const std::vector<Series2D>& series) {
  if (series.empty()) throw ValidateError("render: empty payload");
  std::size_t points = 0;
  for (std::size_t s = 0; s < series.size(); ++s) {
    if (series[s].xs.size() != series[s].ys.size())
      throw ValidateError("render: series " + std::to_string(s) + " length mismatch");
    points += series[s].xs.size();
    for (std::size_t i = 0; i < series[s].xs.size(); ++i) {
      if (!std::isfinite(series[s].xs[i]) || !std::isfinite(series[s].ys[i]))
        throw ValidateError("render: non-finite value in series " + std::to_string(s) +
                            " at index " + std::to_string(i));
    }
  }
  if (points == 0) throw ValidateError("render: empty payload");
}

Frame make_frame(const PlotSpec& spec, double dx0, double dx1, double dy0, double dy1,
                 bool with_legend) {
  Frame f;
  f.px0 = 62;
  f.py0 = 34;
  f.px1 = spec.width - (with_legend ? 150.0 : 18.0);
  f.py1 = spec.height - 48;
  f.dx0 = dx0;
  f.dx1 = dx1;
  f.dy0 = dy0;
  f.dy1 = dy1;
  return f;
}

// compute ranges over all series, then draw
std::string render_xy(const PlotSpec& spec, const std::vector<Series2D>& series,
                      bool lines, bool log_axes, std::size_t floored_total) {
  double dx0 = series[0].xs.empty() ? 0.0 : series[0].xs[0];
  double dx1 = dx0, dy0 = 0.0, dy1 = 0.0;
  bool first = true;
  for (const Series2D& s : series) {
    for (std::size_t i = 0; i < s.xs.size(); ++i) {
      if (first) {
        dx0 = dx1 = s.xs[i];
        dy0 = dy1 = s.ys[i];
        first = false;
      }
      dx0 = std::min(dx0, s.xs[i]);
      dx1 = std::max(dx1, s.xs[i]);
      dy0 = std::min(dy0, s.ys[i]);
      dy1 = std::max(dy1, s.ys[i]);
    }
  }
  pad_range(dx0, dx1);
  pad_range(dy0, dy1);

  const bool with_legend = series.size() > 1 || !series[0].label.empty();
  Frame f = make_frame(spec, dx0, dx1, dy0, dy1, with_legend);

  std::string out = svg_open(spec);
  out += axes_with_ticks(spec, f, log_axes, log_axes);
  for (std::size_t s = 0; s < series.size(); ++s) {
    const std::string color = kCategorical[s % kCategoricalCount];
    if (lines && series[s].xs.size() > 1) {
      out += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t i = 0; i < series[s].xs.size(); ++i) {
        if (i > 0) out += ' ';
        out += fmt(f.sx(series[s].xs[i])) + "," + fmt(f.sy(series[s].ys[i]));
      }
      out += "\"/>\n";
    }
    for (std::size_t i = 0; i < series[s].xs.size(); ++i) {
      out += "<circle class=\"pt\" cx=\"" + fmt(f.sx(series[s].xs[i])) + "\" cy=\"" +
             fmt(f.sy(series[s].ys[i])) + "\" r=\"" + (lines ? "2.5" : "2") +
             "\" fill=\"" + color + "\"/>\n";
    }
  }
  if (with_legend) out += legend(f, series);
  if (floored_total > 0)
    out += "<text x=\"" + fmt(f.px0 + 6) + "\" y=\"" + fmt(f.py0 + 12) +
           "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#aa0000\">" +
           std::to_string(floored_total) + " non-positive value(s) drawn at the floor" +
           "</text>\n";
  out += "</svg>\n";
  return out;
}

}  // namespace

Series2D trace_to_series(const SeriesTrace& trace) {
  Series2D s;
  s.label = trace.label;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (trace.ok[i] && std::isfinite(trace.ys[i])) {
      s.xs.push_back(trace.xs[i]);
      s.ys.push_back(trace.ys[i]);
    }
  }
  return s;
}

Series2D cloud_to_series(const PointCloud& cloud, const std::string& label) {
  if (cloud.dim != 2) throw ValidateError("cloud_to_series: cloud must be 2-D");
  Series2D s;
  s.label = label.empty() ? cloud.source_label : label;
  for (std::size_t p = 0; p < cloud.size(); ++p) {
    s.xs.push_back(cloud.at(p, 0));
    s.ys.push_back(cloud.at(p, 1));
  }
  return s;
}

std::string render_line(const PlotSpec& spec, const std::vector<Series2D>& series) {
  validate_series(series);
  return render_xy(spec, series, true, false, 0);
}

std::string render_scatter(const PlotSpec& spec, const std::vector<Series2D>& series) {
  validate_series(series);
  return render_xy(spec, series, false, false, 0);
}

std::string render_loglog(const PlotSpec& spec, const std::vector<Series2D>& series) {
  validate_series(series);
  // positive values map to log10; everything else lands one decade below the
  // smallest positive value of its axis
  double min_pos_x = 0.0, min_pos_y = 0.0;
  bool px = false, py = false;
  for (const Series2D& s : series)
    for (std::size_t i = 0; i < s.xs.size(); ++i) {
      if (s.xs[i] > 0.0) min_pos_x = px ? std::min(min_pos_x, s.xs[i]) : (px = true, s.xs[i]);
      if (s.ys[i] > 0.0) min_pos_y = py ? std::min(min_pos_y, s.ys[i]) : (py = true, s.ys[i]);
    }
  if (!px || !py)
    throw ValidateError("render: loglog needs at least one positive value per axis");

  const double floor_x = std::log10(min_pos_x) - 1.0;
  const double floor_y = std::log10(min_pos_y) - 1.0;
  std::size_t floored = 0;
  std::vector<Series2D> transformed(series.size());
  std::vector<std::vector<char>> is_floored(series.size());
  for (std::size_t s = 0; s < series.size(); ++s) {
    transformed[s].label = series[s].label;
    for (std::size_t i = 0; i < series[s].xs.size(); ++i) {
      double lx, ly;
      bool fl = false;
      if (series[s].xs[i] > 0.0) {
        lx = std::log10(series[s].xs[i]);
      } else {
        lx = floor_x;
        fl = true;
      }
      if (series[s].ys[i] > 0.0) {
        ly = std::log10(series[s].ys[i]);
      } else {
        ly = floor_y;
        fl = true;
      }
      transformed[s].xs.push_back(lx);
      transformed[s].ys.push_back(ly);
      is_floored[s].push_back(fl);
      if (fl) ++floored;
    }
  }
  std::string out = render_xy(spec, transformed, false, true, floored);
  if (floored > 0) {
    // re-tag floored points with a distinguishing marker drawn on top
    // (cheap: append crosses; the underlying circles keep the count honest)
    std::string marks;
    double dx0 = 0, dx1 = 0, dy0 = 0, dy1 = 0;
    bool first = true;
    for (const Series2D& s : transformed)
      for (std::size_t i = 0; i < s.xs.size(); ++i) {
        if (first) {
          dx0 = dx1 = s.xs[i];
          dy0 = dy1 = s.ys[i];
          first = false;
        }
        dx0 = std::min(dx0, s.xs[i]);
        dx1 = std::max(dx1, s.xs[i]);
        dy0 = std::min(dy0, s.ys[i]);
        dy1 = std::max(dy1, s.ys[i]);
      }
    pad_range(dx0, dx1);
    pad_range(dy0, dy1);
    const bool with_legend = series.size() > 1 || !series[0].label.empty();
    Frame f = make_frame(spec, dx0, dx1, dy0, dy1, with_legend);
    for (std::size_t s = 0; s < transformed.size(); ++s)
      for (std::size_t i = 0; i < transformed[s].xs.size(); ++i)
        if (is_floored[s][i]) {
          const double cx = f.sx(transformed[s].xs[i]);
          const double cy = f.sy(transformed[s].ys[i]);
          marks += "<path class=\"floored\" d=\"M" + fmt(cx - 3) + " " + fmt(cy - 3) +
                   " L" + fmt(cx + 3) + " " + fmt(cy + 3) + " M" + fmt(cx - 3) + " " +
                   fmt(cy + 3) + " L" + fmt(cx + 3) + " " + fmt(cy - 3) +
                   "\" stroke=\"#aa0000\" stroke-width=\"1\"/>\n";
        }
    out.insert(out.size() - 7, marks);  // before "</svg>\n"
  }
  return out;
}

std::string render_heatmap(const PlotSpec& spec, const DenseGrid& grid) {
  if (grid.n == 0 || grid.values.size() != grid.n * grid.n)
    throw ValidateError("render: heatmap grid empty or ragged");
  std::size_t clamped = 0;
  for (std::size_t i = 0; i < grid.values.size(); ++i) {
    if (!std::isfinite(grid.values[i]))
      throw ValidateError("render: non-finite heatmap value at index " + std::to_string(i));
    if (grid.values[i] < 0.0 || grid.values[i] > 1.0) ++clamped;
  }

  const std::string palette = spec.palette.empty() ? "blues" : spec.palette;
  const double area = std::min(spec.width - 140.0, spec.height - 90.0);
  const double cell = area / static_cast<double>(grid.n);
  const double ox = 62, oy = 40;

  std::string out = svg_open(spec);
  for (std::size_t r = 0; r < grid.n; ++r)
    for (std::size_t c = 0; c < grid.n; ++c) {
      out += "<rect class=\"cell\" x=\"" + fmt(ox + c * cell) + "\" y=\"" +
             fmt(oy + r * cell) + "\" width=\"" + fmt(cell) + "\" height=\"" + fmt(cell) +
             "\" fill=\"" + ramp_color(grid.at(r, c), palette) + "\"/>\n";
    }
  // color legend: discrete ramp bar, min at bottom
  const double lx = ox + area + 18, ly = oy, lh = area;
  const int steps = 10;
  for (int i = 0; i < steps; ++i) {
    const double v = 1.0 - (i + 0.5) / steps;
    out += "<rect x=\"" + fmt(lx) + "\" y=\"" + fmt(ly + i * lh / steps) +
           "\" width=\"14\" height=\"" + fmt(lh / steps) + "\" fill=\"" +
           ramp_color(v, palette) + "\"/>\n";
  }
  out += "<text x=\"" + fmt(lx + 18) + "\" y=\"" + fmt(ly + 10) +
         "\" font-family=\"sans-serif\" font-size=\"11\">1</text>\n";
  out += "<text x=\"" + fmt(lx + 18) + "\" y=\"" + fmt(ly + lh) +
         "\" font-family=\"sans-serif\" font-size=\"11\">0</text>\n";
  if (clamped > 0)
    out += "<text x=\"" + fmt(ox) + "\" y=\"" + fmt(oy + area + 16) +
           "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#aa0000\">" +
           std::to_string(clamped) + " value(s) outside [0,1] clamped</text>\n";
  out += "</svg>\n";
  return out;
}

std::string render_recurrence(const PlotSpec& spec, const RecurrenceGrid& grid) {
  if (grid.n == 0) throw ValidateError("render: empty recurrence grid");
  const double area = std::min(spec.width - 90.0, spec.height - 90.0);
  const double cell = area / static_cast<double>(grid.n);
  const double ox = 62, oy = 40;

  std::string out = svg_open(spec);
  out += "<rect x=\"" + fmt(ox) + "\" y=\"" + fmt(oy) + "\" width=\"" + fmt(area) +
         "\" height=\"" + fmt(area) + "\" fill=\"#ffffff\" stroke=\"#000000\"/>\n";
  for (std::size_t x = 0; x < grid.n; ++x)
    for (std::size_t y = 0; y < grid.n; ++y)
      if (grid.at(x, y)) {
        // row x on the vertical axis, origin at the bottom-left
        out += "<rect class=\"cell\" x=\"" + fmt(ox + y * cell) + "\" y=\"" +
               fmt(oy + (grid.n - 1 - x) * cell) + "\" width=\"" + fmt(cell) +
               "\" height=\"" + fmt(cell) + "\" fill=\"#000000\"/>\n";
      }
  out += "</svg>\n";
  return out;
}

std::string render_graph(const PlotSpec& spec, const GraphScene& scene) {
  const SimilarityGraph& g = scene.graph;
  if (g.node_count == 0) throw ValidateError("render: empty graph");
  if (scene.positions.xy.size() != 2 * g.node_count)
    throw ValidateError("render: layout does not match the graph");
  if (!scene.communities.empty() && scene.communities.size() != g.node_count)
    throw ValidateError("render: communities do not match the graph");
  for (std::size_t i = 0; i < scene.positions.xy.size(); ++i)
    if (!std::isfinite(scene.positions.xy[i]))
      throw ValidateError("render: non-finite layout coordinate at index " +
                          std::to_string(i));

  double dx0 = scene.positions.xy[0], dx1 = dx0;
  double dy0 = scene.positions.xy[1], dy1 = dy0;
  for (std::size_t v = 0; v < g.node_count; ++v) {
    dx0 = std::min(dx0, scene.positions.xy[2 * v]);
    dx1 = std::max(dx1, scene.positions.xy[2 * v]);
    dy0 = std::min(dy0, scene.positions.xy[2 * v + 1]);
    dy1 = std::max(dy1, scene.positions.xy[2 * v + 1]);
  }
  pad_range(dx0, dx1);
  pad_range(dy0, dy1);
  Frame f = make_frame(spec, dx0, dx1, dy0, dy1, false);

  std::size_t max_radius = 1;
  for (std::size_t r : g.radius) max_radius = std::max(max_radius, r);

  std::string out = svg_open(spec);
  for (const auto& e : g.edges) {
    out += "<line class=\"edge\" x1=\"" + fmt(f.sx(scene.positions.xy[2 * e.a])) +
           "\" y1=\"" + fmt(f.sy(scene.positions.xy[2 * e.a + 1])) + "\" x2=\"" +
           fmt(f.sx(scene.positions.xy[2 * e.b])) + "\" y2=\"" +
           fmt(f.sy(scene.positions.xy[2 * e.b + 1])) +
           "\" stroke=\"#bbbbbb\" stroke-width=\"0.6\"/>\n";
  }
  for (std::size_t v = 0; v < g.node_count; ++v) {
    const std::string color =
        scene.communities.empty()
            ? std::string("#1f77b4")
            : std::string(kCategorical[scene.communities[v] % kCategoricalCount]);
    const double r =
        2.0 + 5.0 * static_cast<double>(g.radius[v]) / static_cast<double>(max_radius);
    out += "<circle class=\"node\" cx=\"" + fmt(f.sx(scene.positions.xy[2 * v])) +
           "\" cy=\"" + fmt(f.sy(scene.positions.xy[2 * v + 1])) + "\" r=\"" + fmt(r) +
           "\" fill=\"" + color + "\" stroke=\"#333333\" stroke-width=\"0.4\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

std::string render_projections(const PlotSpec& spec, const PointCloud& cloud) {
  if (cloud.dim != 3) throw ValidateError("render_projections: cloud must be 3-D");
  const Plane planes[] = {Plane::xy, Plane::xz, Plane::yz};
  PlotSpec panel = spec;
  panel.width = spec.width;
  panel.height = spec.height;
  std::string out =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
      std::to_string(3 * spec.width) + "\" height=\"" + std::to_string(spec.height) +
      "\" viewBox=\"0 0 " + std::to_string(3 * spec.width) + " " +
      std::to_string(spec.height) + "\">\n";
  for (int p = 0; p < 3; ++p) {
    const PointCloud proj = project_3d_to_2d(cloud, planes[p]);
    panel.title = spec.title + " (" + plane_name(planes[p]) + ")";
    std::string inner = render_scatter(panel, {cloud_to_series(proj, proj.source_label)});
    // strip the inner <svg ...> wrapper and retarget into a group
    const std::size_t open_end = inner.find(">\n");
    const std::size_t close = inner.rfind("</svg>");
    out += "<g transform=\"translate(" + std::to_string(p * spec.width) + " 0)\">\n";
    out += inner.substr(open_end + 2, close - open_end - 2);
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

std::string render(const PlotSpec& spec, const PlotPayload& payload) {
  switch (spec.kind) {
    case PlotKind::line:
      if (const auto* s = std::get_if<std::vector<Series2D>>(&payload))
        return render_line(spec, *s);
      break;
    case PlotKind::scatter2d:
      if (const auto* s = std::get_if<std::vector<Series2D>>(&payload))
        return render_scatter(spec, *s);
      break;
    case PlotKind::loglog:
      if (const auto* s = std::get_if<std::vector<Series2D>>(&payload))
        return render_loglog(spec, *s);
      break;
    case PlotKind::heatmap:
      if (const auto* grid = std::get_if<DenseGrid>(&payload))
        return render_heatmap(spec, *grid);
      break;
    case PlotKind::recurrence:
      if (const auto* grid = std::get_if<RecurrenceGrid>(&payload))
        return render_recurrence(spec, *grid);
      break;
    case PlotKind::graph:
      if (const auto* scene = std::get_if<GraphScene>(&payload))
        return render_graph(spec, *scene);
      break;
  }
  throw ValidateError("render: payload does not match the plot kind");
}

}  // namespace recsys
