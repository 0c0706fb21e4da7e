#pragma once

#include <string>
#include <variant>
#include <vector>

#include "recsys/embedding.hpp"
#include "recsys/graph.hpp"
#include "recsys/recurrence.hpp"
#include "recsys/similarity.hpp"
#include "recsys/trace.hpp"

namespace recsys {

enum class PlotKind { line, scatter2d, heatmap, recurrence, graph, loglog };

PlotKind parse_plot_kind(const std::string& name);

/// Finite points only; traces drop their missing grid points on conversion.
struct Series2D {
  std::string label;
  std::vector<double> xs;
  std::vector<double> ys;
};

struct GraphScene {
  SimilarityGraph graph;
  LayoutResult positions;
  std::vector<std::uint32_t> communities;  // empty = uncolored
};

struct PlotSpec {
  PlotKind kind = PlotKind::line;
  std::string title;
  std::string x_label;
  std::string y_label;
  int width = 800;
  int height = 600;
  std::string palette;  // "" = kind default
};

using PlotPayload = std::variant<std::vector<Series2D>, DenseGrid, RecurrenceGrid, GraphScene>;

/// Deterministic, self-contained SVG 1.1; floats at 6 significant digits, no
/// timestamps. One rendered element per payload point (circles class "pt",
/// cells class "cell", nodes/edges class "node"/"edge"). Throws
/// ValidateError on an empty payload, non-finite values (reports the index)
/// or a payload that does not match the plot kind.
std::string render(const PlotSpec&, const PlotPayload&);

std::string render_line(const PlotSpec&, const std::vector<Series2D>&);
std::string render_scatter(const PlotSpec&, const std::vector<Series2D>&);
/// Log-log scatter; points with a non-positive coordinate are drawn at a
/// floor one decade below the smallest positive value, marked class
/// "floored" with an annotation.
std::string render_loglog(const PlotSpec&, const std::vector<Series2D>&);
std::string render_heatmap(const PlotSpec&, const DenseGrid&);
std::string render_recurrence(const PlotSpec&, const RecurrenceGrid&);
std::string render_graph(const PlotSpec&, const GraphScene&);

/// Three side-by-side 2-D projections (xy, xz, yz) of a 3-D cloud.
std::string render_projections(const PlotSpec&, const PointCloud&);

Series2D cloud_to_series(const PointCloud&, const std::string& label = "");
Series2D trace_to_series(const SeriesTrace&);

}  // namespace recsys
