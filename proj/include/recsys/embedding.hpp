#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "recsys/trace.hpp"

namespace recsys {

/// d-dimensional points from delayed copies of a scalar series, row-major.
struct PointCloud {
  std::size_t dim = 0;
  std::vector<double> points;  // size() * dim coordinates
  std::string source_label;
  std::size_t tau = 0;
  std::size_t origin_len = 0;

  std::size_t size() const { return dim == 0 ? 0 : points.size() / dim; }
  double at(std::size_t p, std::size_t axis) const { return points[p * dim + axis]; }
};

/// Point t = (y_t, y_{t+tau}, ..., y_{t+(d-1)tau}); the series must be
/// complete (no missing grid points) and long enough for (d, tau).
PointCloud takens_embed(const SeriesTrace& series, std::size_t dim, std::size_t tau);

struct CloudStats {
  double diameter = 0.0;
  std::vector<double> span;      // per-axis max - min
  std::vector<double> centroid;  // coordinate-wise mean
  bool approximate = false;      // true when the pairwise scan was skipped
};

/// Exact O(N^2) diameter up to diameter_exact_limit points (OpenMP over
/// rows); above that the bounding-box diagonal is reported and flagged
/// approximate.
CloudStats cloud_stats(const PointCloud&);
inline constexpr std::size_t diameter_exact_limit = 10000;

/// Serial reference for the pairwise diameter scan.
double cloud_diameter_serial(const PointCloud&);

enum class Plane { xy, xz, yz };
Plane parse_plane(const std::string& name);
std::string plane_name(Plane);

/// Drop the omitted coordinate of a 3-D cloud.
PointCloud project_3d_to_2d(const PointCloud&, Plane plane);

std::string to_cloud_csv(const PointCloud&);  // header x,y or x,y,z
void write_cloud_csv(const PointCloud&, const std::string& path);
PointCloud parse_cloud_csv(const std::string& content, const std::string& label = "");
PointCloud read_cloud_csv(const std::string& path, const std::string& label = "");
std::string to_stats_json(const CloudStats&);

}  // namespace recsys
