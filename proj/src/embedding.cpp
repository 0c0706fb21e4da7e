#include "recsys/embedding.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "recsys/errors.hpp"
#include "recsys/numfmt.hpp"
#include "recsys/threads.hpp"

namespace recsys {

PointCloud takens_embed(const SeriesTrace& series, std::size_t dim, std::size_t tau) {
  if (dim < 1) throw ValidateError("takens_embed: dimension must be >= 1");
  if (tau < 1) throw ValidateError("takens_embed: delay must be >= 1");
  if (!series.complete())
    throw ValidateError("takens_embed: series has missing or non-finite values");
  const std::size_t len = series.size();
  const std::size_t reach = (dim - 1) * tau;
  if (len < reach + 1)
    throw ValidateError("takens_embed: series of length " + std::to_string(len) +
                        " too short for dim " + std::to_string(dim) + ", tau " +
                        std::to_string(tau));

  PointCloud cloud;
  cloud.dim = dim;
  cloud.tau = tau;
  cloud.origin_len = len;
  cloud.source_label = series.label;
  const std::size_t count = len - reach;
  cloud.points.reserve(count * dim);
  for (std::size_t t = 0; t < count; ++t)
    for (std::size_t d = 0; d < dim; ++d) cloud.points.push_back(series.ys[t + d * tau]);
  return cloud;
}

namespace {

double sq_dist(const PointCloud& c, std::size_t p, std::size_t q) {
  double s = 0.0;
  for (std::size_t d = 0; d < c.dim; ++d) {
    const double diff = c.at(p, d) - c.at(q, d);
    s += diff * diff;
  }
  return s;
}

}  // namespace

double cloud_diameter_serial(const PointCloud& cloud) {
  const std::size_t n = cloud.size();
  double best = 0.0;
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = p + 1; q < n; ++q) best = std::max(best, sq_dist(cloud, p, q));
  return std::sqrt(best);
}

CloudStats cloud_stats(const PointCloud& cloud) {
  const std::size_t n = cloud.size();
  if (n == 0) throw ValidateError("cloud_stats: empty cloud");

  CloudStats stats;
  stats.span.assign(cloud.dim, 0.0);
  stats.centroid.assign(cloud.dim, 0.0);
  std::vector<double> lo(cloud.dim, cloud.points[0]), hi(cloud.dim, cloud.points[0]);
  for (std::size_t d = 0; d < cloud.dim; ++d) lo[d] = hi[d] = cloud.at(0, d);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t d = 0; d < cloud.dim; ++d) {
      const double v = cloud.at(p, d);
      lo[d] = std::min(lo[d], v);
      hi[d] = std::max(hi[d], v);
      stats.centroid[d] += v;
    }
  }
  double bbox_diag_sq = 0.0;
  for (std::size_t d = 0; d < cloud.dim; ++d) {
    stats.span[d] = hi[d] - lo[d];
    stats.centroid[d] /= static_cast<double>(n);
    bbox_diag_sq += stats.span[d] * stats.span[d];
  }

  if (n > diameter_exact_limit) {
    stats.diameter = std::sqrt(bbox_diag_sq);
    stats.approximate = true;
    return stats;
  }

  double best = 0.0;
#pragma omp parallel for schedule(dynamic, 64) reduction(max : best) \
    num_threads(configured_threads())
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = p + 1; q < n; ++q) best = std::max(best, sq_dist(cloud, p, q));
  stats.diameter = std::sqrt(best);
  return stats;
}

Plane parse_plane(const std::string& name) {
  if (name == "xy") return Plane::xy;
  if (name == "xz") return Plane::xz;
  if (name == "yz") return Plane::yz;
  throw ValidateError("unknown projection plane: " + name);
}

std::string plane_name(Plane plane) {
  switch (plane) {
    case Plane::xy: return "xy";
    case Plane::xz: return "xz";
    case Plane::yz: return "yz";
  }
  return "?";
}

PointCloud project_3d_to_2d(const PointCloud& cloud, Plane plane) {
  if (cloud.dim != 3) throw ValidateError("project_3d_to_2d: cloud must be 3-D");
  std::size_t a = 0, b = 1;
  switch (plane) {
    case Plane::xy: a = 0; b = 1; break;
    case Plane::xz: a = 0; b = 2; break;
    case Plane::yz: a = 1; b = 2; break;
  }
  PointCloud out;
  out.dim = 2;
  out.tau = cloud.tau;
  out.origin_len = cloud.origin_len;
  out.source_label = cloud.source_label + "_" + plane_name(plane);
  out.points.reserve(cloud.size() * 2);
  for (std::size_t p = 0; p < cloud.size(); ++p) {
    out.points.push_back(cloud.at(p, a));
    out.points.push_back(cloud.at(p, b));
  }
  return out;
}

std::string to_cloud_csv(const PointCloud& cloud) {
  if (cloud.dim != 2 && cloud.dim != 3)
    throw ValidateError("cloud CSV supports 2-D and 3-D clouds");
  std::string out = cloud.dim == 2 ? "x,y\n" : "x,y,z\n";
  for (std::size_t p = 0; p < cloud.size(); ++p) {
    for (std::size_t d = 0; d < cloud.dim; ++d) {
      if (d > 0) out += ',';
      out += format_double(cloud.at(p, d), 17);
    }
    out += '\n';
  }
  return out;
}

void write_cloud_csv(const PointCloud& cloud, const std::string& path) {
  write_file(path, to_cloud_csv(cloud));
}

PointCloud parse_cloud_csv(const std::string& content, const std::string& label) {
  std::istringstream in(content);
  std::string line;
  PointCloud cloud;
  cloud.source_label = label;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (header) {
      cloud.dim = line == "x,y,z" ? 3 : 2;
      if (line != "x,y" && line != "x,y,z")
        throw ParseError("cloud CSV: unexpected header: " + line);
      header = false;
      continue;
    }
    if (line.empty()) continue;
    const char* p = line.data();
    const char* end = p + line.size();
    for (std::size_t d = 0; d < cloud.dim; ++d) {
      double v;
      auto r = std::from_chars(p, end, v);
      if (r.ec != std::errc()) throw ParseError("cloud CSV: bad row: " + line);
      cloud.points.push_back(v);
      p = r.ptr;
      if (d + 1 < cloud.dim) {
        if (p == end || *p != ',') throw ParseError("cloud CSV: bad row: " + line);
        ++p;
      }
    }
  }
  if (cloud.points.empty()) throw ParseError("cloud CSV: no data rows");
  cloud.origin_len = cloud.size();
  cloud.tau = 1;
  return cloud;
}

PointCloud read_cloud_csv(const std::string& path, const std::string& label) {
  return parse_cloud_csv(read_file(path), label.empty() ? path : label);
}

std::string to_stats_json(const CloudStats& stats) {
  std::string out = "{\n  \"diameter\": " + format_double(stats.diameter, 17);
  out += ",\n  \"approximate\": ";
  out += stats.approximate ? "true" : "false";
  auto dump = [&](const char* name, const std::vector<double>& values) {
    out += ",\n  \"";
    out += name;
    out += "\": [";
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i > 0) out += ", ";
      out += format_double(values[i], 17);
    }
    out += "]";
  };
  dump("span", stats.span);
  dump("centroid", stats.centroid);
  out += "\n}\n";
  return out;
}

}  // namespace recsys
