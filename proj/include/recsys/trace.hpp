#pragma once

#include <string>
#include <vector>

namespace recsys {

/// Ordered 1-D series of MAE values over a hyperparameter grid or checkpoint
/// schedule. A point whose training failed is kept on the x grid with
/// ok=false and a NaN y (CSV: empty field).
struct SeriesTrace {
  std::string label;
  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<char> ok;  // parallel to ys

  std::size_t size() const { return xs.size(); }
  bool complete() const;  // every point present and finite
  void push(double x, double y);
  void push_missing(double x);
};

std::string to_trace_csv(const SeriesTrace&);  // header `x,mae`
void write_trace_csv(const SeriesTrace&, const std::string& path);
SeriesTrace read_trace_csv(const std::string& path, const std::string& label = "");
SeriesTrace parse_trace_csv(const std::string& content, const std::string& label = "");

}  // namespace recsys
