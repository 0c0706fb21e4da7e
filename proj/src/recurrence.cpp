#include "recsys/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "recsys/errors.hpp"
#include "recsys/numfmt.hpp"
#include "recsys/threads.hpp"

namespace recsys {

namespace {

RecurrenceGrid make_grid(const SeriesTrace& series, double epsilon) {
  if (!(epsilon > 0.0)) throw ValidateError("recurrence_plot: epsilon must be positive");
  if (!series.complete())
    throw ValidateError("recurrence_plot: series has missing or non-finite values");
  RecurrenceGrid grid;
  grid.n = series.size();
  grid.epsilon = epsilon;
  grid.source_label = series.label;
  grid.bits.assign(grid.n * grid.n, 0);
  return grid;
}

inline void fill_row(RecurrenceGrid& grid, const std::vector<double>& ys, std::size_t x) {
  const double vx = ys[x];
  std::uint8_t* row = grid.bits.data() + x * grid.n;
  for (std::size_t y = 0; y < grid.n; ++y)
    row[y] = std::fabs(vx - ys[y]) < grid.epsilon ? 1 : 0;
}

}  // namespace

RecurrenceGrid recurrence_plot(const SeriesTrace& series, double epsilon) {
  RecurrenceGrid grid = make_grid(series, epsilon);
#pragma omp parallel for schedule(static) num_threads(configured_threads())
  for (std::size_t x = 0; x < grid.n; ++x) fill_row(grid, series.ys, x);
  return grid;
}

RecurrenceGrid recurrence_plot_serial(const SeriesTrace& series, double epsilon) {
  RecurrenceGrid grid = make_grid(series, epsilon);
  for (std::size_t x = 0; x < grid.n; ++x) fill_row(grid, series.ys, x);
  return grid;
}

double epsilon_from_fraction(const SeriesTrace& series, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0))
    throw ValidateError("epsilon_from_fraction: fraction must lie in (0,1]");
  if (!series.complete())
    throw ValidateError("epsilon_from_fraction: series has missing values");
  const auto [lo, hi] = std::minmax_element(series.ys.begin(), series.ys.end());
  const double range = *hi - *lo;
  if (range <= 0.0)
    throw ValidateError(
        "epsilon_from_fraction: constant series has zero range; pass epsilon "
        "explicitly");
  return fraction * range;
}

double recurrence_rate(const RecurrenceGrid& grid) {
  if (grid.n == 0) throw ValidateError("recurrence_rate: empty grid");
  std::size_t ones = 0;
  for (std::uint8_t b : grid.bits) ones += b;
  return static_cast<double>(ones) / static_cast<double>(grid.n * grid.n);
}

std::string to_pgm(const RecurrenceGrid& grid) {
  std::string out = "P1\n";
  out += std::to_string(grid.n) + " " + std::to_string(grid.n) + "\n";
  for (std::size_t x = 0; x < grid.n; ++x) {
    for (std::size_t y = 0; y < grid.n; ++y) {
      if (y > 0) out += ' ';
      out += grid.at(x, y) ? '1' : '0';
    }
    out += '\n';
  }
  return out;
}

void write_pgm(const RecurrenceGrid& grid, const std::string& path) {
  write_file(path, to_pgm(grid));
}

RecurrenceGrid parse_pgm(const std::string& content, const std::string& label) {
  std::istringstream in(content);
  std::string magic;
  in >> magic;
  if (magic != "P1") throw ParseError("bitmap: expected P1 magic");
  std::size_t w = 0, h = 0;
  in >> w >> h;
  if (w == 0 || w != h) throw ParseError("bitmap: expected a square grid");
  RecurrenceGrid grid;
  grid.n = w;
  grid.source_label = label;
  grid.bits.resize(w * h);
  for (std::size_t i = 0; i < w * h; ++i) {
    int bit;
    if (!(in >> bit) || (bit != 0 && bit != 1))
      throw ParseError("bitmap: bad cell value");
    grid.bits[i] = static_cast<std::uint8_t>(bit);
  }
  return grid;
}

RecurrenceGrid read_pgm(const std::string& path, const std::string& label) {
  return parse_pgm(read_file(path), label.empty() ? path : label);
}

}  // namespace recsys
