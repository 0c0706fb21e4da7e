#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "recsys/trace.hpp"

namespace recsys {

/// n x n binary recurrence structure of a series: bit(x,y) = 1 iff
/// |T(x) - T(y)| < epsilon (strict, so equality at exactly epsilon maps
/// to 0). Symmetric with unit diagonal.
struct RecurrenceGrid {
  std::size_t n = 0;
  std::vector<std::uint8_t> bits;  // row-major n*n
  double epsilon = 0.0;
  std::string source_label;

  bool at(std::size_t x, std::size_t y) const { return bits[x * n + y] != 0; }
};

/// OpenMP kernel (one row per task) with a bitwise-identical serial twin.
RecurrenceGrid recurrence_plot(const SeriesTrace&, double epsilon);
RecurrenceGrid recurrence_plot_serial(const SeriesTrace&, double epsilon);

/// fraction * (max - min) of the series; errors on a constant series.
double epsilon_from_fraction(const SeriesTrace&, double fraction);
inline constexpr double default_epsilon_fraction = 0.1;

/// Fraction of ones in the grid, in [1/n, 1].
double recurrence_rate(const RecurrenceGrid&);

/// Plain-text P1 bitmap, 1 = black = recurrent; byte-exact golden format.
std::string to_pgm(const RecurrenceGrid&);
void write_pgm(const RecurrenceGrid&, const std::string& path);
RecurrenceGrid parse_pgm(const std::string& content, const std::string& label = "");
RecurrenceGrid read_pgm(const std::string& path, const std::string& label = "");

}  // namespace recsys
