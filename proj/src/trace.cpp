#include "recsys/trace.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "recsys/errors.hpp"
#include "recsys/numfmt.hpp"

namespace recsys {

bool SeriesTrace::complete() const {
  for (std::size_t i = 0; i < ys.size(); ++i)
    if (!ok[i] || !std::isfinite(ys[i])) return false;
  return !ys.empty();
}

void SeriesTrace::push(double x, double y) {
  xs.push_back(x);
  ys.push_back(y);
  ok.push_back(1);
}

void SeriesTrace::push_missing(double x) {
  xs.push_back(x);
  ys.push_back(std::numeric_limits<double>::quiet_NaN());
  ok.push_back(0);
}

std::string to_trace_csv(const SeriesTrace& trace) {
  std::string out = "x,mae\n";
  for (std::size_t i = 0; i < trace.size(); ++i) {
    out += format_double(trace.xs[i], 17);
    out += ',';
    if (trace.ok[i]) out += format_double(trace.ys[i], 17);
    out += '\n';
  }
  return out;
}

void write_trace_csv(const SeriesTrace& trace, const std::string& path) {
  write_file(path, to_trace_csv(trace));
}

SeriesTrace parse_trace_csv(const std::string& content, const std::string& label) {
  SeriesTrace trace;
  trace.label = label;
  std::istringstream in(content);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (header) {
      header = false;
      continue;
    }
    if (line.empty()) continue;
    std::size_t comma = line.find(',');
    if (comma == std::string::npos) throw ParseError("trace CSV: missing comma: " + line);
    double x;
    auto rx = std::from_chars(line.data(), line.data() + comma, x);
    if (rx.ec != std::errc() || rx.ptr != line.data() + comma)
      throw ParseError("trace CSV: bad x value: " + line);
    std::string yfield = line.substr(comma + 1);
    if (yfield.empty()) {
      trace.push_missing(x);
    } else {
      double y;
      auto ry = std::from_chars(yfield.data(), yfield.data() + yfield.size(), y);
      if (ry.ec != std::errc() || ry.ptr != yfield.data() + yfield.size())
        throw ParseError("trace CSV: bad mae value: " + line);
      trace.push(x, y);
    }
  }
  if (trace.size() == 0) throw ParseError("trace CSV: no data rows");
  return trace;
}

SeriesTrace read_trace_csv(const std::string& path, const std::string& label) {
  return parse_trace_csv(read_file(path), label.empty() ? path : label);
}

}  // namespace recsys
