#include "recsys/numfmt.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "recsys/errors.hpp"

namespace recsys {

namespace {

std::string to_chars_str(double x, std::chars_format fmt, int precision) {
  char buf[64];
  std::to_chars_result r =
      precision < 0 ? std::to_chars(buf, buf + sizeof buf, x)
                    : std::to_chars(buf, buf + sizeof buf, x, fmt, precision);
  return std::string(buf, r.ptr);
}

}  // namespace

std::string format_double(double x, int significant_digits) {
  return to_chars_str(x, std::chars_format::general, significant_digits);
}

std::string format_double(double x) {
  return to_chars_str(x, std::chars_format::general, -1);
}

std::string format_fixed(double x, int decimals) {
  return to_chars_str(x, std::chars_format::fixed, decimals);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path);
  return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace recsys
