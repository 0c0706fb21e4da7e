#pragma once

#include <string>
#include <string_view>

namespace recsys {

// Locale-independent float formatting (std::to_chars underneath). All file
// outputs go through these so byte-level reproducibility does not depend on
// the process locale.
std::string format_double(double x, int significant_digits);
std::string format_double(double x);  // shortest round-trip form
std::string format_fixed(double x, int decimals);

std::string read_file(const std::string& path);              // throws IoError
void write_file(const std::string& path, std::string_view);  // throws IoError

}  // namespace recsys
