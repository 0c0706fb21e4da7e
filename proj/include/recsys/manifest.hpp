#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace recsys {

inline constexpr const char* kToolkitName = "recsys-lens";
inline constexpr const char* kToolkitVersion = "0.1.0";

std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::string& path);

/// Reproducibility record written next to every invocation's outputs:
/// the command line, the fully resolved configuration, every seed, and
/// input/output digests. Re-running the same command on the same inputs
/// reproduces the recorded output digests (duration aside).
struct RunManifest {
  std::string command_line;
  std::string subcommand;
  nlohmann::json config;
  std::vector<std::uint64_t> seeds;
  std::vector<std::pair<std::string, std::string>> inputs;   // (path, sha256)
  std::vector<std::pair<std::string, std::string>> outputs;  // (path, sha256)
  double duration_seconds = 0.0;

  void record_input(const std::string& path);
  void record_output(const std::string& path);
};

std::string to_manifest_json(const RunManifest&);
void write_manifest(const RunManifest&, const std::string& path);

}  // namespace recsys
