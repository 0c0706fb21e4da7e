#include "recsys/manifest.hpp"

#include <openssl/evp.h>

#include <algorithm>

#include "recsys/errors.hpp"
#include "recsys/numfmt.hpp"

namespace recsys {

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw ComputeError("sha256 digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xf];
  }
  return out;
}

std::string sha256_file(const std::string& path) { return sha256_hex(read_file(path)); }

void RunManifest::record_input(const std::string& path) {
  inputs.emplace_back(path, sha256_file(path));
}

void RunManifest::record_output(const std::string& path) {
  outputs.emplace_back(path, sha256_file(path));
}

std::string to_manifest_json(const RunManifest& manifest) {
  nlohmann::json j;
  j["toolkit"] = kToolkitName;
  j["version"] = kToolkitVersion;
  j["command_line"] = manifest.command_line;
  j["subcommand"] = manifest.subcommand;
  j["config"] = manifest.config;
  j["seeds"] = manifest.seeds;
  auto files = [](const std::vector<std::pair<std::string, std::string>>& v) {
    nlohmann::json arr = nlohmann::json::array();
    auto sorted = v;
    std::sort(sorted.begin(), sorted.end());
    for (const auto& [path, digest] : sorted)
      arr.push_back({{"path", path}, {"sha256", digest}});
    return arr;
  };
  j["inputs"] = files(manifest.inputs);
  j["outputs"] = files(manifest.outputs);
  j["duration_seconds"] = manifest.duration_seconds;
  return j.dump(2) + "\n";
}

void write_manifest(const RunManifest& manifest, const std::string& path) {
  write_file(path, to_manifest_json(manifest));
}

}  // namespace recsys
