// Generates the bundled mini dataset: ~100 users x 200 items, item
// popularity Zipf(1.0), ratings correlated with popularity plus a per-user
// bias. Deterministic for a fixed seed; data/mini.tsv in the repo is the
// output of the default invocation.
#include <cmath>
#include <cstdint>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "recsys/numfmt.hpp"
#include "recsys/prng.hpp"

namespace {

constexpr std::size_t kUsers = 100;
constexpr std::size_t kItems = 200;
constexpr std::size_t kDraws = 5000;
constexpr std::uint64_t kDefaultSeed = 20240501;

std::size_t zipf_pick(const std::vector<double>& cdf, double u01) {
  std::size_t lo = 0, hi = cdf.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (cdf[mid] < u01)
      lo = mid + 1;
    else
      hi = mid;
  }
  return lo;
}

}  // namespace

int main(int argc, char** argv) {
  std::string out_path = "data/mini.tsv";
  std::uint64_t seed = kDefaultSeed;
  if (argc > 1) out_path = argv[1];
  if (argc > 2) seed = std::stoull(argv[2]);

  recsys::Rng rng(seed);

  std::vector<double> cdf(kItems);
  double total = 0.0;
  for (std::size_t j = 0; j < kItems; ++j) {
    total += 1.0 / static_cast<double>(j + 1);
    cdf[j] = total;
  }
  for (double& c : cdf) c /= total;

  std::vector<double> user_bias(kUsers);
  for (double& b : user_bias) b = rng.uniform(-0.4, 0.4);

  std::set<std::pair<std::size_t, std::size_t>> seen;
  std::string out;
  std::size_t kept = 0;
  for (std::size_t t = 0; t < kDraws; ++t) {
    const std::size_t u = rng.bounded(kUsers);
    const std::size_t j = zipf_pick(cdf, rng.uniform01());
    const double noise = rng.uniform(-0.7, 0.7);
    if (!seen.insert({u, j}).second) continue;
    const double rank_frac = static_cast<double>(j) / static_cast<double>(kItems);
    const double base = 4.8 - 2.0 * std::pow(rank_frac, 0.8);
    const double value =
        std::min(5.0, std::max(1.0, std::round(base + user_bias[u] + noise)));
    out += std::to_string(u + 1);
    out += '\t';
    out += std::to_string(j + 1);
    out += '\t';
    out += std::to_string(static_cast<int>(value));
    out += '\t';
    out += std::to_string(978300000 + t);
    out += '\n';
    ++kept;
  }

  recsys::write_file(out_path, out);
  std::cout << "wrote " << kept << " ratings to " << out_path << " (seed " << seed
            << ")\n";
  return 0;
}
