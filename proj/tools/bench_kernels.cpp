// Times the OpenMP kernels against their serial reference implementations
// on synthetic workloads and verifies the results agree. Thread count obeys
// RECSYS_LENS_THREADS.
#include <omp.h>

#include <cstdio>
#include <functional>
#include <set>
#include <vector>

#include "recsys/dataset.hpp"
#include "recsys/embedding.hpp"
#include "recsys/evaluate.hpp"
#include "recsys/prng.hpp"
#include "recsys/recurrence.hpp"
#include "recsys/similarity.hpp"
#include "recsys/threads.hpp"

using namespace recsys;

namespace {

double time_ms(const std::function<void()>& fn) {
  const double t0 = omp_get_wtime();
  fn();
  return (omp_get_wtime() - t0) * 1000.0;
}

void report(const char* name, double serial_ms, double omp_ms, bool match) {
  std::printf("%-24s serial %9.2f ms   omp %9.2f ms   speedup %5.2fx   %s\n", name,
              serial_ms, omp_ms, serial_ms / omp_ms, match ? "match" : "MISMATCH");
}

RatingsDataset synthetic_dataset(std::size_t users, std::size_t items,
                                 std::size_t ratings, std::uint64_t seed) {
  Rng rng(seed);
  std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
  std::vector<Triplet> triplets;
  triplets.reserve(ratings);
  while (triplets.size() < ratings) {
    Triplet tr;
    tr.user = static_cast<std::uint32_t>(rng.bounded(users));
    tr.item = static_cast<std::uint32_t>(rng.bounded(items));
    tr.rating = 1.0 + 4.0 * rng.uniform01();
    if (!seen.insert({tr.user, tr.item}).second) continue;
    triplets.push_back(tr);
  }
  return dataset_from_triplets(users, items, std::move(triplets));
}

SeriesTrace synthetic_trace(std::size_t length, std::uint64_t seed) {
  Rng rng(seed);
  SeriesTrace trace;
  trace.label = "bench";
  for (std::size_t i = 0; i < length; ++i)
    trace.push(static_cast<double>(i), rng.uniform01());
  return trace;
}

}  // namespace

int main() {
  std::printf("threads: %d\n", configured_threads());

  {
    RatingsDataset ds = synthetic_dataset(1200, 700, 90000, 7);
    SimilarityMatrix a, b;
    const double ts = time_ms([&] { a = similarity_matrix_serial(ds, EntityKind::user); });
    const double tp = time_ms([&] { b = similarity_matrix(ds, EntityKind::user); });
    bool match = a.entries().size() == b.entries().size();
    for (std::size_t i = 0; match && i < a.entries().size(); ++i)
      match = a.entries()[i].a == b.entries()[i].a &&
              a.entries()[i].b == b.entries()[i].b &&
              a.entries()[i].sim == b.entries()[i].sim;
    report("similarity (user)", ts, tp, match);
  }

  {
    SeriesTrace trace = synthetic_trace(3000, 11);
    RecurrenceGrid a, b;
    const double ts = time_ms([&] { a = recurrence_plot_serial(trace, 0.1); });
    const double tp = time_ms([&] { b = recurrence_plot(trace, 0.1); });
    report("recurrence 3000x3000", ts, tp, a.bits == b.bits);
  }

  {
    SeriesTrace trace = synthetic_trace(8002, 13);
    PointCloud cloud = takens_embed(trace, 3, 1);
    double serial_diameter = 0.0;
    CloudStats stats;
    const double ts = time_ms([&] { serial_diameter = cloud_diameter_serial(cloud); });
    const double tp = time_ms([&] { stats = cloud_stats(cloud); });
    report("diameter 8000 pts", ts, tp, serial_diameter == stats.diameter);
  }

  {
    RatingsDataset ds = synthetic_dataset(150, 120, 4000, 17);
    SplitPair pair = split(ds, 0.8, 1);
    GridConfig cfg;
    cfg.algo = Algorithm::mf;
    cfg.base.iterations = 30000;
    std::vector<double> grid;
    for (int i = 0; i < 12; ++i) grid.push_back(0.002 + 0.004 * i);
    SeriesTrace a, b;
    const double ts = time_ms([&] { a = mae_grid_serial(pair.train, pair.test, grid, cfg); });
    const double tp = time_ms([&] { b = mae_grid(pair.train, pair.test, grid, cfg); });
    report("mae_grid 12 points", ts, tp, a.ys == b.ys);
  }

  return 0;
}
