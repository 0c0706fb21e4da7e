#include "recsys/evaluate.hpp"

#include <cmath>

#include "recsys/cf.hpp"
#include "recsys/errors.hpp"
#include "recsys/threads.hpp"

namespace recsys {

double evaluate_mae(const Predictor& predictor, const RatingsDataset& test) {
  if (test.empty()) throw ValidateError("evaluate_mae: empty test set");
  double sum = 0.0;
  for (const Triplet& t : test.triplets())
    sum += std::fabs(predictor.predict(t.user, t.item) - t.rating);
  return sum / static_cast<double>(test.triplets().size());
}

GridMode parse_grid_mode(const std::string& name) {
  if (name == "gamma") return GridMode::gamma;
  if (name == "iterations") return GridMode::iterations;
  if (name == "neighbors") return GridMode::neighbors;
  throw ValidateError("unknown grid mode: " + name);
}

std::string grid_mode_name(GridMode mode) {
  switch (mode) {
    case GridMode::gamma: return "gamma";
    case GridMode::iterations: return "iterations";
    case GridMode::neighbors: return "neighbors";
  }
  return "?";
}

namespace {

std::unique_ptr<Predictor> train_point(const RatingsDataset& train, const GridConfig& cfg,
                                       std::size_t index, double value) {
  TrainOptions opts = cfg.base;
  opts.seed = cfg.base.seed + index;
  std::size_t hybrid_main = cfg.hybrid_main;
  std::size_t cf_k = cfg.cf_neighbors;
  switch (cfg.mode) {
    case GridMode::gamma: opts.gamma = value; break;
    case GridMode::iterations: {
      const auto steps = static_cast<std::size_t>(std::llround(value));
      opts.iterations = steps;
      hybrid_main = steps;
      break;
    }
    case GridMode::neighbors:
      cf_k = static_cast<std::size_t>(std::llround(value));
      break;
  }
  const RatingScale scale = train.scale();
  switch (cfg.algo) {
    case Algorithm::mf:
      return make_predictor(train_mf(train, opts), scale);
    case Algorithm::zeromat:
      return make_predictor(train_zeromat(train.user_count(), train.item_count(), opts),
                            scale);
    case Algorithm::dotmat:
      return make_predictor(train_dotmat(train, opts), scale);
    case Algorithm::dotmat_hybrid:
      return make_predictor(
          train_dotmat_hybrid(train, opts, cfg.hybrid_pre, hybrid_main), scale);
    case Algorithm::random_placement:
      return std::make_unique<RandomPredictor>(opts.seed, scale);
    case Algorithm::user_cf:
      return std::make_unique<CfPredictor>(train, EntityKind::user, cf_k);
    case Algorithm::item_cf:
      return std::make_unique<CfPredictor>(train, EntityKind::item, cf_k);
  }
  throw ValidateError("mae_grid: unsupported algorithm");
}

}  // namespace

SeriesTrace mae_grid_with(const RatingsDataset& test, const std::vector<double>& grid,
                          const PredictorFactory& factory, const std::string& label,
                          bool parallel) {
  if (grid.empty()) throw ValidateError("mae_grid: empty grid");
  std::vector<double> maes(grid.size());
  std::vector<char> ok(grid.size(), 0);
  std::vector<std::string> errors(grid.size());

  const int threads = parallel ? configured_threads() : 1;
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::size_t i = 0; i < grid.size(); ++i) {
    try {
      std::unique_ptr<Predictor> predictor = factory(i, grid[i]);
      maes[i] = evaluate_mae(*predictor, test);
      ok[i] = 1;
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  }

  SeriesTrace trace;
  trace.label = label;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (ok[i])
      trace.push(grid[i], maes[i]);
    else
      trace.push_missing(grid[i]);
  }
  return trace;
}

SeriesTrace mae_grid(const RatingsDataset& train, const RatingsDataset& test,
                     const std::vector<double>& grid, const GridConfig& config) {
  auto factory = [&](std::size_t index, double value) {
    return train_point(train, config, index, value);
  };
  const std::string label =
      config.label.empty() ? algorithm_name(config.algo) : config.label;
  return mae_grid_with(test, grid, factory, label, true);
}

SeriesTrace mae_grid_serial(const RatingsDataset& train, const RatingsDataset& test,
                            const std::vector<double>& grid, const GridConfig& config) {
  auto factory = [&](std::size_t index, double value) {
    return train_point(train, config, index, value);
  };
  const std::string label =
      config.label.empty() ? algorithm_name(config.algo) : config.label;
  return mae_grid_with(test, grid, factory, label, false);
}

}  // namespace recsys
