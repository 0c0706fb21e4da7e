#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "recsys/dataset.hpp"
#include "recsys/factor_model.hpp"
#include "recsys/predictor.hpp"
#include "recsys/trace.hpp"

namespace recsys {

/// Mean absolute error over the test triplets.
double evaluate_mae(const Predictor&, const RatingsDataset& test);

enum class GridMode { gamma, iterations, neighbors };

GridMode parse_grid_mode(const std::string& name);
std::string grid_mode_name(GridMode);

struct GridConfig {
  Algorithm algo = Algorithm::mf;
  GridMode mode = GridMode::gamma;
  TrainOptions base;          // the swept field is overwritten per grid point
  std::size_t hybrid_pre = 50000;
  std::size_t hybrid_main = 50000;  // swept in iterations mode
  std::size_t cf_neighbors = 10;    // swept in neighbors mode
  std::string label;
};

/// One trained model per grid value (all other hyperparameters fixed; seed
/// per point = base seed + grid index), recording test MAE per point. Failed
/// points stay on the x grid as missing values. OpenMP-parallel over grid
/// points; identical to the serial reference run.
SeriesTrace mae_grid(const RatingsDataset& train, const RatingsDataset& test,
                     const std::vector<double>& grid, const GridConfig& config);
SeriesTrace mae_grid_serial(const RatingsDataset& train, const RatingsDataset& test,
                            const std::vector<double>& grid, const GridConfig& config);

/// Grid sweep over an arbitrary predictor factory (index, grid value) ->
/// predictor; the algorithm-based overloads go through this.
using PredictorFactory =
    std::function<std::unique_ptr<Predictor>(std::size_t index, double value)>;
SeriesTrace mae_grid_with(const RatingsDataset& test, const std::vector<double>& grid,
                          const PredictorFactory& factory, const std::string& label,
                          bool parallel);

}  // namespace recsys
