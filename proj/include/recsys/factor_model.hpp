#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "recsys/dataset.hpp"

namespace recsys {

enum class Algorithm {
  mf,
  random_placement,
  zeromat,
  dotmat,
  dotmat_hybrid,
  user_cf,
  item_cf,
};

Algorithm parse_algorithm(const std::string& name);  // throws ValidateError
std::string algorithm_name(Algorithm);

// Denominators and power bases are clamped this far away from zero; both
// update rules are singular at U_i.V_j = 0.
inline constexpr double kDotFloor = 1e-6;

/// Latent factor matrices U (m x k) and V (n x k), row-major, plus the
/// training metadata that goes into the model file.
struct FactorModel {
  Algorithm algorithm = Algorithm::mf;
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t k = 0;
  double gamma = 0.0;
  std::uint64_t seed = 0;
  std::size_t iterations = 0;
  std::vector<double> u;  // m*k
  std::vector<double> v;  // n*k

  std::span<const double> user_row(std::size_t i) const { return {u.data() + i * k, k}; }
  std::span<const double> item_row(std::size_t j) const { return {v.data() + j * k, k}; }
  double dot(std::size_t i, std::size_t j) const;

  bool operator==(const FactorModel&) const = default;
};

struct TrainOptions {
  std::size_t k = 8;
  double gamma = 0.01;
  double lambda = 0.01;  // L2 weight; squared-loss training only
  std::size_t iterations = 100000;
  std::uint64_t seed = 1;
};

/// Observer invoked every `every` SGD steps (and once after the final step);
/// `step` is the number of steps completed so far.
struct StepObserver {
  std::size_t every = 0;
  std::function<void(std::size_t step, const FactorModel&)> fn;
};

/// Classic matrix factorization by SGD on squared error with L2 weight
/// lambda. One uniformly sampled triplet per step; both row updates in a
/// step read the pre-step values. Throws DivergedError on NaN/Inf.
FactorModel train_mf(const RatingsDataset& train, const TrainOptions& opts,
                     const StepObserver* observer = nullptr);

/// Rating-free trainer: per step a uniformly sampled index pair (i,j) gets
/// U_i += gamma*(V_j/(U_i.V_j) - 2 U_i) and the symmetric item update, the
/// quotient using a sign-preserving clamped denominator. Consumes no rating
/// data by construction (no dataset parameter exists).
FactorModel train_zeromat(std::size_t m, std::size_t n, const TrainOptions& opts,
                          const StepObserver* observer = nullptr);

/// Trainer for the loss |x^x - R/R_max| with x = clamp(U_i.V_j, floor, 1):
/// subgradient steps of size gamma * sign(e) * x^x(ln x + 1) along V_j / U_i.
FactorModel train_dotmat(const RatingsDataset& train, const TrainOptions& opts,
                         const StepObserver* observer = nullptr);

/// Two-phase hybrid: the rating-free dotmat trainer runs iters_pre steps,
/// then classic MF refines the same factors for iters_main steps. With
/// iters_pre = 0 this is exactly train_mf; with iters_main = 0 exactly
/// train_dotmat (one shared draw stream).
FactorModel train_dotmat_hybrid(const RatingsDataset& train, const TrainOptions& opts,
                                std::size_t iters_pre, std::size_t iters_main,
                                const StepObserver* observer = nullptr);

// x^x and its derivative x^x(ln x + 1); valid for x > 0.
double dotmat_value(double x);
double dotmat_gradient(double x);

/// Min/max of U_i.V_j used to rescale rating-free scores onto the rating
/// scale. Exact over all m*n pairs up to 4e6 of them; above that, a sample
/// of 4e6 pairs seeded by the model seed.
struct DotRange {
  double lo = 0.0;
  double hi = 0.0;
};
DotRange model_dot_range(const FactorModel&);

/// Model file: JSON object with algorithm, k, gamma, seed, iterations, U, V;
/// reals carry 17 significant digits.
std::string to_model_json(const FactorModel&);
void write_model_json(const FactorModel&, const std::string& path);
FactorModel parse_model_json(const std::string& content);
FactorModel read_model_json(const std::string& path);

}  // namespace recsys
