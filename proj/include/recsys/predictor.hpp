#pragma once

#include <cstdint>
#include <memory>

#include "recsys/dataset.hpp"
#include "recsys/factor_model.hpp"

namespace recsys {

/// Uniform evaluation surface: a rating estimate for any (user, item) index
/// pair, always finite and clamped to [r_min, r_max].
class Predictor {
 public:
  virtual ~Predictor() = default;
  virtual double predict(std::uint32_t user, std::uint32_t item) const = 0;
};

/// Factor-model predictor. Prediction rule depends on the trainer that
/// produced the model: clamped dot product for squared-loss models, the
/// x^x transfer scaled by r_max for the power-loss trainer, and a min-max
/// rescale of the dot range for the rating-free trainer.
class FactorPredictor : public Predictor {
 public:
  FactorPredictor(FactorModel model, RatingScale scale);
  double predict(std::uint32_t user, std::uint32_t item) const override;
  const FactorModel& model() const { return model_; }

 private:
  FactorModel model_;
  RatingScale scale_;
  DotRange range_{};  // zeromat rescale anchors
};

/// Seeded uniform draw from [r_min, r_max]; deterministic per (seed, i, j)
/// via counter-based hashing, so repeated queries agree.
class RandomPredictor : public Predictor {
 public:
  RandomPredictor(std::uint64_t seed, RatingScale scale) : seed_(seed), scale_(scale) {}
  double predict(std::uint32_t user, std::uint32_t item) const override;

 private:
  std::uint64_t seed_;
  RatingScale scale_;
};

std::unique_ptr<Predictor> make_predictor(const FactorModel&, RatingScale);

}  // namespace recsys
