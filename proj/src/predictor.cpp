#include "recsys/predictor.hpp"

#include <algorithm>
#include <cmath>

#include "recsys/errors.hpp"
#include "recsys/prng.hpp"

namespace recsys {

namespace {

double clamp_to(double x, RatingScale scale) {
  return std::min(std::max(x, scale.r_min), scale.r_max);
}

}  // namespace

FactorPredictor::FactorPredictor(FactorModel model, RatingScale scale)
    : model_(std::move(model)), scale_(scale) {
  if (model_.algorithm == Algorithm::zeromat) range_ = model_dot_range(model_);
}

double FactorPredictor::predict(std::uint32_t user, std::uint32_t item) const {
  const double dot = model_.dot(user, item);
  switch (model_.algorithm) {
    case Algorithm::zeromat: {
      const double width = range_.hi - range_.lo;
      if (width <= 0.0) return clamp_to(0.5 * (scale_.r_min + scale_.r_max), scale_);
      const double rel = (dot - range_.lo) / width;
      return clamp_to(scale_.r_min + rel * (scale_.r_max - scale_.r_min), scale_);
    }
    case Algorithm::dotmat: {
      const double x = std::min(std::max(dot, kDotFloor), 1.0);
      return clamp_to(dotmat_value(x) * scale_.r_max, scale_);
    }
    default:
      return clamp_to(dot, scale_);
  }
}

double RandomPredictor::predict(std::uint32_t user, std::uint32_t item) const {
  const double u01 =
      static_cast<double>(hash_mix(seed_, user, item) >> 11) * 0x1.0p-53;
  return scale_.r_min + u01 * (scale_.r_max - scale_.r_min);
}

std::unique_ptr<Predictor> make_predictor(const FactorModel& model, RatingScale scale) {
  return std::make_unique<FactorPredictor>(model, scale);
}

}  // namespace recsys
