#pragma once

#include <cstdint>
#include <vector>

#include "recsys/dataset.hpp"
#include "recsys/predictor.hpp"
#include "recsys/similarity.hpp"

namespace recsys {

/// Neighborhood collaborative filtering over cosine similarities. The K most
/// similar entities (descending similarity, ties by ascending index) are the
/// neighborhood; the prediction is the similarity-weighted mean of the
/// neighbors' ratings of the target, falling back to the global train mean
/// when no neighbor rated it. Cold (unknown) indices also fall back, and
/// both fallback kinds are counted in stats().
class CfPredictor : public Predictor {
 public:
  struct Stats {
    std::size_t cold_entity = 0;
    std::size_t no_neighbor = 0;
  };

  CfPredictor(const RatingsDataset& train, EntityKind mode, std::size_t k_neighbors);
  double predict(std::uint32_t user, std::uint32_t item) const override;
  const Stats& stats() const { return stats_; }

 private:
  EntityKind mode_;
  std::size_t k_;
  std::size_t user_count_;
  std::size_t item_count_;
  double global_mean_;
  RatingScale scale_;
  SimilarityMatrix sim_;
  // neighbor lists presorted by (similarity desc, index asc)
  std::vector<std::vector<std::pair<std::uint32_t, double>>> ranked_neighbors_;
  // entity -> sorted (feature, rating) for rating lookups
  std::vector<std::vector<std::pair<std::uint32_t, double>>> ratings_;
  mutable Stats stats_;
};

/// One-shot convenience wrapper around CfPredictor for a single query.
double cf_predict(const RatingsDataset& train, EntityKind mode, std::size_t k_neighbors,
                  std::uint32_t user, std::uint32_t item);

}  // namespace recsys
