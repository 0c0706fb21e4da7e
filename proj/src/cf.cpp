#include "recsys/cf.hpp"

#include <algorithm>

#include "recsys/errors.hpp"

namespace recsys {

CfPredictor::CfPredictor(const RatingsDataset& train, EntityKind mode,
                         std::size_t k_neighbors)
    : mode_(mode),
      k_(k_neighbors),
      user_count_(train.user_count()),
      item_count_(train.item_count()),
      global_mean_(train.global_mean()),
      scale_(train.scale()),
      sim_(similarity_matrix(train, mode)) {
  if (train.empty()) throw ValidateError("CfPredictor: empty training set");
  if (k_ == 0) throw ValidateError("CfPredictor: neighbor count must be >= 1");

  const std::size_t entities = sim_.size();
  ranked_neighbors_.resize(entities);
  for (std::size_t e = 0; e < entities; ++e) {
    auto row = sim_.neighbors(e);
    ranked_neighbors_[e].assign(row.begin(), row.end());
    std::sort(ranked_neighbors_[e].begin(), ranked_neighbors_[e].end(),
              [](const auto& x, const auto& y) {
                if (x.second != y.second) return x.second > y.second;
                return x.first < y.first;
              });
  }

  ratings_.resize(entities);
  for (const Triplet& t : train.triplets()) {
    if (mode_ == EntityKind::user)
      ratings_[t.user].emplace_back(t.item, t.rating);
    else
      ratings_[t.item].emplace_back(t.user, t.rating);
  }
  for (auto& row : ratings_) std::sort(row.begin(), row.end());
}

double CfPredictor::predict(std::uint32_t user, std::uint32_t item) const {
  const std::uint32_t entity = mode_ == EntityKind::user ? user : item;
  const std::uint32_t target = mode_ == EntityKind::user ? item : user;
  const std::size_t entity_limit = mode_ == EntityKind::user ? user_count_ : item_count_;
  const std::size_t target_limit = mode_ == EntityKind::user ? item_count_ : user_count_;

  if (entity >= entity_limit || target >= target_limit) {
    ++stats_.cold_entity;
    return std::min(std::max(global_mean_, scale_.r_min), scale_.r_max);
  }

  double weighted = 0.0, weight = 0.0;
  const auto& neighbors = ranked_neighbors_[entity];
  const std::size_t take = std::min(k_, neighbors.size());
  for (std::size_t i = 0; i < take; ++i) {
    const auto& [b, sim] = neighbors[i];
    const auto& row = ratings_[b];
    auto it = std::lower_bound(row.begin(), row.end(), target,
                               [](const auto& p, std::uint32_t x) { return p.first < x; });
    if (it != row.end() && it->first == target) {
      weighted += sim * it->second;
      weight += sim;
    }
  }
  double value;
  if (weight > 0.0) {
    value = weighted / weight;
  } else {
    ++stats_.no_neighbor;
    value = global_mean_;
  }
  return std::min(std::max(value, scale_.r_min), scale_.r_max);
}

double cf_predict(const RatingsDataset& train, EntityKind mode, std::size_t k_neighbors,
                  std::uint32_t user, std::uint32_t item) {
  return CfPredictor(train, mode, k_neighbors).predict(user, item);
}

}  // namespace recsys
