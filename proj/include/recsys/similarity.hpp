#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "recsys/dataset.hpp"

namespace recsys {

/// Symmetric sparse entity-entity cosine similarities, stored once per pair
/// (a < b). Absent pair = similarity 0; the diagonal is an implicit 1.
class SimilarityMatrix {
 public:
  struct Entry {
    std::uint32_t a;
    std::uint32_t b;
    double sim;
  };

  SimilarityMatrix() = default;
  SimilarityMatrix(EntityKind kind, std::size_t size, std::vector<Entry> entries);

  EntityKind kind() const { return kind_; }
  std::size_t size() const { return size_; }
  const std::vector<Entry>& entries() const { return entries_; }  // sorted (a,b)
  double at(std::uint32_t a, std::uint32_t b) const;
  /// Neighbors of e with positive similarity, ascending index.
  std::span<const std::pair<std::uint32_t, double>> neighbors(std::uint32_t e) const;

 private:
  EntityKind kind_ = EntityKind::user;
  std::size_t size_ = 0;
  std::vector<Entry> entries_;
  std::vector<std::size_t> row_offset_;
  std::vector<std::pair<std::uint32_t, double>> adjacency_;
};

/// Cosine over co-rated support: both the dot product and the norms range
/// over the features the two entities share; raw ratings, no mean-centering.
/// Pairs sharing fewer than min_shared features are absent. OpenMP kernel,
/// one entity row per task; bitwise identical to the serial reference.
SimilarityMatrix similarity_matrix(const RatingsDataset&, EntityKind mode,
                                   std::size_t min_shared = 1);

/// Serial reference: pairwise two-pointer merge over sorted feature lists.
SimilarityMatrix similarity_matrix_serial(const RatingsDataset&, EntityKind mode,
                                          std::size_t min_shared = 1);

struct RadiusVector {
  EntityKind kind = EntityKind::user;
  std::vector<std::size_t> radii;
};

/// radius(e) = number of other entities with similarity > 0 to e.
RadiusVector similarity_radius(const SimilarityMatrix&);

struct RadiusSeries {
  std::vector<std::uint32_t> entity;  // entity index at popularity rank r+1
  std::vector<std::size_t> radius;    // parallel to entity
  double skewness = 0.0;              // max radius / median of positive radii
};

/// Radii ordered by entity popularity (descending rating count, ties by
/// ascending index); one pair per entity.
RadiusSeries radius_vs_popularity(const RatingsDataset&, const RadiusVector&);

/// det of the selection's principal similarity submatrix (diagonal 1);
/// pivoted elimination, values within -1e-12 of zero clamp to 0.
double dpp_diversity(const SimilarityMatrix&, const std::vector<std::uint32_t>& selection);

enum class HeatmapOrder { by_index, by_popularity };

struct DenseGrid {
  std::size_t n = 0;
  std::vector<double> values;               // row-major n*n
  std::vector<std::uint32_t> entity_order;  // grid row r shows this entity
  double at(std::size_t r, std::size_t c) const { return values[r * n + c]; }
};

/// Dense symmetric grid with unit diagonal. Above dense_cutoff entities the
/// top-N most popular submatrix is emitted (requires top_n), otherwise an
/// error. by_popularity requires the popularity permutation.
DenseGrid heatmap_data(const SimilarityMatrix&, HeatmapOrder order,
                       const std::vector<std::uint32_t>* popularity = nullptr,
                       std::size_t dense_cutoff = 4096,
                       std::optional<std::size_t> top_n = std::nullopt);

std::string to_similarity_csv(const SimilarityMatrix&);  // `a,b,sim`, a<b sorted
std::string to_radius_csv(const RadiusSeries&);          // `entity,popularity_rank,radius`
std::string to_heatmap_csv(const DenseGrid&);            // dense row-major grid
SimilarityMatrix parse_similarity_csv(const std::string& content, EntityKind kind);
SimilarityMatrix read_similarity_csv(const std::string& path, EntityKind kind);
DenseGrid parse_heatmap_csv(const std::string& content);
DenseGrid read_heatmap_csv(const std::string& path);

}  // namespace recsys
